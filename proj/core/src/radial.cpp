#include "mondeq/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mondeq/common.hpp"

namespace mondeq {

namespace {

/// 4 pi int_{ra}^{rb} s^2 (linear interpolant) ds, exact
double segment_mass(double ra, double rb, double rho_a, double rho_b) {
    if (rb <= ra) return 0.0;
    const double h = rb - ra;
    const double slope = (rho_b - rho_a) / h;
    // rho(s) = rho_a + slope (s - ra)
    const double c0 = rho_a - slope * ra;
    const double i3 = (rb * rb * rb - ra * ra * ra) / 3.0;
    const double i4 = (rb * rb * rb * rb - ra * ra * ra * ra) / 4.0;
    return 4.0 * pi * (c0 * i3 + slope * i4);
}

}  // namespace

std::vector<double> make_radial_grid(double r_outer, int uniform_nodes, int geo_nodes,
                                     double inner_frac) {
    if (r_outer <= 0.0) throw DomainError("make_radial_grid: r_outer must be positive");
    if (uniform_nodes < 8) throw DomainError("make_radial_grid: need at least 8 uniform nodes");
    if (geo_nodes < 2) geo_nodes = 2;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(geo_nodes + uniform_nodes) + 1);
    grid.push_back(0.0);
    const double r_inner = r_outer * inner_frac;
    const double r_switch = r_outer / uniform_nodes;  // first uniform spacing
    const double ratio = std::pow(r_switch / r_inner, 1.0 / (geo_nodes - 1));
    double r = r_inner;
    for (int i = 0; i < geo_nodes - 1; ++i) {
        grid.push_back(r);
        r *= ratio;
    }
    for (int i = 1; i <= uniform_nodes; ++i)
        grid.push_back(r_outer * static_cast<double>(i) / uniform_nodes);
    return grid;
}

RadialDensity::RadialDensity(std::vector<double> grid, std::vector<double> rho)
    : grid_(std::move(grid)), rho_(std::move(rho)) {
    if (grid_.size() < 2 || grid_.size() != rho_.size())
        throw ValidationError("RadialDensity: grid and rho must have equal size >= 2");
    if (grid_.front() != 0.0) throw ValidationError("RadialDensity: grid must start at r = 0");
    for (std::size_t i = 1; i < grid_.size(); ++i)
        if (grid_[i] <= grid_[i - 1])
            throw ValidationError("RadialDensity: grid must be strictly increasing");
    for (std::size_t i = 0; i < rho_.size(); ++i)
        if (!(rho_[i] >= 0.0))
            throw ValidationError("RadialDensity: negative density at node " + std::to_string(i));
    mass_cum_.resize(grid_.size());
    mass_cum_[0] = 0.0;
    for (std::size_t i = 1; i < grid_.size(); ++i)
        mass_cum_[i] =
            mass_cum_[i - 1] + segment_mass(grid_[i - 1], grid_[i], rho_[i - 1], rho_[i]);
    support_radius_ = grid_.back();
    for (std::size_t i = grid_.size(); i-- > 0;) {
        if (rho_[i] > 0.0) {
            support_radius_ = (i + 1 < grid_.size()) ? grid_[i + 1] : grid_.back();
            break;
        }
        if (i == 0) support_radius_ = 0.0;
    }
}

std::size_t RadialDensity::segment_of(double r) const {
    // index i with grid_[i] <= r < grid_[i+1]
    auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
    std::size_t idx = static_cast<std::size_t>(it - grid_.begin());
    if (idx == 0) return 0;
    if (idx >= grid_.size()) return grid_.size() - 2;
    return idx - 1;
}

double RadialDensity::rho_at(double r) const {
    if (r < 0.0) throw DomainError("rho_at: negative radius");
    if (r >= grid_.back()) return 0.0;
    std::size_t i = segment_of(r);
    double t = (r - grid_[i]) / (grid_[i + 1] - grid_[i]);
    return rho_[i] + t * (rho_[i + 1] - rho_[i]);
}

double RadialDensity::mass_at(double r) const {
    if (r < 0.0) throw DomainError("mass_at: negative radius");
    if (r >= grid_.back()) return total_mass();
    std::size_t i = segment_of(r);
    return mass_cum_[i] + segment_mass(grid_[i], r, rho_[i], rho_at(r));
}

double RadialDensity::gN_at(double r) const {
    if (r <= 0.0) return 0.0;
    return mass_at(r) / (r * r);
}

RadialDensity cumulative_mass(const RadialDensity& d) {
    // construction already fills the cumulative mass; re-validate via copy
    return RadialDensity(d.grid(), d.rho());
}

RadialDensity uniform_ball(double mass, double radius, int uniform_nodes) {
    if (mass < 0.0 || radius <= 0.0) throw DomainError("uniform_ball: bad mass or radius");
    std::vector<double> grid = make_radial_grid(radius, uniform_nodes);
    double value = mass / (4.0 / 3.0 * pi * radius * radius * radius);
    std::vector<double> rho(grid.size(), value);
    return RadialDensity(std::move(grid), std::move(rho));
}

ReferenceDensity ReferenceDensity::uniform(double mass, double radius, int uniform_nodes) {
    ReferenceDensity ref;
    ref.profile = uniform_ball(mass, radius, uniform_nodes);
    ref.bar_radius = radius;
    return ref;
}

std::vector<double> merge_grids(const std::vector<double>& a, const std::vector<double>& b,
                                double upper) {
    std::vector<double> merged;
    merged.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    while (!merged.empty() && merged.back() > upper) merged.pop_back();
    if (merged.empty() || merged.back() < upper) merged.push_back(upper);
    return merged;
}

}  // namespace mondeq
