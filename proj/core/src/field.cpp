#include "mondeq/field.hpp"

#include <algorithm>
#include <cmath>

#include "mondeq/common.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

std::vector<double> newtonian_field(const RadialDensity& d) {
    const auto& grid = d.grid();
    const auto& mass = d.mass_cum();
    std::vector<double> gN(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) gN[i] = mass[i] / (grid[i] * grid[i]);
    return gN;
}

std::vector<double> mond_field(const RadialDensity& d, const InterpolationFunction& f) {
    std::vector<double> gM = newtonian_field(d);
    for (double& g : gM) g += f.force_factor(g);
    return gM;
}

namespace {

/// int_{ra}^{rb} s rho(s) ds for the linear segment, exact
double segment_s_rho(double ra, double rb, double rho_a, double rho_b) {
    const double h = rb - ra;
    if (h <= 0.0) return 0.0;
    const double slope = (rho_b - rho_a) / h;
    const double c0 = rho_a - slope * ra;
    const double i2 = (rb * rb - ra * ra) / 2.0;
    const double i3 = (rb * rb * rb - ra * ra * ra) / 3.0;
    return c0 * i2 + slope * i3;
}

}  // namespace

double exterior_ulam_increment(const InterpolationFunction& f, double mass, double a, double b) {
    if (mass <= 0.0) return 0.0;  // Ulam of the vacuum is identically 0
    if (b <= a) return 0.0;
    if (f.family == LambdaFamily::Sqrt) return std::sqrt(f.a0 * mass) * std::log(b / a);
    auto integrand = [&](double s) { return f.force_factor(mass / (s * s)); };
    return integrate_adaptive(integrand, a, b, 1e-12, 0.0);
}

FieldProfile potentials(const RadialDensity& d, const InterpolationFunction& f,
                        PotentialNormalization norm) {
    const auto& grid = d.grid();
    const auto& rho = d.rho();
    const std::size_t n = grid.size();

    FieldProfile p;
    p.grid_ = grid;
    p.lambda_ = f;
    p.total_mass_ = d.total_mass();
    p.support_radius_ = d.support_radius();
    p.gN_ = newtonian_field(d);
    p.gM_ = p.gN_;
    for (double& g : p.gM_) g += f.force_factor(g);

    // UN(r) = -M(r)/r - 4 pi int_r^{R} s rho ds, with UN(R) = -M/R at the rim
    p.UN_.assign(n, 0.0);
    p.UN_[n - 1] = (grid[n - 1] > 0.0) ? -d.total_mass() / grid[n - 1] : 0.0;
    double tail = 0.0;
    std::vector<double> un_tail(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) {
        tail += segment_s_rho(grid[i], grid[i + 1], rho[i], rho[i + 1]);
        un_tail[i] = tail;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double mr_over_r = (grid[i] > 0.0) ? d.mass_cum()[i] / grid[i] : 0.0;
        p.UN_[i] = -mr_over_r - 4.0 * pi * un_tail[i];
    }

    // Ulam(r) = int_0^r lambda(gN) gN ds; the integrand is O(sqrt(s)) near 0
    // under (Lambda2), so the first segment is integrated in t = sqrt(s)
    p.Ulam_.assign(n, 0.0);
    auto h_of = [&](double s) { return f.force_factor(d.gN_at(s)); };
    if (n > 1) {
        double t1 = std::sqrt(grid[1]);
        p.Ulam_[1] = integrate_gauss([&](double t) { return 2.0 * t * h_of(t * t); }, 0.0, t1, 16);
        for (std::size_t i = 2; i < n; ++i)
            p.Ulam_[i] = p.Ulam_[i - 1] + integrate_gauss(h_of, grid[i - 1], grid[i], 8);
    }

    p.norm_ = norm;
    switch (norm) {
        case PotentialNormalization::NewtonianAtInfinity:
            p.offset_ = 0.0;
            break;
        case PotentialNormalization::SurfaceZero: {
            double r0 = p.support_radius_;
            double un_r0, ulam_r0;
            if (r0 >= grid.back()) {
                un_r0 = p.UN_.back();
                ulam_r0 = p.Ulam_.back();
            } else {
                // both potentials are available exactly at grid nodes; r0 is one
                auto it = std::lower_bound(grid.begin(), grid.end(), r0);
                std::size_t idx = static_cast<std::size_t>(it - grid.begin());
                un_r0 = p.UN_[idx];
                ulam_r0 = p.Ulam_[idx];
            }
            p.offset_ = -(un_r0 + ulam_r0);
            break;
        }
        case PotentialNormalization::CenterZero:
            p.offset_ = -p.UN_[0];
            break;
    }

    p.UM_.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.UM_[i] = p.UN_[i] + p.Ulam_[i] + p.offset_;
    return p;
}

FieldProfile FieldProfile::from_columns(std::vector<double> grid, std::vector<double> gN,
                                        std::vector<double> gM, std::vector<double> UN,
                                        std::vector<double> Ulam, std::vector<double> UM,
                                        PotentialNormalization norm, double total_mass,
                                        double support_radius,
                                        const InterpolationFunction& lambda) {
    FieldProfile p;
    const std::size_t n = grid.size();
    if (n < 2 || gN.size() != n || gM.size() != n || UN.size() != n || Ulam.size() != n ||
        UM.size() != n)
        throw ValidationError("FieldProfile::from_columns: inconsistent column sizes");
    p.grid_ = std::move(grid);
    p.gN_ = std::move(gN);
    p.gM_ = std::move(gM);
    p.UN_ = std::move(UN);
    p.Ulam_ = std::move(Ulam);
    p.UM_ = std::move(UM);
    p.norm_ = norm;
    p.offset_ = p.UM_.back() - p.UN_.back() - p.Ulam_.back();
    p.total_mass_ = total_mass;
    p.support_radius_ = support_radius;
    p.lambda_ = lambda;
    return p;
}

double FieldProfile::interp(const std::vector<double>& values, double r) const {
    if (r <= grid_.front()) return values.front();
    if (r >= grid_.back()) return values.back();
    auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    double t = (r - grid_[i]) / (grid_[i + 1] - grid_[i]);
    return values[i] + t * (values[i + 1] - values[i]);
}

double FieldProfile::gN_at(double r) const {
    if (r < 0.0) throw DomainError("gN_at: negative radius");
    if (r == 0.0) return 0.0;
    if (r > grid_.back()) return total_mass_ / (r * r);
    return interp(gN_, r);
}

double FieldProfile::gM_at(double r) const {
    double g = gN_at(r);
    return g + lambda_.force_factor(g);
}

double FieldProfile::UN_at(double r) const {
    if (r < 0.0) throw DomainError("UN_at: negative radius");
    if (r > grid_.back()) return -total_mass_ / r;
    return interp(UN_, r);
}

double FieldProfile::Ulam_at(double r) const {
    if (r < 0.0) throw DomainError("Ulam_at: negative radius");
    if (r > grid_.back())
        return Ulam_.back() + exterior_ulam_increment(lambda_, total_mass_, grid_.back(), r);
    return interp(Ulam_, r);
}

double FieldProfile::UM_at(double r) const { return UN_at(r) + Ulam_at(r) + offset_; }

}  // namespace mondeq
