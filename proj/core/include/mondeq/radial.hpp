#pragma once

#include <cstddef>
#include <vector>

namespace mondeq {

/// radii r0 = 0 < r1 < ... < rN; geometric spacing near 0, uniform beyond
std::vector<double> make_radial_grid(double r_outer, int uniform_nodes, int geo_nodes = 64,
                                     double inner_frac = 1e-6);

/// Nonnegative spherically symmetric density sampled on a radial grid,
/// interpreted as piecewise linear between nodes. Cumulative mass uses the
/// exact 4 pi int s^2 rho ds of the linear segments, so M(r) is the exact
/// mass of the interpolated profile.
class RadialDensity {
public:
    RadialDensity() = default;
    RadialDensity(std::vector<double> grid, std::vector<double> rho);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& rho() const { return rho_; }
    const std::vector<double>& mass_cum() const { return mass_cum_; }
    double total_mass() const { return mass_cum_.empty() ? 0.0 : mass_cum_.back(); }
    double support_radius() const { return support_radius_; }
    std::size_t size() const { return grid_.size(); }

    /// piecewise-linear density; 0 beyond the grid
    double rho_at(double r) const;

    /// exact cumulative mass of the piecewise-linear profile at any radius
    double mass_at(double r) const;

    /// Newtonian field magnitude M(r)/r^2, 0 at r = 0
    double gN_at(double r) const;

private:
    std::vector<double> grid_;
    std::vector<double> rho_;
    std::vector<double> mass_cum_;
    double support_radius_ = 0.0;
    std::size_t segment_of(double r) const;
};

/// spec operation name; returns a copy with the cumulative mass filled
RadialDensity cumulative_mass(const RadialDensity& d);

/// uniform ball of the given mass and radius on a fresh grid
RadialDensity uniform_ball(double mass, double radius, int uniform_nodes = 512);

/// Compactly supported reference density for the Mondian energy offset.
struct ReferenceDensity {
    RadialDensity profile;
    double bar_radius = 0.0;

    static ReferenceDensity uniform(double mass, double radius, int uniform_nodes = 512);
};

/// merged, deduplicated union of two node sets (for panel quadrature)
std::vector<double> merge_grids(const std::vector<double>& a, const std::vector<double>& b,
                                double upper);

}  // namespace mondeq
