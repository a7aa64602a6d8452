#pragma once

#include <vector>

#include "mondeq/interpolation.hpp"
#include "mondeq/radial.hpp"

namespace mondeq {

/// U^lambda is defined up to a constant; the offset added to UN + Ulam is
/// fixed by this choice. NewtonianAtInfinity keeps UN -> 0 and Ulam(0) = 0
/// (the integral-operator normalization); the cut-off energy absorbs the rest.
enum class PotentialNormalization { NewtonianAtInfinity, SurfaceZero, CenterZero };

/// Newtonian/Mondian accelerations and potentials on a radial grid.
class FieldProfile {
public:
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& gN() const { return gN_; }
    const std::vector<double>& gM() const { return gM_; }
    const std::vector<double>& UN() const { return UN_; }
    const std::vector<double>& Ulam() const { return Ulam_; }
    const std::vector<double>& UM() const { return UM_; }
    PotentialNormalization normalization() const { return norm_; }
    double offset() const { return offset_; }
    double total_mass() const { return total_mass_; }
    double support_radius() const { return support_radius_; }
    const InterpolationFunction& lambda() const { return lambda_; }

    /// continuous interpolation inside the grid, exact vacuum solution beyond
    double gN_at(double r) const;
    double gM_at(double r) const;
    double UN_at(double r) const;
    double Ulam_at(double r) const;
    double UM_at(double r) const;

    /// rebuilds a profile from stored columns (snapshot reading)
    static FieldProfile from_columns(std::vector<double> grid, std::vector<double> gN,
                                     std::vector<double> gM, std::vector<double> UN,
                                     std::vector<double> Ulam, std::vector<double> UM,
                                     PotentialNormalization norm, double total_mass,
                                     double support_radius, const InterpolationFunction& lambda);

private:
    friend FieldProfile potentials(const RadialDensity&, const InterpolationFunction&,
                                   PotentialNormalization);
    std::vector<double> grid_;
    std::vector<double> gN_, gM_, UN_, Ulam_, UM_;
    PotentialNormalization norm_ = PotentialNormalization::NewtonianAtInfinity;
    double offset_ = 0.0;
    double total_mass_ = 0.0;
    double support_radius_ = 0.0;
    InterpolationFunction lambda_;
    const RadialDensity* density_ = nullptr;  // not owned; only used during build
    std::vector<double> interp_src_;          // scratch
    double interp(const std::vector<double>& values, double r) const;
};

/// per-node Newtonian acceleration M(r)/r^2 (shell theorem)
std::vector<double> newtonian_field(const RadialDensity& d);

/// per-node Mondian acceleration gN + lambda(gN) gN
std::vector<double> mond_field(const RadialDensity& d, const InterpolationFunction& f);

/// Builds the full profile. UN integrates the vacuum-matched interior form,
/// Ulam integrates lambda(gN) gN from 0 with a sqrt(r)-aware rule on the
/// innermost segment, and UM = UN + Ulam + offset per the normalization.
FieldProfile potentials(const RadialDensity& d, const InterpolationFunction& f,
                        PotentialNormalization norm = PotentialNormalization::NewtonianAtInfinity);

/// int_a^b lambda(M/s^2) (M/s^2) ds for the vacuum exterior field of mass M
double exterior_ulam_increment(const InterpolationFunction& f, double mass, double a, double b);

}  // namespace mondeq
