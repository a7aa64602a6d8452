#pragma once

#include <vector>

#include "mondeq/ansatz.hpp"
#include "mondeq/field.hpp"
#include "mondeq/interpolation.hpp"
#include "mondeq/radial.hpp"

namespace mondeq {

struct ShootOptions {
    double rel_tol = 1e-11;     // local error control of the embedded pair
    double r_max = 1e4;         // no-compact-support guard
    int grid_uniform = 4000;    // uniform nodes of the resampled model grid
    int grid_geo = 64;          // geometric nodes near the center
    double grid_outer = 0.0;    // extend the stored grid beyond the surface (0: end at R_s)
    PotentialNormalization normalization = PotentialNormalization::NewtonianAtInfinity;
};

/// A solved steady state. The density and fields live on the model grid; the
/// scalar total_mass/support_radius come from the ODE integration itself and
/// are more accurate than the gridded profile.
struct EquilibriumModel {
    RadialDensity density;
    FieldProfile fields;
    AnsatzFunction ansatz;
    InterpolationFunction lambda;
    double central_value = 0.0;
    double cutoff_energy = 0.0;
    double support_radius = 0.0;
    double total_mass = 0.0;

    /// max over interior nodes of |Psi'(rho) + U^M - E_0| / |E_0|
    double euler_lagrange_residual(double interior_fraction = 1.0 - 1e-3) const;
};

/// Integrates u' = -(1 + lambda(M/r^2)) M/r^2, M' = 4 pi r^2 (Psi')^{-1}(u)
/// from a series start at the center, where u = Psi'(rho); u crosses zero
/// transversally at the surface for every admissible exponent, which keeps
/// the surface location well conditioned (rho itself touches zero
/// tangentially whenever n > 1).
EquilibriumModel shoot(const AnsatzFunction& ansatz, double s, const InterpolationFunction& f,
                       const ShootOptions& opts = {});

struct MassCurvePoint {
    double s;
    double mass;
    double radius;
};

struct PowerLawFit {
    double coefficient = 0.0;         // free log-log fit, M ~ coefficient * s^exponent
    double exponent = 0.0;
    double pinned_coefficient = 0.0;  // log-space least squares with the exponent pinned
    double pinned_exponent = 0.0;
    int points = 0;
    double s_lo = 0.0;
    double s_hi = 0.0;
};

struct MassCurve {
    std::vector<MassCurvePoint> points;
    PowerLawFit fit_deep;    // s <= deep_threshold, pinned exponent 2
    PowerLawFit fit_newton;  // s >= newton_threshold, pinned exponent 1
    double deep_threshold = 1e-2;
    double newton_threshold = 1e2;

    bool strictly_increasing() const;
};

MassCurve mass_curve(const AnsatzFunction& ansatz, const InterpolationFunction& f, double s_min,
                     double s_max, int points, const ShootOptions& opts = {});

/// log-log least squares over the given points
PowerLawFit fit_power_law(const std::vector<MassCurvePoint>& pts, double s_lo, double s_hi,
                          double pinned_exponent);

struct MassBracket {
    double s_lo = 1e-4;
    double s_hi = 1e3;
};

/// Inverts s -> M_s by bracketed root finding to 1e-8 relative in the mass.
EquilibriumModel solve_for_mass(const AnsatzFunction& ansatz, const InterpolationFunction& f,
                                double target_mass, const MassBracket& bracket = {},
                                const ShootOptions& opts = {});

}  // namespace mondeq
