#pragma once

#include <functional>
#include <vector>

#include "mondeq/ansatz.hpp"
#include "mondeq/equilibrium.hpp"

namespace mondeq {

struct ReductionResult {
    std::vector<double> rho;
    std::vector<double> psi;
    double coefficient = 0.0;  // free log-log fit of psi = c' rho^{1 + 1/n}
    double exponent_n = 0.0;   // fitted n; the reduction lemma gives n = k + 3/2
};

/// Effective fluid ansatz from the kinetic one by minimizing the kinetic plus
/// Casimir density over isotropic velocity profiles at fixed spatial density.
/// The minimizing family is g(v) = (Phi')^{-1}((mu - v^2/2)_+) with mu tuned
/// so that int g dv = rho.
ReductionResult reduce_phi_to_psi(const AnsatzFunction& phi, const std::vector<double>& rho_samples);

/// int (Phi')^{-1}((mu - v^2/2)_+) dv, the density of the minimizing profile
double velocity_density_integral(const AnsatzFunction& phi, double mu);

/// A lifted equilibrium: f0(x, v) = (Phi')^{-1}((E0 - E)_+), E = v^2/2 + U^M(r).
struct KineticModel {
    AnsatzFunction phi;
    EquilibriumModel base;
    double velocity_support = 0.0;        // R1 = sqrt(2 (E0 - min U^M))
    double density_coefficient = 0.0;     // rho_{f0} = coeff (E0 - U^M)_+^{k + 3/2}
    double rho_consistency_error = 0.0;   // max relative | int f0 dv - rho_0 |
    double ekin = 0.0;                    // E_kin(f0)
    double casimir_phase = 0.0;           // C(f0) in phase space
    double h_b = 0.0;                     // E_pot^M-free part: ekin + casimir_phase
    double h_e_casimir = 0.0;             // int Psi_eff(rho_0) dx

    double f0(double r, double v) const;
    /// int f0 dv at radius r, by quadrature
    double rho_from_f0(double r) const;
};

/// Reduces Phi to the effective Psi, solves the fluid problem at the target
/// mass, and constructs the distribution function over (r, v).
KineticModel lift_kinetic(const AnsatzFunction& phi, const InterpolationFunction& f, double mass,
                          const ShootOptions& opts = {});

/// effective fluid ansatz of a kinetic one (polytrope: n = k + 3/2)
AnsatzFunction effective_fluid_ansatz(const AnsatzFunction& phi);

/// builds the distribution function on top of an already solved base model
KineticModel attach_kinetic(const AnsatzFunction& phi, EquilibriumModel base);

/// d(f, f0) = iint (Phi(f) - Phi(f0) + E (f - f0)) dx dv under isotropy
double distance_kinetic(const std::function<double(double, double)>& f, const KineticModel& f0,
                        double r_max, double v_max);

}  // namespace mondeq
