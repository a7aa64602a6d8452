#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mondeq/ansatz.hpp"
#include "mondeq/field.hpp"
#include "mondeq/interpolation.hpp"
#include "mondeq/radial.hpp"

namespace mondeq {

/// signed radial profile (perturbations); piecewise linear, zero beyond grid
struct RadialProfile {
    std::vector<double> grid;
    std::vector<double> values;

    double at(double r) const;
    /// 4 pi int r^2 p(r) dr
    double integral() const;
    double abs_integral() const;
};

/// E_pot^N = -(1/8pi) int |grad U^N|^2 dx = -(1/2) int M(r)^2 / r^2 dr,
/// exterior tail -M^2/(2 R) in closed form
double epot_newton(const RadialDensity& d);

/// E_pot^Q relative to the reference; requires equal masses (1e-12 relative)
double epot_q(const RadialDensity& d, const ReferenceDensity& ref, const QKernel& q);

/// -int r^2 (Q(gN_a) - Q(gN_b)) dr; the reference cancels in differences
double epot_q_difference(const RadialDensity& a, const RadialDensity& b, const QKernel& q);

/// Casimir C = int Psi(rho) dx (fluid ansatz only)
double casimir(const RadialDensity& d, const AnsatzFunction& a);

/// (int 4 pi r^2 rho^p dr)^{1/p}
double density_norm(const RadialDensity& d, double p);

/// || gN_a - gN_b ||_p^p as a 3D integral; p < 2 requires equal masses
double grad_deviation_pow(const RadialDensity& a, const RadialDensity& b, double p);

/// d(rho, rho_0) = int [Psi(rho) - Psi(rho_0) + U^M_0 (rho - rho_0)] dx
double distance_fluid(const RadialDensity& d, const RadialDensity& rho0, const FieldProfile& field0,
                      const AnsatzFunction& a);

struct DirectionalDerivativeResult {
    std::vector<double> taus;
    std::vector<double> slopes;  // [E_pot^Q(rho + tau phi) - E_pot^Q(rho)] / tau
    double limit = 0.0;          // int U^lambda_rho phi dx
};

/// finite-difference slopes of E_pot^Q against the analytic directional
/// derivative; phi must be mass neutral (int phi = 0)
DirectionalDerivativeResult epotq_directional_derivative(const RadialDensity& d,
                                                         const RadialProfile& phi,
                                                         const QKernel& q,
                                                         const std::vector<double>& taus);

struct TaylorRemainder {
    double h_difference = 0.0;   // H_E(rho) - H_E(rho_0)
    double d_value = 0.0;        // d(rho, rho_0)
    double remainder = 0.0;      // h_difference - d_value
    double grad_l2_sq = 0.0;     // ||g - g0||_2^2
    double grad_l32_pow = 0.0;   // ||g - g0||_{3/2}^{3/2}
    double newton_lhs = 0.0;     // E_N(rho) - E_N(rho_0) - int U^N_0 (rho - rho_0)
    double newton_rhs = 0.0;     // -(1/8pi) ||g - g0||_2^2
};

TaylorRemainder taylor_remainder(const RadialDensity& d, const RadialDensity& rho0,
                                 const FieldProfile& field0, const AnsatzFunction& a,
                                 const QKernel& q);

struct EnergyReport {
    double epot_newton = 0.0;
    double epot_q = 0.0;
    double casimir = 0.0;
    double ekin = 0.0;
    double h_value = 0.0;
    double norm_l1 = 0.0;
    double norm_l65 = 0.0;
    double norm_l1p1n = 0.0;
    double grad_l2_dev = 0.0;
    double grad_l32_dev = 0.0;
};

/// full report for a density against a reference and a baseline field density
EnergyReport energy_report(const RadialDensity& d, const ReferenceDensity& ref, const QKernel& q,
                           const AnsatzFunction& a, const RadialDensity* baseline = nullptr);

/// fixed `quantity,value` rows used by the CLI and tests
std::string energy_report_csv(const EnergyReport& rep);

/// smooth mass-neutral two-bump perturbation used by the property suites
RadialProfile make_bump_pair(const std::vector<double>& grid, double amplitude, double c1,
                             double c2, double width);

}  // namespace mondeq
