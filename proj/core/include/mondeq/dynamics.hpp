#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mondeq/interpolation.hpp"
#include "mondeq/kinetic.hpp"
#include "mondeq/radial.hpp"

namespace mondeq {

/// Spherical shell discretization: each particle is a shell with radius,
/// radial velocity, conserved specific angular momentum and a fixed mass
/// weight. Weights never change (the phase-volume conservation proxy);
/// total mass is conserved exactly.
struct ShellEnsemble {
    std::vector<double> r;
    std::vector<double> vr;
    std::vector<double> L;
    std::vector<double> w;
    double time = 0.0;

    std::size_t size() const { return r.size(); }
    double total_mass() const;
};

struct SimOptions {
    double central_mass = 0.0;  // external point mass (orbit tests)
    double r_floor = 1e-12;     // reflecting boundary
};

/// rank-ordered interior mass per shell: full weight below, half weight of
/// coincident shells (own weight included at half)
std::vector<double> interior_mass(const ShellEnsemble& e, double central_mass = 0.0);

/// kick-drift-kick leapfrog step in the self-consistent MOND field
void step(ShellEnsemble& e, const InterpolationFunction& f, double dt, const SimOptions& opts = {});

struct EnsembleEnergy {
    double kinetic = 0.0;
    double newton = 0.0;  // shell-interaction Newtonian potential energy
    double qpart = 0.0;   // Mondian part relative to the reference density
    double total = 0.0;
    double virial = 0.0;  // 2 E_kin / sum(w r g_M), the Clausius ratio
};

/// exact discrete energy of the shell system (self-gravitating runs only)
EnsembleEnergy ensemble_energy(const ShellEnsemble& e, const InterpolationFunction& f,
                               const ReferenceDensity& ref);

/// draws (x, v) from f0 by rejection sampling over the support box
ShellEnsemble sample_from_equilibrium(const KineticModel& km, std::size_t n, std::uint64_t seed);

/// cloud-in-cell deposit of the shells onto a radial grid
RadialDensity binned_density(const ShellEnsemble& e, const std::vector<double>& grid);

enum class PerturbationKind { VelocityScale, RadialBreathing };

struct PerturbationOptions {
    std::size_t n = 100000;
    double dt_frac = 5e-4;          // dt = dt_frac * T_dyn
    double t_end_dyn = 50.0;        // in dynamical times
    std::uint64_t seed = 12345;
    int samples_per_tdyn = 8;       // diagnostics cadence
    double reference_radius = 1.0;  // reference ball for the energy monitor
    int diag_uniform_nodes = 1024;  // deposit grid resolution
};

struct StabilityDiagnostics {
    std::vector<double> time;
    std::vector<double> d_fluid;
    std::vector<double> grad_l2;
    std::vector<double> grad_l32;
    std::vector<double> energy;
    std::vector<double> virial;

    double t_dyn = 0.0;
    double max_d_fluid = 0.0;
    double max_grad_l2 = 0.0;
    double max_grad_l32 = 0.0;
    double energy_drift = 0.0;  // max |E(t) - E(0)| / |E(0)|

    std::string csv() const;
};

/// samples f0, applies the perturbation, evolves for t_end dynamical times
/// and records the stability diagnostics at fixed cadence
StabilityDiagnostics run_perturbation(const KineticModel& km, PerturbationKind kind, double eps,
                                      const PerturbationOptions& opts = {});

}  // namespace mondeq
