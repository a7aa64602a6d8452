#include "mondeq/kinetic.hpp"

#include <algorithm>
#include <cmath>

#include "mondeq/common.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

namespace {

void require_kinetic(const AnsatzFunction& phi, const char* who) {
    if (phi.kind != AnsatzKind::KineticPhi)
        throw DomainError(std::string(who) + ": needs a kinetic ansatz");
    if (!(phi.exponent > 0.0 && phi.exponent < 1.5))
        throw DomainError(std::string(who) + ": kinetic exponent must lie in (0, 3/2)");
}

/// 4 pi int_0^{sqrt(2 mu)} v^2 w(v) dv with v = sqrt(2 mu) sin(theta);
/// the substitution removes the (mu - v^2/2)^k endpoint behaviour
double velocity_integral(const std::function<double(double, double)>& w, double mu) {
    if (mu <= 0.0) return 0.0;
    double vmax = std::sqrt(2.0 * mu);
    auto g = [&](double theta) {
        double st = std::sin(theta), ct = std::cos(theta);
        double v = vmax * st;
        double eta = mu * ct * ct;  // mu - v^2/2
        return v * v * vmax * ct * w(v, eta);
    };
    return 4.0 * pi * integrate_adaptive(g, 0.0, 0.5 * pi, 1e-12);
}

}  // namespace

double velocity_density_integral(const AnsatzFunction& phi, double mu) {
    return velocity_integral([&](double, double eta) { return phi.inverse_derivative(eta); }, mu);
}

ReductionResult reduce_phi_to_psi(const AnsatzFunction& phi,
                                  const std::vector<double>& rho_samples) {
    require_kinetic(phi, "reduce_phi_to_psi");
    ReductionResult out;
    out.rho = rho_samples;
    out.psi.resize(rho_samples.size(), 0.0);

    const double n_exact = phi.exponent + 1.5;
    const double a1 = velocity_density_integral(phi, 1.0);  // I(mu) = a1 mu^{n}

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < rho_samples.size(); ++i) {
        double rho = rho_samples[i];
        if (rho < 0.0) throw DomainError("reduce_phi_to_psi: negative density sample");
        if (rho == 0.0) continue;  // Psi(0) = 0
        double mu_guess = std::pow(rho / a1, 1.0 / n_exact);
        double lo = mu_guess, hi = mu_guess;
        for (int j = 0; j < 200 && velocity_density_integral(phi, lo) > rho; ++j) lo *= 0.5;
        for (int j = 0; j < 200 && velocity_density_integral(phi, hi) < rho; ++j) hi *= 2.0;
        double mu = find_root(
            [&](double m) { return velocity_density_integral(phi, m) - rho; }, lo, hi,
            1e-14 * mu_guess);
        double kin = velocity_integral(
            [&](double v, double eta) { return 0.5 * v * v * phi.inverse_derivative(eta); }, mu);
        double cas = velocity_integral(
            [&](double, double eta) { return phi.value(phi.inverse_derivative(eta)); }, mu);
        out.psi[i] = kin + cas;
        double x = std::log(rho), y = std::log(out.psi[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) {
        double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        out.exponent_n = 1.0 / (slope - 1.0);
        out.coefficient = std::exp((sy - slope * sx) / cnt);
    }
    return out;
}

double KineticModel::f0(double r, double v) const {
    double e = 0.5 * v * v + base.fields.UM_at(r);
    return phi.inverse_derivative(base.cutoff_energy - e);
}

double KineticModel::rho_from_f0(double r) const {
    double mu = base.cutoff_energy - base.fields.UM_at(r);
    return velocity_integral([&](double, double eta) { return phi.inverse_derivative(eta); }, mu);
}

AnsatzFunction effective_fluid_ansatz(const AnsatzFunction& phi) {
    require_kinetic(phi, "effective_fluid_ansatz");
    const double n = phi.exponent + 1.5;
    const double a1 = velocity_density_integral(phi, 1.0);
    // (Psi_eff')^{-1}(eta) = a1 eta^{n}  =>  Psi_eff = c' rho^{1 + 1/n}
    const double c_eff = n / (n + 1.0) * std::pow(a1, -1.0 / n);
    return AnsatzFunction::fluid(n, c_eff);
}

KineticModel lift_kinetic(const AnsatzFunction& phi, const InterpolationFunction& f, double mass,
                          const ShootOptions& opts) {
    require_kinetic(phi, "lift_kinetic");
    if (!(mass > 0.0)) throw DomainError("lift_kinetic: mass must be positive");

    const AnsatzFunction eff = effective_fluid_ansatz(phi);
    EquilibriumModel base;
    MassBracket bracket{1e-3, 1e2};
    for (int tries = 0; tries < 8; ++tries) {
        try {
            base = solve_for_mass(eff, f, mass, bracket, opts);
            break;
        } catch (const BracketError&) {
            bracket.s_lo *= 1e-2;
            bracket.s_hi *= 1e2;
            if (tries == 7) throw;
        }
    }
    return attach_kinetic(phi, std::move(base));
}

KineticModel attach_kinetic(const AnsatzFunction& phi, EquilibriumModel base) {
    require_kinetic(phi, "attach_kinetic");
    KineticModel km;
    km.phi = phi;
    km.base = std::move(base);
    const AnsatzFunction eff = km.base.ansatz;
    const double a1 = velocity_density_integral(phi, 1.0);

    const double e0 = km.base.cutoff_energy;
    const double um0 = km.base.fields.UM().front();
    km.velocity_support = std::sqrt(std::max(0.0, 2.0 * (e0 - um0)));
    km.density_coefficient = a1;

    // verify int f0 dv = rho_0 across the support
    const auto& grid = km.base.density.grid();
    const auto& rho0 = km.base.density.rho();
    double worst = 0.0;
    double floor = 1e-8 * km.base.central_value;
    std::size_t stride = std::max<std::size_t>(1, grid.size() / 64);
    for (std::size_t i = 0; i < grid.size(); i += stride) {
        if (rho0[i] <= floor) continue;
        double got = km.rho_from_f0(grid[i]);
        worst = std::max(worst, std::abs(got - rho0[i]) / rho0[i]);
    }
    km.rho_consistency_error = worst;
    if (worst > 1e-4)
        throw ToleranceError("lift_kinetic: int f0 dv deviates from rho_0", worst, worst);

    // E_kin and phase-space Casimir of f0 by (r, v) double quadrature
    auto mu_at = [&](double r) { return e0 - km.base.fields.UM_at(r); };
    std::vector<double> edges;
    for (double g : grid)
        if (g > 0.0) edges.push_back(g);
    auto kin_radial = [&](double r) {
        return 4.0 * pi * r * r *
               velocity_integral(
                   [&](double v, double eta) { return 0.5 * v * v * phi.inverse_derivative(eta); },
                   mu_at(r));
    };
    auto cas_radial = [&](double r) {
        return 4.0 * pi * r * r *
               velocity_integral(
                   [&](double, double eta) { return phi.value(phi.inverse_derivative(eta)); },
                   mu_at(r));
    };
    km.ekin = integrate_panels(kin_radial, edges, 8);
    km.casimir_phase = integrate_panels(cas_radial, edges, 8);
    km.h_b = km.ekin + km.casimir_phase;

    auto psi_radial = [&](double r) {
        return 4.0 * pi * r * r * eff.value(km.base.density.rho_at(r));
    };
    km.h_e_casimir = integrate_panels(psi_radial, edges, 8);
    return km;
}

double distance_kinetic(const std::function<double(double, double)>& f, const KineticModel& f0,
                        double r_max, double v_max) {
    const double e0 = f0.base.cutoff_energy;
    auto um = [&](double r) { return f0.base.fields.UM_at(r); };

    // equal-mass precondition
    auto mass_of = [&](const std::function<double(double, double)>& h) {
        auto radial = [&](double r) {
            auto vint = [&](double v) { return 4.0 * pi * v * v * h(r, v); };
            return 4.0 * pi * r * r * integrate_adaptive(vint, 0.0, v_max, 1e-10);
        };
        return integrate_adaptive(radial, 0.0, r_max, 1e-9);
    };
    double mf = mass_of(f);
    double m0 = f0.base.density.total_mass();
    if (std::abs(mf - m0) > 1e-6 * std::max(m0, 1e-300))
        throw ValidationError("distance_kinetic: masses differ beyond 1e-6 relative");

    auto radial = [&](double r) {
        double u = um(r);
        double v_edge = std::sqrt(std::max(0.0, 2.0 * (e0 - u)));
        auto vint = [&](double v) {
            double e = 0.5 * v * v + u;
            double fv = f(r, v);
            double f0v = f0.phi.inverse_derivative(e0 - e);
            return 4.0 * pi * v * v *
                   (f0.phi.value(fv) - f0.phi.value(f0v) + e * (fv - f0v));
        };
        double inner = 0.0;
        if (v_edge > 0.0 && v_edge < v_max) {
            inner = integrate_adaptive(vint, 0.0, v_edge, 1e-11) +
                    integrate_adaptive(vint, v_edge, v_max, 1e-11);
        } else {
            inner = integrate_adaptive(vint, 0.0, v_max, 1e-11);
        }
        return 4.0 * pi * r * r * inner;
    };
    return integrate_adaptive(radial, 0.0, r_max, 1e-9);
}

}  // namespace mondeq
