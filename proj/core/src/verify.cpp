#include "mondeq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mondeq/common.hpp"
#include "mondeq/dynamics.hpp"
#include "mondeq/functionals.hpp"
#include "mondeq/kinetic.hpp"
#include "mondeq/qumond.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

namespace {

void push(std::vector<CheckRow>& rows, const std::string& name, double value, double tolerance,
          bool pass) {
    rows.push_back({name, pass, value, tolerance});
}

/// value must not exceed tolerance
void push_le(std::vector<CheckRow>& rows, const std::string& name, double value,
             double tolerance) {
    push(rows, name, value, tolerance, value <= tolerance);
}

/// value must be at least tolerance
void push_ge(std::vector<CheckRow>& rows, const std::string& name, double value,
             double tolerance) {
    push(rows, name, value, tolerance, value >= tolerance);
}

RadialDensity random_density(Rng& rng, double mass, double radius, int nodes = 384) {
    std::vector<double> grid = make_radial_grid(radius, nodes, 32);
    std::vector<double> rho(grid.size());
    double base = rng.uniform(0.2, 1.0);
    double c1 = rng.uniform(0.1, 0.8) * radius;
    double w1 = rng.uniform(0.15, 0.4) * radius;
    double amp = rng.uniform(0.0, 2.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x = (grid[i] - c1) / w1;
        double bump = (std::abs(x) < 1.0) ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        double taper = 1.0 - grid[i] / radius;
        rho[i] = (base + amp * bump) * taper;
    }
    rho.back() = 0.0;
    RadialDensity raw(std::move(grid), std::move(rho));
    double scale = mass / raw.total_mass();
    std::vector<double> scaled = raw.rho();
    for (double& v : scaled) v *= scale;
    return RadialDensity(std::vector<double>(raw.grid()), std::move(scaled));
}

std::vector<InterpolationFunction> both_families(const RunConfig& cfg) {
    return {InterpolationFunction::make(LambdaFamily::Sqrt, cfg.lambda_a0),
            InterpolationFunction::make(LambdaFamily::Simple, cfg.lambda_a0)};
}

const char* family_tag(const InterpolationFunction& f) {
    return f.family == LambdaFamily::Sqrt ? "sqrt" : "simple";
}

}  // namespace

std::string check_table_csv(const std::vector<CheckRow>& rows) {
    std::ostringstream os;
    os.precision(12);
    os << "check,status,value,tolerance\n";
    for (const auto& r : rows)
        os << r.name << "," << (r.pass ? "pass" : "FAIL") << "," << r.value << "," << r.tolerance
           << "\n";
    return os.str();
}

bool all_pass(const std::vector<CheckRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::vector<CheckRow> verify_potential(const RunConfig& cfg) {
    std::vector<CheckRow> rows;

    for (const auto& f : both_families(cfg)) {
        // lambda nonincreasing on a log grid
        double worst_rise = 0.0;
        double prev = f(1e-8);
        for (int i = 1; i <= 320; ++i) {
            double sigma = 1e-8 * std::pow(1e16, i / 320.0);
            double cur = f(sigma);
            worst_rise = std::max(worst_rise, cur - prev);
            prev = cur;
        }
        push_le(rows, std::string("lambda_monotone_") + family_tag(f), worst_rise, 0.0);

        QKernel q{f, 1e-10};
        // Q bounds and difference bounds on a pair grid
        double worst_upper = 0.0, worst_lower = 0.0, worst_diff_up = 0.0, worst_diff_lo = 0.0;
        const double c2 = 2.0 * f.lambda2 / 3.0;
        const double c1 = 2.0 * f.lambda1 / 3.0;
        const double sigma_small = f.small_sigma_threshold();
        std::vector<double> us;
        for (int i = 0; i <= 31; ++i) us.push_back(1e-6 * std::pow(1e8, i / 31.0));
        for (double u : us) {
            double qu = q(u);
            worst_upper = std::max(worst_upper, qu - c2 * std::pow(u, 1.5));
            if (u <= sigma_small)
                worst_lower = std::max(worst_lower, c1 * std::pow(u, 1.5) - qu);
            for (double v : us) {
                if (v > u) continue;
                double lhs = q(u) - q(v);
                double envelope = std::pow(u, 1.5) - std::pow(v, 1.5);
                worst_diff_up = std::max(worst_diff_up, lhs - c2 * envelope);
                if (u <= sigma_small)
                    worst_diff_lo = std::max(worst_diff_lo, c1 * envelope - lhs);
            }
        }
        double tol = 1e-9;
        push_le(rows, std::string("q_upper_bound_") + family_tag(f), worst_upper, tol);
        push_le(rows, std::string("q_lower_bound_") + family_tag(f), worst_lower, tol);
        push_le(rows, std::string("q_diff_upper_") + family_tag(f), worst_diff_up, tol);
        push_le(rows, std::string("q_diff_lower_") + family_tag(f), worst_diff_lo, tol);

        // Hoelder / Taylor constants stable under sample doubling
        FittedConstant h1 = check_hoelder(f, 10000, 42);
        FittedConstant h2 = check_hoelder(f, 20000, 43);
        push_le(rows, std::string("hoelder_stable_") + family_tag(f),
                std::abs(h2.value / h1.value - 1.0), 0.2);
        FittedConstant t1 = check_q_taylor(q, 10000, 44);
        FittedConstant t2 = check_q_taylor(q, 20000, 45);
        push_le(rows, std::string("q_taylor_stable_") + family_tag(f),
                std::abs(t2.value / t1.value - 1.0), 0.2);
    }

    // closed form vs quadrature for the Sqrt family
    {
        InterpolationFunction f = InterpolationFunction::make(LambdaFamily::Sqrt, cfg.lambda_a0);
        QKernel q{f, 1e-10};
        double worst = 0.0;
        for (int i = 1; i <= 100; ++i) {
            double v = 1e-4 * std::pow(1e8, i / 100.0);
            double closed = q(v);
            double quad = q.by_quadrature(v);
            worst = std::max(worst, std::abs(closed - quad) / closed);
        }
        push_le(rows, "q_closed_vs_quadrature_sqrt", worst, 1e-9);
    }

    const InterpolationFunction lam = cfg.lambda();
    Rng rng(cfg.dynamics_seed);

    // appendix field bounds for compactly supported densities, r > R
    {
        double worst = -1e300;
        for (int t = 0; t < 3; ++t) {
            RadialDensity d = random_density(rng, rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
            double r_sup = d.support_radius();
            double m = d.total_mass();
            for (int i = 1; i <= 50; ++i) {
                double r = r_sup * (1.0 + 0.1 * i);
                double g = d.gN_at(r);
                double upper = m / ((r - r_sup) * (r - r_sup));
                double lower =
                    std::sqrt(1.0 - r_sup * r_sup / (r * r)) * m / ((r + r_sup) * (r + r_sup));
                worst = std::max({worst, lower - g, g - upper});
            }
        }
        push_le(rows, "field_bounds_exterior", worst, 1e-12);
    }

    // logarithmic growth of U^M outside the support
    {
        RadialDensity d = uniform_ball(1.0, 1.0);
        FieldProfile p = potentials(d, lam);
        double r0 = d.support_radius();
        double m = d.total_mass();
        double um_2r0 = p.UM_at(2.0 * r0);
        double worst = 1e300;
        for (int i = 1; i <= 40; ++i) {
            double r = 2.0 * r0 * std::pow(25.0, i / 40.0);
            double bound = um_2r0 + lam.lambda1 * std::sqrt(m / 2.0) * std::log(r / (2.0 * r0));
            worst = std::min(worst, p.UM_at(r) - bound);
        }
        push_ge(rows, "um_log_growth", worst, 0.0);
    }

    // direct QUMOND quadrature against the radial integral
    {
        double worst = 0.0;
        std::vector<RadialDensity> tests;
        tests.push_back(uniform_ball(1.0, 1.0));
        tests.push_back(random_density(rng, 1.3, 1.5));
        tests.push_back(random_density(rng, 0.7, 0.9));
        for (const auto& d : tests) {
            FieldProfile p = potentials(d, lam);
            double r_sup = d.support_radius();
            std::vector<double> probes = {0.3 * r_sup, 0.7 * r_sup, 1.0 * r_sup, 1.6 * r_sup,
                                          3.0 * r_sup};
            QumondOptions qopts;
            qopts.rel_tol = 1e-5;
            std::vector<double> direct = qumond_direct(d, lam, probes, qopts);
            for (std::size_t i = 0; i < probes.size(); ++i) {
                double radial = p.Ulam_at(probes[i]);
                worst = std::max(worst, std::abs(direct[i] - radial) / std::abs(radial));
            }
        }
        push_le(rows, "qumond_direct_vs_radial", worst, 1e-3);
    }

    // O(h^2) convergence of U^M under grid refinement
    {
        auto um_at_resolution = [&](int n) {
            std::vector<double> grid = make_radial_grid(1.0, n, 32);
            std::vector<double> rho(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double x = grid[i];
                rho[i] = (1.0 - x * x);  // smooth parabolic profile
            }
            rho.back() = 0.0;
            RadialDensity d(std::move(grid), std::move(rho));
            FieldProfile p = potentials(d, lam);
            return p.UM_at(0.55);
        };
        double u1 = um_at_resolution(128);
        double u2 = um_at_resolution(256);
        double u3 = um_at_resolution(512);
        double ref = um_at_resolution(4096);
        double e1 = std::abs(u1 - ref), e2 = std::abs(u2 - ref), e3 = std::abs(u3 - ref);
        double order = 0.5 * (std::log2(e1 / e2) + std::log2(e2 / e3));
        push_ge(rows, "um_refinement_order", order, 1.6);
    }

    return rows;
}

std::vector<CheckRow> verify_functionals(const RunConfig& cfg) {
    std::vector<CheckRow> rows;
    const InterpolationFunction lam = cfg.lambda();
    const QKernel q{lam, 1e-10};
    Rng rng(cfg.dynamics_seed + 1);

    // first inequality of the energy-estimate chain
    {
        double mass = 1.0;
        ReferenceDensity ref = ReferenceDensity::uniform(mass, cfg.reference_radius);
        double worst = -1e300;
        for (int t = 0; t < 20; ++t) {
            RadialDensity d = random_density(rng, mass, rng.uniform(0.4, 2.5));
            double lhs = -epot_q(d, ref, q);
            auto integrand = [&](double r) { return r * r * q(d.gN_at(r)); };
            std::vector<double> edges;
            for (double g : d.grid())
                if (g > 0.0 && g < ref.bar_radius) edges.push_back(g);
            edges.push_back(ref.bar_radius);
            double rhs = integrate_panels(integrand, edges, 8);
            worst = std::max(worst, lhs - rhs);
        }
        push_le(rows, "energy_chain_first_inequality", worst, 1e-10);
    }

    // the remaining checks work against a solved equilibrium
    ShootOptions light = cfg.shoot_options();
    light.grid_uniform = 1024;
    EquilibriumModel eq = shoot(cfg.ansatz().kind == AnsatzKind::FluidPsi
                                    ? cfg.ansatz()
                                    : AnsatzFunction::fluid(1.0, 0.5),
                                1.0, lam, light);
    const double h0_scale = std::abs(epot_newton(eq.density)) + 1.0;
    const double eps_num = 1e-12 * h0_scale;

    // d >= 0 with equality only at the equilibrium
    {
        double min_d_perturbed = 1e300;
        double r0 = eq.support_radius;
        double self_d = distance_fluid(eq.density, eq.density, eq.fields, eq.ansatz);
        for (int t = 0; t < 100; ++t) {
            double c1 = rng.uniform(0.1, 0.8) * r0;
            double c2 = rng.uniform(0.1, 0.8) * r0;
            double w = rng.uniform(0.08, 0.2) * r0;
            double amp = rng.uniform(0.01, 0.3) * eq.central_value;
            RadialProfile phi = make_bump_pair(eq.density.grid(), amp, c1, c2, w);
            std::vector<double> vals(eq.density.grid().size());
            bool ok = true;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                vals[i] = eq.density.rho()[i] + phi.values[i];
                if (vals[i] < 0.0) ok = false;
            }
            if (!ok) continue;
            RadialDensity pert(std::vector<double>(eq.density.grid()), std::move(vals));
            double l1 = 0.0;
            for (std::size_t i = 0; i + 1 < phi.grid.size(); ++i)
                l1 += 4.0 * pi * phi.grid[i] * phi.grid[i] * std::abs(phi.values[i]) *
                      (phi.grid[i + 1] - phi.grid[i]);
            double dv = distance_fluid(pert, eq.density, eq.fields, eq.ansatz);
            if (l1 > 1e-6) min_d_perturbed = std::min(min_d_perturbed, dv);
        }
        push_le(rows, "distance_zero_at_equilibrium", std::abs(self_d), eps_num);
        push_ge(rows, "distance_positive_when_perturbed", min_d_perturbed, 0.0);
    }

    // minimizer property along admissible perturbations
    {
        double min_dh = 1e300;
        double r0 = eq.support_radius;
        for (int t = 0; t < 50; ++t) {
            double c1 = rng.uniform(0.1, 0.7) * r0;
            double c2 = rng.uniform(0.1, 0.7) * r0;
            double w = rng.uniform(0.08, 0.2) * r0;
            RadialProfile phi = make_bump_pair(eq.density.grid(), eq.central_value, c1, c2, w);
            double tau = rng.uniform(1e-4, 1e-2);
            std::vector<double> vals(eq.density.grid().size());
            bool ok = true;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                vals[i] = eq.density.rho()[i] + tau * phi.values[i];
                if (vals[i] < 0.0) ok = false;
            }
            if (!ok) continue;
            RadialDensity pert(std::vector<double>(eq.density.grid()), std::move(vals));
            double dh = (epot_newton(pert) - epot_newton(eq.density)) +
                        epot_q_difference(pert, eq.density, q) +
                        (casimir(pert, eq.ansatz) - casimir(eq.density, eq.ansatz));
            min_dh = std::min(min_dh, dh);
        }
        push_ge(rows, "minimizer_property", min_dh, -eps_num);
    }

    // directional derivative of E_pot^Q
    {
        RadialDensity ball = uniform_ball(1.0, 1.0, 1024);
        RadialProfile phi = make_bump_pair(ball.grid(), 0.05, 0.3, 0.7, 0.15);
        DirectionalDerivativeResult res =
            epotq_directional_derivative(ball, phi, q, {1e-2, 1e-3, 1e-4});
        double x1 = std::log(res.taus.front()), x2 = std::log(res.taus.back());
        double e1 = std::log(std::abs(res.slopes.front() - res.limit));
        double e2 = std::log(std::abs(res.slopes.back() - res.limit));
        double slope = (e1 - e2) / (x1 - x2);
        push_ge(rows, "epotq_derivative_order", slope, 0.9);
    }

    // Taylor remainder: Newtonian identity and scaling exponent
    {
        double r0 = eq.support_radius;
        RadialProfile phi = make_bump_pair(eq.density.grid(), eq.central_value, 0.25 * r0,
                                           0.6 * r0, 0.15 * r0);
        std::vector<double> taus = {1e-1, 1e-2, 1e-3, 1e-4};
        double worst_identity = 0.0;
        std::vector<double> lr, lt;
        for (double tau : taus) {
            std::vector<double> vals(eq.density.grid().size());
            for (std::size_t i = 0; i < vals.size(); ++i)
                vals[i] = std::max(0.0, eq.density.rho()[i] + tau * phi.values[i]);
            RadialDensity pert(std::vector<double>(eq.density.grid()), std::move(vals));
            TaylorRemainder tr = taylor_remainder(pert, eq.density, eq.fields, eq.ansatz, q);
            worst_identity = std::max(
                worst_identity, std::abs(tr.newton_lhs - tr.newton_rhs) / std::abs(tr.newton_rhs));
            lr.push_back(std::log(std::abs(tr.remainder)));
            lt.push_back(std::log(tau));
        }
        double n = static_cast<double>(taus.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            sx += lt[i];
            sy += lr[i];
            sxx += lt[i] * lt[i];
            sxy += lt[i] * lr[i];
        }
        double fit = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        push_le(rows, "taylor_newton_identity", worst_identity, 1e-8);
        push_ge(rows, "taylor_remainder_order", fit, 1.5);
    }

    // finiteness of the absolute Q-difference integral under refinement
    {
        ReferenceDensity ref = ReferenceDensity::uniform(1.0, cfg.reference_radius);
        RadialDensity d = random_density(rng, 1.0, 1.7);
        auto abs_integral = [&](int order) {
            double upper = 40.0 * std::max(d.grid().back(), ref.bar_radius);
            std::vector<double> edges = merge_grids(d.grid(), ref.profile.grid(), upper);
            auto f = [&](double r) {
                return r * r * std::abs(q(d.gN_at(r)) - q(ref.profile.gN_at(r)));
            };
            return integrate_panels(f, edges, order);
        };
        double i1 = abs_integral(8);
        double i2 = abs_integral(16);
        push_le(rows, "epotq_abs_convergence", std::abs(i2 - i1) / std::abs(i2), 1e-3);
    }

    return rows;
}

std::vector<CheckRow> verify_equilibrium(const RunConfig& cfg) {
    std::vector<CheckRow> rows;
    const InterpolationFunction lam = cfg.lambda();
    const AnsatzFunction psi =
        cfg.ansatz().kind == AnsatzKind::FluidPsi ? cfg.ansatz() : AnsatzFunction::fluid(1.0, 0.5);

    // Euler-Lagrange residual at the default resolution
    {
        EquilibriumModel eq = shoot(psi, 1e-3, lam, cfg.shoot_options());
        push_le(rows, "el_residual_default", eq.euler_lagrange_residual(), 1e-6);
    }

    // 2nd-order convergence of the residual under grid refinement
    {
        std::vector<double> res;
        for (int n : {512, 1024, 2048}) {
            ShootOptions opts = cfg.shoot_options();
            opts.grid_uniform = n;
            res.push_back(shoot(psi, 1e-3, lam, opts).euler_lagrange_residual());
        }
        double order = 0.5 * (std::log2(res[0] / res[1]) + std::log2(res[1] / res[2]));
        push_ge(rows, "el_residual_order", order, 1.6);
    }

    // deep-MOND self-similarity collapse
    {
        ShootOptions opts = cfg.shoot_options();
        opts.grid_uniform = 1024;
        double s = 1e-3, sp = 2.5e-4;
        EquilibriumModel a = shoot(psi, s, lam, opts);
        EquilibriumModel b = shoot(psi, sp, lam, opts);
        double stretch = std::cbrt(s / sp);
        double worst = 0.0;
        for (int i = 0; i <= 400; ++i) {
            double r = b.support_radius * i / 400.0;
            double expect = (sp / s) * a.density.rho_at(std::min(r * stretch, a.density.grid().back()));
            worst = std::max(worst, std::abs(b.density.rho_at(r) - expect) / sp);
        }
        push_le(rows, "deep_mond_self_similarity", worst, 1e-2);
    }

    // Newtonian limit: Lane-Emden n=1 radius and mass ratio
    {
        ShootOptions opts = cfg.shoot_options();
        opts.grid_uniform = 1024;
        EquilibriumModel hi = shoot(psi, 1e4, lam, opts);
        EquilibriumModel mid = shoot(psi, 1e3, lam, opts);
        double lane_emden_radius = std::sqrt(pi) / 2.0;
        push_le(rows, "newtonian_mass_ratio",
                std::abs(hi.total_mass / 1e4 - lane_emden_radius) / lane_emden_radius, 0.05);
        bool radii_ok = mid.support_radius > hi.support_radius &&
                        hi.support_radius > lane_emden_radius;
        push(rows, "newtonian_radius_decreasing", hi.support_radius, lane_emden_radius, radii_ok);
    }

    // rho strictly decreasing on the support
    {
        ShootOptions opts = cfg.shoot_options();
        opts.grid_uniform = 1024;
        EquilibriumModel eq = shoot(psi, 1.0, lam, opts);
        double worst = -1e300;
        const auto& rho = eq.density.rho();
        for (std::size_t i = 1; i + 1 < rho.size(); ++i)
            if (rho[i] > 0.0) worst = std::max(worst, rho[i] - rho[i - 1]);
        push_le(rows, "rho_strictly_decreasing", worst, 0.0);
    }

    // solve_for_mass round trip on random targets
    {
        ShootOptions opts = cfg.shoot_options();
        opts.grid_uniform = 512;
        Rng rng(cfg.dynamics_seed + 2);
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            double s0 = std::pow(10.0, rng.uniform(-3.0, 2.0));
            EquilibriumModel m0 = shoot(psi, s0, lam, opts);
            EquilibriumModel inv =
                solve_for_mass(psi, lam, m0.total_mass, {s0 * 0.5, s0 * 2.0}, opts);
            worst = std::max(worst, std::abs(inv.central_value - s0) / s0);
        }
        push_le(rows, "solve_for_mass_roundtrip", worst, 1e-6);
    }

    // kinetic reduction and lift
    {
        AnsatzFunction phi = AnsatzFunction::kinetic(0.5, 1.0);
        std::vector<double> samples;
        for (int i = 1; i <= 12; ++i) samples.push_back(0.05 * i);
        ReductionResult red = reduce_phi_to_psi(phi, samples);
        push_le(rows, "reduction_exponent", std::abs(red.exponent_n - 2.0), 1e-3);

        ShootOptions opts = cfg.shoot_options();
        opts.grid_uniform = 1024;
        KineticModel km = lift_kinetic(phi, lam, 0.05, opts);
        push_le(rows, "lift_density_consistency", km.rho_consistency_error, 1e-6);

        ReferenceDensity ref = ReferenceDensity::uniform(0.05, cfg.reference_radius);
        double epot = epot_newton(km.base.density) +
                      epot_q(km.base.density, ref, QKernel{lam, 1e-10});
        double hb = epot + km.ekin + km.casimir_phase;
        double he = epot + km.h_e_casimir;
        push_le(rows, "hb_equals_he", std::abs(hb - he) / std::abs(he), 1e-6);
    }

    return rows;
}

std::vector<CheckRow> verify_dynamics(const RunConfig& cfg) {
    std::vector<CheckRow> rows;
    const InterpolationFunction lam = cfg.lambda();

    // circular orbit around an external point mass
    {
        SimOptions sim;
        sim.central_mass = 1.0;
        sim.r_floor = 1e-9;
        ShellEnsemble e;
        double g_m = 1.0 + lam.force_factor(1.0);  // gN = 1 at r = 1
        e.r = {1.0};
        e.vr = {0.0};
        e.L = {std::sqrt(g_m)};
        e.w = {1e-12};  // negligible self-gravity
        double period = 2.0 * pi / std::sqrt(g_m);
        double dt = period / 10000.0;
        for (int i = 0; i < 10000; ++i) step(e, lam, dt, sim);
        push_le(rows, "circular_orbit_radius_error", std::abs(e.r[0] - 1.0), 1e-4);
    }

    // stationary shell in zero field stays put
    {
        SimOptions sim;
        sim.r_floor = 1e-9;
        ShellEnsemble e;
        e.r = {1.0};
        e.vr = {0.0};
        e.L = {0.0};
        e.w = {0.0};
        for (int i = 0; i < 100; ++i) step(e, lam, 1e-3, sim);
        push_le(rows, "zero_field_stationary", std::abs(e.r[0] - 1.0), 1e-14);
    }

    // time reversal of the leapfrog
    {
        Rng rng(cfg.dynamics_seed + 3);
        SimOptions sim;
        sim.r_floor = 1e-9;
        ShellEnsemble e;
        int n = 200;
        for (int i = 0; i < n; ++i) {
            e.r.push_back(rng.uniform(0.2, 1.5));
            e.vr.push_back(rng.uniform(-0.3, 0.3));
            e.L.push_back(rng.uniform(0.05, 0.4));
            e.w.push_back(1.0 / n);
        }
        ShellEnsemble start = e;
        double dt = 1e-3;
        for (int i = 0; i < 200; ++i) step(e, lam, dt, sim);
        for (int i = 0; i < static_cast<int>(e.size()); ++i) e.vr[i] = -e.vr[i];
        for (int i = 0; i < 200; ++i) step(e, lam, dt, sim);
        double worst = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i)
            worst = std::max(worst, std::abs(e.r[i] - start.r[i]));
        push_le(rows, "leapfrog_time_reversal", worst, 1e-10);
    }

    // sampling, conservation and dt convergence need the kinetic model
    {
        ShootOptions opts = cfg.shoot_options();
        opts.grid_uniform = 1024;
        AnsatzFunction phi = AnsatzFunction::kinetic(0.5, 1.0);
        KineticModel km = lift_kinetic(phi, lam, 0.05, opts);

        ShellEnsemble ens = sample_from_equilibrium(km, 100000, cfg.dynamics_seed);
        push_le(rows, "sampler_mass_exact",
                std::abs(ens.total_mass() - km.base.total_mass) / km.base.total_mass, 1e-12);

        double worst_e = -1e300;
        for (std::size_t i = 0; i < ens.size(); ++i) {
            double v2 = ens.vr[i] * ens.vr[i] + ens.L[i] * ens.L[i] / (ens.r[i] * ens.r[i]);
            double energy = 0.5 * v2 + km.base.fields.UM_at(ens.r[i]);
            worst_e = std::max(worst_e, energy - km.base.cutoff_energy);
        }
        push_le(rows, "sampled_energies_below_cutoff", worst_e, 0.0);

        // binned density against rho_0 in L1
        {
            std::vector<double> grid = make_radial_grid(km.base.support_radius, 64, 16);
            RadialDensity binned = binned_density(ens, grid);
            double num = 0.0, den = 0.0;
            auto f_num = [&](double r) {
                return 4.0 * pi * r * r *
                       std::abs(binned.rho_at(r) - km.base.density.rho_at(r));
            };
            auto f_den = [&](double r) {
                return 4.0 * pi * r * r * km.base.density.rho_at(r);
            };
            std::vector<double> edges;
            for (double g : grid)
                if (g > 0.0) edges.push_back(g);
            num = integrate_panels(f_num, edges, 4);
            den = integrate_panels(f_den, edges, 4);
            push_le(rows, "sampler_density_l1", num / den, 0.05);
        }

        // short run: exact conservation of mass and per-shell L, stable energy
        {
            PerturbationOptions popts;
            popts.n = 4000;
            popts.t_end_dyn = 2.0;
            popts.dt_frac = 5e-4;
            popts.seed = cfg.dynamics_seed;
            popts.samples_per_tdyn = 4;
            popts.reference_radius = cfg.reference_radius;
            popts.diag_uniform_nodes = 256;
            StabilityDiagnostics d0 = run_perturbation(km, PerturbationKind::VelocityScale, 0.0,
                                                       popts);
            push_le(rows, "short_run_energy_drift", d0.energy_drift, 1e-4);

            PerturbationOptions half = popts;
            half.dt_frac = 2.5e-4;
            StabilityDiagnostics d1 = run_perturbation(km, PerturbationKind::VelocityScale, 0.0,
                                                       half);
            double ratio = d0.energy_drift / std::max(d1.energy_drift, 1e-300);
            push_ge(rows, "energy_drift_dt_order", ratio, 2.5);
        }
    }

    return rows;
}

std::vector<CheckRow> verify_all(const RunConfig& cfg) {
    std::vector<CheckRow> rows = verify_potential(cfg);
    auto append = [&rows](std::vector<CheckRow> more) {
        rows.insert(rows.end(), more.begin(), more.end());
    };
    append(verify_functionals(cfg));
    append(verify_equilibrium(cfg));
    append(verify_dynamics(cfg));
    return rows;
}

}  // namespace mondeq
