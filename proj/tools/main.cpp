// Command-line front end: equilibrium solves, mass curves, kinetic lifts,
// perturbation experiments and the verification suites.
//
// Exit codes: 0 success, 1 check failure, 2 usage/validation, 3 numerical failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mondeq/common.hpp"
#include "mondeq/config.hpp"
#include "mondeq/dynamics.hpp"
#include "mondeq/functionals.hpp"
#include "mondeq/kinetic.hpp"
#include "mondeq/snapshot.hpp"
#include "mondeq/verify.hpp"

namespace {

using namespace mondeq;

struct GlobalFlags {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    bool no_timestamp = false;
};

std::string timestamp_line() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string("# generated: ") + buf + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& body,
                const GlobalFlags& flags) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open '" + path.string() + "' for writing");
    if (!flags.no_timestamp) os << timestamp_line();
    os << body;
}

RunConfig load_config(const GlobalFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = RunConfig::from_file(flags.config_path);
    if (!flags.out_dir.empty()) cfg.output_dir = flags.out_dir;
    if (flags.seed_set) cfg.dynamics_seed = flags.seed;
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);
    return cfg;
}

int cmd_mass_curve(const GlobalFlags& flags, double s_min, double s_max, int points) {
    RunConfig cfg = load_config(flags);
    if (points < 2) throw ValidationError("mass-curve: need at least 2 points");
    if (!(s_min > 0.0) || !(s_max > s_min))
        throw ValidationError("mass-curve: need 0 < s_min < s_max");
    AnsatzFunction psi = cfg.ansatz_kind == "kinetic" ? effective_fluid_ansatz(cfg.ansatz())
                                                      : cfg.ansatz();
    MassCurve curve = mass_curve(psi, cfg.lambda(), s_min, s_max, points, cfg.shoot_options());

    std::ostringstream table;
    table << "s,M_s,R_s\n";
    for (const auto& p : curve.points)
        table << format_full(p.s) << "," << format_full(p.mass) << "," << format_full(p.radius)
              << "\n";
    write_text(std::filesystem::path(cfg.output_dir) / "mass_curve.csv", table.str(), flags);

    std::ostringstream fits;
    fits << "range,s_lo,s_hi,points,coefficient,exponent,pinned_exponent,pinned_coefficient\n";
    auto fit_row = [&](const char* name, const PowerLawFit& f) {
        fits << name << "," << format_full(f.s_lo) << "," << format_full(f.s_hi) << "," << f.points
             << "," << format_full(f.coefficient) << "," << format_full(f.exponent) << ","
             << format_full(f.pinned_exponent) << "," << format_full(f.pinned_coefficient) << "\n";
    };
    fit_row("deep_mond", curve.fit_deep);
    fit_row("newtonian", curve.fit_newton);
    write_text(std::filesystem::path(cfg.output_dir) / "fits.csv", fits.str(), flags);

    std::printf("mass-curve: %zu points, monotone=%s\n", curve.points.size(),
                curve.strictly_increasing() ? "yes" : "no");
    if (curve.fit_deep.points >= 2)
        std::printf("  deep fit    (%d pts): exponent %.4f, 1.06-style coefficient %.4f\n",
                    curve.fit_deep.points, curve.fit_deep.exponent,
                    curve.fit_deep.pinned_coefficient);
    if (curve.fit_newton.points >= 2)
        std::printf("  newton fit  (%d pts): exponent %.4f\n", curve.fit_newton.points,
                    curve.fit_newton.exponent);
    return 0;
}

int cmd_solve(const GlobalFlags& flags, std::optional<double> mass, std::optional<double> central) {
    RunConfig cfg = load_config(flags);
    if (mass.has_value() == central.has_value())
        throw ValidationError("solve: give exactly one of --mass or --central");
    if (cfg.ansatz_kind != "fluid")
        throw ValidationError("solve: config ansatz.kind must be fluid (use `lift` for kinetic)");
    if (mass && !(*mass > 0.0)) throw ValidationError("solve: mass must be positive");
    if (central && !(*central > 0.0)) throw ValidationError("solve: central value must be positive");

    EquilibriumModel model =
        mass ? solve_for_mass(cfg.ansatz(), cfg.lambda(), *mass, {}, cfg.shoot_options())
             : shoot(cfg.ansatz(), *central, cfg.lambda(), cfg.shoot_options());

    std::filesystem::path out(cfg.output_dir);
    write_model_snapshot((out / "model.snap").string(), model, std::nullopt, !flags.no_timestamp);

    ReferenceDensity ref = ReferenceDensity::uniform(model.density.total_mass(),
                                                     cfg.reference_radius);
    QKernel q{model.lambda, 1e-10};
    EnergyReport rep = energy_report(model.density, ref, q, model.ansatz);
    write_text(out / "energies.csv", energy_report_csv(rep), flags);

    std::printf("solve: s = %.10g  M_s = %.10g  R_0 = %.10g  E_0 = %.10g\n", model.central_value,
                model.total_mass, model.support_radius, model.cutoff_energy);
    return 0;
}

int cmd_lift(const GlobalFlags& flags, double mass) {
    RunConfig cfg = load_config(flags);
    if (cfg.ansatz_kind != "kinetic")
        throw ValidationError("lift: config ansatz.kind must be kinetic");
    if (!(mass > 0.0)) throw ValidationError("lift: mass must be positive");

    KineticModel km = lift_kinetic(cfg.ansatz(), cfg.lambda(), mass, cfg.shoot_options());
    std::filesystem::path out(cfg.output_dir);
    write_model_snapshot((out / "model.snap").string(), km.base, cfg.ansatz(),
                         !flags.no_timestamp);

    ReferenceDensity ref = ReferenceDensity::uniform(km.base.density.total_mass(),
                                                     cfg.reference_radius);
    QKernel q{km.base.lambda, 1e-10};
    EnergyReport rep = energy_report(km.base.density, ref, q, km.base.ansatz);
    rep.ekin = km.ekin;
    rep.casimir = km.casimir_phase;
    rep.h_value = rep.epot_newton + rep.epot_q + km.ekin + km.casimir_phase;
    write_text(out / "energies.csv", energy_report_csv(rep), flags);

    double epot = rep.epot_newton + rep.epot_q;
    double hb = epot + km.ekin + km.casimir_phase;
    double he = epot + km.h_e_casimir;
    std::printf("lift: k = %.4g  M = %.10g  R_0 = %.10g  E_0 = %.10g\n", km.phi.exponent, mass,
                km.base.support_radius, km.base.cutoff_energy);
    std::printf("  H_B = %.12g  H_E = %.12g  |H_B - H_E|/|H_E| = %.3g\n", hb, he,
                std::abs(hb - he) / std::abs(he));
    std::printf("  density consistency (int f0 dv vs rho_0): %.3g\n", km.rho_consistency_error);
    return 0;
}

int cmd_energies(const GlobalFlags& flags, const std::string& model_path) {
    RunConfig cfg = load_config(flags);
    LoadedModel loaded = read_model_snapshot(model_path);
    ReferenceDensity ref = ReferenceDensity::uniform(loaded.model.density.total_mass(),
                                                     cfg.reference_radius);
    QKernel q{loaded.model.lambda, 1e-10};
    EnergyReport rep = energy_report(loaded.model.density, ref, q, loaded.model.ansatz);
    write_text(std::filesystem::path(cfg.output_dir) / "energies.csv", energy_report_csv(rep),
               flags);
    std::printf("energies: h_value = %.12g (epot_newton %.12g, epot_q %.12g, casimir %.12g)\n",
                rep.h_value, rep.epot_newton, rep.epot_q, rep.casimir);
    return 0;
}

int cmd_perturb(const GlobalFlags& flags, const std::string& model_path, double eps,
                const std::string& kind_name, double t_end) {
    RunConfig cfg = load_config(flags);
    if (!(eps >= 0.0 && eps <= 0.2))
        throw ValidationError("perturb: eps must lie in [0, 0.2]");
    PerturbationKind kind;
    if (kind_name == "velocity_scale")
        kind = PerturbationKind::VelocityScale;
    else if (kind_name == "radial_breathing")
        kind = PerturbationKind::RadialBreathing;
    else
        throw ValidationError("perturb: kind must be velocity_scale or radial_breathing");

    LoadedModel loaded = read_model_snapshot(model_path);
    if (!loaded.phi)
        throw ValidationError("perturb: snapshot has no kinetic ansatz; produce it with `lift`");
    KineticModel km = attach_kinetic(*loaded.phi, std::move(loaded.model));

    PerturbationOptions popts;
    popts.n = cfg.dynamics_n;
    popts.dt_frac = cfg.dynamics_dt_frac;
    popts.t_end_dyn = t_end > 0.0 ? t_end : cfg.dynamics_t_end_dyn;
    popts.seed = cfg.dynamics_seed;
    popts.reference_radius = cfg.reference_radius;

    StabilityDiagnostics diag = run_perturbation(km, kind, eps, popts);
    std::filesystem::path out(cfg.output_dir);
    write_text(out / "diagnostics.csv", diag.csv(), flags);

    std::ostringstream summary;
    summary << "quantity,value\n";
    summary << "t_dyn," << format_full(diag.t_dyn) << "\n";
    summary << "max_d_fluid," << format_full(diag.max_d_fluid) << "\n";
    summary << "max_grad_l2_dev," << format_full(diag.max_grad_l2) << "\n";
    summary << "max_grad_l32_dev," << format_full(diag.max_grad_l32) << "\n";
    summary << "energy_drift," << format_full(diag.energy_drift) << "\n";
    summary << "initial_d_fluid," << format_full(diag.d_fluid.front()) << "\n";
    summary << "initial_grad_l2_dev," << format_full(diag.grad_l2.front()) << "\n";
    summary << "initial_grad_l32_dev," << format_full(diag.grad_l32.front()) << "\n";
    write_text(out / "summary.csv", summary.str(), flags);

    std::printf("perturb: kind=%s eps=%.4g over %.4g T_dyn (T_dyn = %.6g)\n", kind_name.c_str(),
                eps, popts.t_end_dyn, diag.t_dyn);
    std::printf("  max/initial d_fluid %.3g, grad_l2 %.3g, grad_l32 %.3g; energy drift %.3g\n",
                diag.max_d_fluid / diag.d_fluid.front(),
                diag.max_grad_l2 / diag.grad_l2.front(),
                diag.max_grad_l32 / diag.grad_l32.front(), diag.energy_drift);
    return 0;
}

int cmd_verify(const GlobalFlags& flags, const std::string& suite, const std::string& model_path) {
    RunConfig cfg = load_config(flags);
    std::vector<CheckRow> rows;
    if (suite == "potential")
        rows = verify_potential(cfg);
    else if (suite == "functionals")
        rows = verify_functionals(cfg);
    else if (suite == "equilibrium")
        rows = verify_equilibrium(cfg);
    else if (suite == "dynamics")
        rows = verify_dynamics(cfg);
    else if (suite == "all")
        rows = verify_all(cfg);
    else
        throw ValidationError("verify: unknown suite '" + suite + "'");

    if (!model_path.empty()) {
        // snapshot sanity: loads, mass and surface bookkeeping consistent
        LoadedModel loaded = read_model_snapshot(model_path);
        const EquilibriumModel& m = loaded.model;
        double mass_dev =
            std::abs(m.density.total_mass() - m.total_mass) / std::max(m.total_mass, 1e-300);
        rows.push_back({"snapshot_mass_consistency", mass_dev <= 1e-4, mass_dev, 1e-4});
        double res = m.euler_lagrange_residual();
        rows.push_back({"snapshot_el_residual", res <= 1e-5, res, 1e-5});
    }

    std::string table = check_table_csv(rows);
    std::fputs(table.c_str(), stdout);
    write_text(std::filesystem::path(cfg.output_dir) / "verify.csv", table, flags);
    return all_pass(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical MOND equilibria: solver, diagnostics and stress tests"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--config", flags.config_path, "key=value configuration file");
    app.add_option("--out", flags.out_dir, "output directory (overrides output.dir)");
    auto* seed_opt = app.add_option("--seed", flags.seed, "random seed (overrides dynamics.seed)");
    app.add_option("--threads", flags.threads, "worker threads for quadrature probes");
    app.add_flag("--no-timestamp", flags.no_timestamp, "omit the timestamp header line in CSVs");

    double s_min = 1e-4, s_max = 1.0;
    int points = 60;
    auto* curve = app.add_subcommand("mass-curve", "scan central densities and fit scaling laws");
    curve->add_option("--s-min", s_min, "smallest central density");
    curve->add_option("--s-max", s_max, "largest central density");
    curve->add_option("--points", points, "number of log-spaced scan points");

    std::optional<double> mass, central;
    auto* solve = app.add_subcommand("solve", "solve one fluid equilibrium");
    solve->add_option("--mass", mass, "target total mass");
    solve->add_option("--central", central, "central density");

    double lift_mass = 0.05;
    auto* lift = app.add_subcommand("lift", "solve and lift a kinetic model");
    lift->add_option("--mass", lift_mass, "target total mass");

    std::string model_path;
    auto* energies = app.add_subcommand("energies", "energy report for a model snapshot");
    energies->add_option("--model", model_path, "model snapshot path")->required();

    double eps = 0.0, t_end = 0.0;
    std::string kind = "velocity_scale";
    std::string perturb_model;
    auto* perturb = app.add_subcommand("perturb", "perturb-and-evolve stability experiment");
    perturb->add_option("--model", perturb_model, "lifted model snapshot")->required();
    perturb->add_option("--eps", eps, "perturbation strength in [0, 0.2]");
    perturb->add_option("--kind", kind, "velocity_scale or radial_breathing");
    perturb->add_option("--t-end", t_end, "run length in dynamical times");

    std::string suite = "all";
    std::string verify_model;
    auto* verify = app.add_subcommand("verify", "run the invariant check suites");
    verify->add_option("--suite", suite, "potential|functionals|equilibrium|dynamics|all");
    verify->add_option("--model", verify_model, "optional model snapshot to validate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        flags.seed_set = seed_opt->count() > 0;
        if (curve->parsed()) return cmd_mass_curve(flags, s_min, s_max, points);
        if (solve->parsed()) return cmd_solve(flags, mass, central);
        if (lift->parsed()) return cmd_lift(flags, lift_mass);
        if (energies->parsed()) return cmd_energies(flags, model_path);
        if (perturb->parsed()) return cmd_perturb(flags, perturb_model, eps, kind, t_end);
        if (verify->parsed()) return cmd_verify(flags, suite, verify_model);
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const BracketError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const ToleranceError& e) {
        std::fprintf(stderr, "numerical error: %s (achieved %.6g)\n", e.what(), e.value);
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    }
    return 2;
}
