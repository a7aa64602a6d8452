#include "mondeq/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "mondeq/common.hpp"
#include "mondeq/field.hpp"
#include "mondeq/functionals.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

namespace {

/// stable LSD radix sort of indices by radius (positive doubles have
/// monotone bit patterns); ties keep shell-index order
void sort_by_radius(const std::vector<double>& r, std::vector<std::uint32_t>& idx) {
    const std::size_t n = r.size();
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), 0u);
    static thread_local std::vector<std::uint64_t> keys, keys_tmp;
    static thread_local std::vector<std::uint32_t> idx_tmp;
    keys.resize(n);
    keys_tmp.resize(n);
    idx_tmp.resize(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = std::bit_cast<std::uint64_t>(r[i]);
    std::uint32_t hist[1 << 16];
    for (int pass = 0; pass < 4; ++pass) {
        const int shift = 16 * pass;
        std::memset(hist, 0, sizeof(hist));
        for (std::size_t i = 0; i < n; ++i) ++hist[(keys[i] >> shift) & 0xffff];
        std::uint32_t sum = 0;
        for (auto& h : hist) {
            std::uint32_t c = h;
            h = sum;
            sum += c;
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t& pos = hist[(keys[i] >> shift) & 0xffff];
            keys_tmp[pos] = keys[i];
            idx_tmp[pos] = idx[i];
            ++pos;
        }
        keys.swap(keys_tmp);
        idx.swap(idx_tmp);
    }
}

void accelerations(const ShellEnsemble& e, const InterpolationFunction& f, const SimOptions& opts,
                   std::vector<double>& acc, std::vector<std::uint32_t>& order) {
    const std::size_t n = e.size();
    acc.resize(n);
    sort_by_radius(e.r, order);
    static thread_local std::vector<double> m_int;
    m_int.resize(n);
    double cum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        double group_w = 0.0;
        const double radius = e.r[order[i]];
        while (j < n && e.r[order[j]] == radius) group_w += e.w[order[j++]];
        const double interior = cum + 0.5 * group_w + opts.central_mass;
        for (std::size_t k = i; k < j; ++k) m_int[order[k]] = interior;
        cum += group_w;
        i = j;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double rk = e.r[k];
        const double gN = m_int[k] / (rk * rk);
        const double gM = gN + f.force_factor(gN);
        acc[k] = -gM + e.L[k] * e.L[k] / (rk * rk * rk);
    }
}

/// int_a^b r^2 Q(m / r^2) dr over a vacuum segment
double segment_q_integral(const QKernel& q, double m, double a, double b) {
    if (m <= 0.0 || b <= a) return 0.0;
    if (q.owner.family == LambdaFamily::Sqrt)
        return (2.0 / 3.0) * std::sqrt(q.owner.a0) * m * std::sqrt(m) * std::log(b / a);
    return integrate_adaptive([&](double r) { return r * r * q(m / (r * r)); }, a, b, 1e-10);
}

}  // namespace

double ShellEnsemble::total_mass() const {
    double sum = 0.0;
    for (double x : w) sum += x;
    return sum;
}

std::vector<double> interior_mass(const ShellEnsemble& e, double central_mass) {
    std::vector<std::uint32_t> order;
    const std::size_t n = e.size();
    sort_by_radius(e.r, order);
    std::vector<double> m_int(n);
    double cum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        double group_w = 0.0;
        const double radius = e.r[order[i]];
        while (j < n && e.r[order[j]] == radius) group_w += e.w[order[j++]];
        const double interior = cum + 0.5 * group_w + central_mass;
        for (std::size_t k = i; k < j; ++k) m_int[order[k]] = interior;
        cum += group_w;
        i = j;
    }
    return m_int;
}

void step(ShellEnsemble& e, const InterpolationFunction& f, double dt, const SimOptions& opts) {
    if (!(dt != 0.0)) throw DomainError("step: dt must be nonzero");
    const std::size_t n = e.size();
    static thread_local std::vector<double> acc;
    static thread_local std::vector<std::uint32_t> order;
    accelerations(e, f, opts, acc, order);
    const double half = 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i) {
        e.vr[i] += half * acc[i];
        e.r[i] += dt * e.vr[i];
        if (e.r[i] < opts.r_floor) {
            e.r[i] = 2.0 * opts.r_floor - e.r[i];
            e.vr[i] = -e.vr[i];
        }
    }
    accelerations(e, f, opts, acc, order);
    for (std::size_t i = 0; i < n; ++i) e.vr[i] += half * acc[i];
    e.time += dt;
}

EnsembleEnergy ensemble_energy(const ShellEnsemble& e, const InterpolationFunction& f,
                               const ReferenceDensity& ref) {
    const std::size_t n = e.size();
    EnsembleEnergy out;
    std::vector<std::uint32_t> order;
    sort_by_radius(e.r, order);

    const QKernel q{f, 1e-10};
    double cum = 0.0;
    double w_newton = 0.0;
    double shell_q = 0.0;
    std::size_t i = 0;
    double prev_r = 0.0;
    while (i < n) {
        std::size_t j = i;
        const double radius = e.r[order[i]];
        double group_w = 0.0;
        while (j < n && e.r[order[j]] == radius) group_w += e.w[order[j++]];
        shell_q += segment_q_integral(q, cum, prev_r, radius);
        const double interior = cum + 0.5 * group_w;
        for (std::size_t k = i; k < j; ++k) w_newton -= e.w[order[k]] * interior / radius;
        cum += group_w;
        prev_r = radius;
        i = j;
    }
    const double m_total = cum;
    const double r_cut = std::max(prev_r, ref.bar_radius);
    shell_q += segment_q_integral(q, m_total, prev_r, r_cut);

    // reference part int_0^{r_cut} r^2 Q(gN_ref) dr; beyond r_cut the fields match
    const auto& rp = ref.profile;
    std::vector<double> edges;
    for (double g : rp.grid())
        if (g > 0.0 && g < r_cut) edges.push_back(g);
    edges.push_back(std::min(r_cut, rp.grid().back()));
    double ref_q = 0.0;
    {
        double first = edges.front();
        auto integrand = [&](double r) { return r * r * q(rp.gN_at(r)); };
        ref_q += integrate_gauss([&](double t) { return 2.0 * t * integrand(t * t); }, 0.0,
                                 std::sqrt(first), 16);
        for (std::size_t k = 0; k + 1 < edges.size(); ++k)
            if (edges[k + 1] > edges[k])
                ref_q += integrate_gauss(integrand, edges[k], edges[k + 1], 8);
        if (r_cut > rp.grid().back())
            ref_q += segment_q_integral(q, rp.total_mass(), rp.grid().back(), r_cut);
    }

    out.qpart = -(shell_q - ref_q);
    out.newton = w_newton;

    double clausius = 0.0;
    std::vector<double> m_int = interior_mass(e, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        out.kinetic += 0.5 * e.w[k] * (e.vr[k] * e.vr[k] + e.L[k] * e.L[k] / (e.r[k] * e.r[k]));
        double gN = m_int[k] / (e.r[k] * e.r[k]);
        clausius += e.w[k] * e.r[k] * (gN + f.force_factor(gN));
    }
    out.total = out.kinetic + out.newton + out.qpart;
    out.virial = (clausius > 0.0) ? 2.0 * out.kinetic / clausius : 0.0;
    return out;
}

ShellEnsemble sample_from_equilibrium(const KineticModel& km, std::size_t n, std::uint64_t seed) {
    if (n < 1000) throw DomainError("sample_from_equilibrium: need at least 10^3 shells");
    const double r0 = km.base.support_radius;
    const double r1 = km.velocity_support;
    const double e0 = km.base.cutoff_energy;
    const double f_max = km.phi.inverse_derivative(e0 - km.base.fields.UM().front());

    ShellEnsemble ens;
    ens.r.reserve(n);
    ens.vr.reserve(n);
    ens.L.reserve(n);
    ens.w.assign(n, km.base.total_mass / static_cast<double>(n));

    Rng rng(seed);
    std::size_t proposals = 0;
    const std::size_t proposal_cap =
        std::max<std::size_t>(1000000, static_cast<std::size_t>(n) * 10000);
    while (ens.r.size() < n) {
        if (++proposals > proposal_cap)
            throw SamplerError("sample_from_equilibrium: rejection efficiency below 1e-4");
        double rad = r0 * std::cbrt(rng.uniform());
        double vel = r1 * std::cbrt(rng.uniform());
        double f_val = km.f0(rad, vel);
        if (rng.uniform() * f_max >= f_val) continue;
        double mu = rng.uniform(-1.0, 1.0);  // angle between x and v
        double v_rad = vel * mu;
        double v_tan = vel * std::sqrt(std::max(0.0, 1.0 - mu * mu));
        ens.r.push_back(rad);
        ens.vr.push_back(v_rad);
        ens.L.push_back(rad * v_tan);
    }
    return ens;
}

RadialDensity binned_density(const ShellEnsemble& e, const std::vector<double>& grid) {
    const std::size_t m = grid.size();
    std::vector<double> mass(m, 0.0);
    for (std::size_t i = 0; i < e.size(); ++i) {
        double r = e.r[i];
        if (r >= grid.back()) {
            mass.back() += e.w[i];
            continue;
        }
        auto it = std::upper_bound(grid.begin(), grid.end(), r);
        std::size_t j = static_cast<std::size_t>(it - grid.begin()) - 1;
        double t = (r - grid[j]) / (grid[j + 1] - grid[j]);
        mass[j] += e.w[i] * (1.0 - t);
        mass[j + 1] += e.w[i] * t;
    }
    // hat volumes: integral of each linear hat against 4 pi r^2 dr
    std::vector<double> volume(m, 0.0);
    auto rise = [](double a, double b) {
        // int_a^b 4 pi r^2 (r - a)/(b - a) dr
        return 4.0 * pi / (b - a) *
               (std::pow(b, 4) / 4.0 - a * std::pow(b, 3) / 3.0 + std::pow(a, 4) / 12.0);
    };
    auto fall = [](double a, double b) {
        // int_a^b 4 pi r^2 (b - r)/(b - a) dr
        return 4.0 * pi / (b - a) *
               (std::pow(b, 4) / 12.0 - std::pow(a, 3) * b / 3.0 + std::pow(a, 4) / 4.0);
    };
    for (std::size_t j = 0; j < m; ++j) {
        if (j > 0) volume[j] += rise(grid[j - 1], grid[j]);
        if (j + 1 < m) volume[j] += fall(grid[j], grid[j + 1]);
    }
    std::vector<double> rho(m);
    for (std::size_t j = 0; j < m; ++j) rho[j] = mass[j] / volume[j];
    return RadialDensity(std::vector<double>(grid), std::move(rho));
}

std::string StabilityDiagnostics::csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "t,d_fluid,grad_l2_dev,grad_l32_dev,energy,virial\n";
    for (std::size_t i = 0; i < time.size(); ++i)
        os << time[i] << "," << d_fluid[i] << "," << grad_l2[i] << "," << grad_l32[i] << ","
           << energy[i] << "," << virial[i] << "\n";
    return os.str();
}

StabilityDiagnostics run_perturbation(const KineticModel& km, PerturbationKind kind, double eps,
                                      const PerturbationOptions& opts) {
    if (!(eps >= 0.0 && eps <= 0.2))
        throw DomainError("run_perturbation: eps must lie in [0, 0.2]");

    ShellEnsemble ens = sample_from_equilibrium(km, opts.n, opts.seed);
    switch (kind) {
        case PerturbationKind::VelocityScale:
            for (std::size_t i = 0; i < ens.size(); ++i) {
                ens.vr[i] *= 1.0 + eps;
                ens.L[i] *= 1.0 + eps;
            }
            break;
        case PerturbationKind::RadialBreathing:
            // radial stretch at fixed weights (mass preserving) and fixed
            // tangential velocity, so L = r v_t scales with r
            for (std::size_t i = 0; i < ens.size(); ++i) {
                ens.r[i] *= 1.0 + eps;
                ens.L[i] *= 1.0 + eps;
            }
            break;
    }

    const double r0 = km.base.support_radius;
    const double mass = km.base.total_mass;
    const double t_dyn = 2.0 * pi * std::sqrt(r0 * r0 * r0 / mass);
    const double dt = opts.dt_frac * t_dyn;
    const long total_steps = std::lround(opts.t_end_dyn / opts.dt_frac);
    const long sample_every =
        std::max(1L, std::lround(1.0 / (opts.samples_per_tdyn * opts.dt_frac)));

    SimOptions sim;
    sim.r_floor = 1e-6 * r0;
    const ReferenceDensity ref = ReferenceDensity::uniform(mass, opts.reference_radius);

    // diagnostics mesh: the equilibrium grid family extended to 2 R0
    std::vector<double> diag_grid = make_radial_grid(2.0 * r0, opts.diag_uniform_nodes, 32);
    std::vector<double> rho0_vals(diag_grid.size());
    for (std::size_t i = 0; i < diag_grid.size(); ++i)
        rho0_vals[i] = km.base.density.rho_at(diag_grid[i]);
    RadialDensity rho0_raw(std::vector<double>(diag_grid), std::move(rho0_vals));
    // rescale so the deposited and reference masses agree exactly
    double scale = mass / rho0_raw.total_mass();
    std::vector<double> rho0_scaled = rho0_raw.rho();
    for (double& v : rho0_scaled) v *= scale;
    RadialDensity rho0_diag(std::vector<double>(diag_grid), std::move(rho0_scaled));

    StabilityDiagnostics diag;
    diag.t_dyn = t_dyn;

    auto record = [&]() {
        RadialDensity dens = binned_density(ens, diag_grid);
        double d_val = distance_fluid(dens, rho0_diag, km.base.fields, km.base.ansatz);
        double g2 = std::sqrt(grad_deviation_pow(dens, rho0_diag, 2.0));
        double g32 = std::pow(grad_deviation_pow(dens, rho0_diag, 1.5), 2.0 / 3.0);
        EnsembleEnergy en = ensemble_energy(ens, km.base.lambda, ref);
        diag.time.push_back(ens.time);
        diag.d_fluid.push_back(d_val);
        diag.grad_l2.push_back(g2);
        diag.grad_l32.push_back(g32);
        diag.energy.push_back(en.total);
        diag.virial.push_back(en.virial);
    };

    record();
    static thread_local std::vector<double> acc;
    static thread_local std::vector<std::uint32_t> order;
    accelerations(ens, km.base.lambda, sim, acc, order);
    const double half = 0.5 * dt;
    for (long s = 1; s <= total_steps; ++s) {
        for (std::size_t i = 0; i < ens.size(); ++i) {
            ens.vr[i] += half * acc[i];
            ens.r[i] += dt * ens.vr[i];
            if (ens.r[i] < sim.r_floor) {
                ens.r[i] = 2.0 * sim.r_floor - ens.r[i];
                ens.vr[i] = -ens.vr[i];
            }
        }
        accelerations(ens, km.base.lambda, sim, acc, order);
        for (std::size_t i = 0; i < ens.size(); ++i) ens.vr[i] += half * acc[i];
        ens.time += dt;
        if (s % sample_every == 0 || s == total_steps) record();
    }

    diag.max_d_fluid = *std::max_element(diag.d_fluid.begin(), diag.d_fluid.end());
    diag.max_grad_l2 = *std::max_element(diag.grad_l2.begin(), diag.grad_l2.end());
    diag.max_grad_l32 = *std::max_element(diag.grad_l32.begin(), diag.grad_l32.end());
    double e_first = diag.energy.front();
    double drift = 0.0;
    for (double e : diag.energy) drift = std::max(drift, std::abs(e - e_first));
    diag.energy_drift = drift / std::abs(e_first);
    return diag;
}

}  // namespace mondeq
