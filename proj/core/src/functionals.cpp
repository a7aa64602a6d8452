#include "mondeq/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mondeq/common.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

namespace {

/// panel integral of f over [0, upper] with edges from one or two node sets;
/// the first panel is integrated in t = sqrt(r) (integrands here are smooth
/// in sqrt(r) near the center)
double radial_panel_integral(const std::function<double(double)>& f,
                             const std::vector<double>& edges, int order = 8) {
    if (edges.empty()) return 0.0;
    double first = edges.front();
    double total = 0.0;
    if (first > 0.0)
        total += integrate_gauss([&](double t) { return 2.0 * t * f(t * t); }, 0.0,
                                 std::sqrt(first), 16);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i + 1] > edges[i]) total += integrate_gauss(f, edges[i], edges[i + 1], order);
    return total;
}

std::vector<double> positive_edges(const std::vector<double>& grid, double upper) {
    std::vector<double> edges;
    edges.reserve(grid.size());
    for (double g : grid)
        if (g > 0.0 && g <= upper) edges.push_back(g);
    if (edges.empty() || edges.back() < upper) edges.push_back(upper);
    return edges;
}

void require_equal_mass(double ma, double mb, const char* who) {
    double scale = std::max({std::abs(ma), std::abs(mb), 1e-300});
    if (std::abs(ma - mb) > 1e-12 * scale)
        throw ValidationError(std::string(who) + ": total masses differ beyond 1e-12 relative");
}

}  // namespace

double RadialProfile::at(double r) const {
    if (r < 0.0) throw DomainError("RadialProfile::at: negative radius");
    if (grid.empty() || r >= grid.back()) return 0.0;
    auto it = std::upper_bound(grid.begin(), grid.end(), r);
    if (it == grid.begin()) return values.front();
    std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
    double t = (r - grid[i]) / (grid[i + 1] - grid[i]);
    return values[i] + t * (values[i + 1] - values[i]);
}

double RadialProfile::integral() const {
    auto f = [this](double r) { return 4.0 * pi * r * r * at(r); };
    return radial_panel_integral(f, positive_edges(grid, grid.back()));
}

double RadialProfile::abs_integral() const {
    auto f = [this](double r) { return 4.0 * pi * r * r * std::abs(at(r)); };
    return radial_panel_integral(f, positive_edges(grid, grid.back()));
}

double epot_newton(const RadialDensity& d) {
    const double rim = d.grid().back();
    const double m = d.total_mass();
    if (m == 0.0) return 0.0;
    auto f = [&](double r) {
        double mr = d.mass_at(r);
        return mr * mr / (r * r);
    };
    double interior = radial_panel_integral(f, positive_edges(d.grid(), rim));
    return -0.5 * (interior + m * m / rim);
}

double epot_q_difference(const RadialDensity& a, const RadialDensity& b, const QKernel& q) {
    require_equal_mass(a.total_mass(), b.total_mass(), "epot_q_difference");
    double upper = std::max(a.grid().back(), b.grid().back());
    std::vector<double> edges = merge_grids(a.grid(), b.grid(), upper);
    std::vector<double> pos = positive_edges(edges, upper);
    auto f = [&](double r) { return r * r * (q(a.gN_at(r)) - q(b.gN_at(r))); };
    return -radial_panel_integral(f, pos);
}

double epot_q(const RadialDensity& d, const ReferenceDensity& ref, const QKernel& q) {
    require_equal_mass(d.total_mass(), ref.profile.total_mass(), "epot_q");
    return epot_q_difference(d, ref.profile, q);
}

double casimir(const RadialDensity& d, const AnsatzFunction& a) {
    if (a.kind != AnsatzKind::FluidPsi)
        throw DomainError("casimir: needs a fluid ansatz function");
    auto f = [&](double r) { return 4.0 * pi * r * r * a.value(d.rho_at(r)); };
    return radial_panel_integral(f, positive_edges(d.grid(), d.grid().back()));
}

double density_norm(const RadialDensity& d, double p) {
    if (!(p >= 1.0)) throw DomainError("density_norm: p must be >= 1");
    auto f = [&](double r) { return 4.0 * pi * r * r * std::pow(d.rho_at(r), p); };
    double v = radial_panel_integral(f, positive_edges(d.grid(), d.grid().back()));
    return std::pow(v, 1.0 / p);
}

double grad_deviation_pow(const RadialDensity& a, const RadialDensity& b, double p) {
    if (p < 2.0) require_equal_mass(a.total_mass(), b.total_mass(), "grad_deviation_pow");
    double upper = std::max(a.grid().back(), b.grid().back());
    std::vector<double> edges = merge_grids(a.grid(), b.grid(), upper);
    auto f = [&](double r) {
        return 4.0 * pi * r * r * std::pow(std::abs(a.gN_at(r) - b.gN_at(r)), p);
    };
    double interior = radial_panel_integral(f, positive_edges(edges, upper));
    double tail = 0.0;
    double dm = a.total_mass() - b.total_mass();
    if (dm != 0.0 && p >= 2.0) {
        // |delta g| = |dm|/r^2 beyond both supports
        tail = 4.0 * pi * std::pow(std::abs(dm), p) * std::pow(upper, 3.0 - 2.0 * p) /
               (2.0 * p - 3.0);
    }
    return interior + tail;
}

double distance_fluid(const RadialDensity& d, const RadialDensity& rho0, const FieldProfile& field0,
                      const AnsatzFunction& a) {
    require_equal_mass(d.total_mass(), rho0.total_mass(), "distance_fluid");
    double upper = std::max(d.grid().back(), rho0.grid().back());
    std::vector<double> edges = merge_grids(d.grid(), rho0.grid(), upper);
    auto f = [&](double r) {
        double rho = d.rho_at(r);
        double rho_eq = rho0.rho_at(r);
        return 4.0 * pi * r * r *
               (a.value(rho) - a.value(rho_eq) + field0.UM_at(r) * (rho - rho_eq));
    };
    return radial_panel_integral(f, positive_edges(edges, upper));
}

DirectionalDerivativeResult epotq_directional_derivative(const RadialDensity& d,
                                                         const RadialProfile& phi,
                                                         const QKernel& q,
                                                         const std::vector<double>& taus) {
    double net = phi.integral();
    double scale = phi.abs_integral();
    if (std::abs(net) > 1e-10 * std::max(scale, 1e-300))
        throw ValidationError("epotq_directional_derivative: phi must have zero total mass");

    DirectionalDerivativeResult out;
    out.taus = taus;

    double upper = std::max(d.grid().back(), phi.grid.empty() ? 0.0 : phi.grid.back());
    std::vector<double> merged = merge_grids(d.grid(), phi.grid, upper);

    for (double tau : taus) {
        if (tau == 0.0) {
            out.slopes.push_back(0.0);
            continue;
        }
        std::vector<double> rho_tau(merged.size());
        for (std::size_t i = 0; i < merged.size(); ++i) {
            double v = d.rho_at(merged[i]) + tau * phi.at(merged[i]);
            if (v < 0.0) {
                if (v < -1e-14 * std::max(1.0, d.rho_at(merged[i])))
                    throw ValidationError(
                        "epotq_directional_derivative: rho + tau phi is negative");
                v = 0.0;
            }
            rho_tau[i] = v;
        }
        std::vector<double> grid_tau(merged);
        if (grid_tau.front() != 0.0) {
            grid_tau.insert(grid_tau.begin(), 0.0);
            rho_tau.insert(rho_tau.begin(), d.rho_at(0.0) + tau * phi.at(0.0));
        }
        RadialDensity perturbed(std::move(grid_tau), std::move(rho_tau));
        out.slopes.push_back(epot_q_difference(perturbed, d, q) / tau);
    }

    FieldProfile fields = potentials(d, q.owner, PotentialNormalization::NewtonianAtInfinity);
    auto f = [&](double r) { return 4.0 * pi * r * r * fields.Ulam_at(r) * phi.at(r); };
    out.limit = radial_panel_integral(f, positive_edges(merged, upper));
    return out;
}

TaylorRemainder taylor_remainder(const RadialDensity& d, const RadialDensity& rho0,
                                 const FieldProfile& field0, const AnsatzFunction& a,
                                 const QKernel& q) {
    require_equal_mass(d.total_mass(), rho0.total_mass(), "taylor_remainder");
    TaylorRemainder out;

    double delta_en = epot_newton(d) - epot_newton(rho0);
    double delta_eq = epot_q_difference(d, rho0, q);
    double delta_c = casimir(d, a) - casimir(rho0, a);
    out.h_difference = delta_en + delta_eq + delta_c;
    out.d_value = distance_fluid(d, rho0, field0, a);
    out.remainder = out.h_difference - out.d_value;

    out.grad_l2_sq = grad_deviation_pow(d, rho0, 2.0);
    out.grad_l32_pow = grad_deviation_pow(d, rho0, 1.5);

    double upper = std::max(d.grid().back(), rho0.grid().back());
    std::vector<double> edges = merge_grids(d.grid(), rho0.grid(), upper);
    auto un_term = [&](double r) {
        return 4.0 * pi * r * r * field0.UN_at(r) * (d.rho_at(r) - rho0.rho_at(r));
    };
    double coupling = radial_panel_integral(un_term, positive_edges(edges, upper));
    out.newton_lhs = delta_en - coupling;
    out.newton_rhs = -out.grad_l2_sq / (8.0 * pi);
    return out;
}

EnergyReport energy_report(const RadialDensity& d, const ReferenceDensity& ref, const QKernel& q,
                           const AnsatzFunction& a, const RadialDensity* baseline) {
    EnergyReport rep;
    rep.epot_newton = epot_newton(d);
    rep.epot_q = epot_q(d, ref, q);
    rep.casimir = casimir(d, a);
    rep.ekin = 0.0;  // static fluid
    rep.h_value = rep.epot_newton + rep.epot_q + rep.ekin + rep.casimir;
    rep.norm_l1 = density_norm(d, 1.0);
    rep.norm_l65 = density_norm(d, 1.2);
    rep.norm_l1p1n = density_norm(d, 1.0 + 1.0 / a.exponent);
    if (baseline) {
        rep.grad_l2_dev = std::sqrt(grad_deviation_pow(d, *baseline, 2.0));
        rep.grad_l32_dev = std::pow(grad_deviation_pow(d, *baseline, 1.5), 2.0 / 3.0);
    }
    return rep;
}

std::string energy_report_csv(const EnergyReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "quantity,value\n";
    os << "epot_newton," << rep.epot_newton << "\n";
    os << "epot_q," << rep.epot_q << "\n";
    os << "casimir," << rep.casimir << "\n";
    os << "ekin," << rep.ekin << "\n";
    os << "h_value," << rep.h_value << "\n";
    os << "norm_l1," << rep.norm_l1 << "\n";
    os << "norm_l65," << rep.norm_l65 << "\n";
    os << "grad_l2_dev," << rep.grad_l2_dev << "\n";
    os << "grad_l32_dev," << rep.grad_l32_dev << "\n";
    return os.str();
}

RadialProfile make_bump_pair(const std::vector<double>& grid, double amplitude, double c1,
                             double c2, double width) {
    auto bump = [width](double r, double c) {
        double x = (r - c) / width;
        if (std::abs(x) >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - x * x));
    };
    // gamma balances the grid-sampled bumps so the piecewise-linear profile
    // is mass neutral exactly, not just its continuous parent
    RadialProfile p1{grid, {}}, p2{grid, {}};
    p1.values.resize(grid.size());
    p2.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        p1.values[i] = bump(grid[i], c1);
        p2.values[i] = bump(grid[i], c2);
    }
    double m1 = p1.integral();
    double m2 = p2.integral();
    if (m2 == 0.0) throw DomainError("make_bump_pair: second bump misses the grid");
    double gamma = m1 / m2;
    RadialProfile phi;
    phi.grid = grid;
    phi.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        phi.values[i] = amplitude * (p1.values[i] - gamma * p2.values[i]);
    return phi;
}

}  // namespace mondeq
