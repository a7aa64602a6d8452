#include "mondeq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mondeq/common.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

namespace {

struct State {
    double u;
    double m;
};

struct Deriv {
    double du;
    double dm;
};

struct OdeNode {
    double r;
    State y;
    Deriv d;
};

class ShootRhs {
public:
    ShootRhs(const AnsatzFunction& ansatz, const InterpolationFunction& lambda)
        : ansatz_(ansatz), lambda_(lambda) {}

    Deriv operator()(double r, const State& y) const {
        double m = std::max(y.m, 0.0);
        double gN = m / (r * r);
        double rho = ansatz_.inverse_derivative(y.u);
        return {-(gN + lambda_.force_factor(gN)), 4.0 * pi * r * r * rho};
    }

private:
    const AnsatzFunction& ansatz_;
    const InterpolationFunction& lambda_;
};

// Cash-Karp embedded 4(5) pair
struct StepResult {
    State y5;
    double err_u;
    double err_m;
};

StepResult cash_karp_step(const ShootRhs& rhs, double r, const State& y, const Deriv& k1,
                          double h) {
    static const double b21 = 1.0 / 5.0;
    static const double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static const double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
    static const double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0, b53 = -70.0 / 27.0,
                        b54 = 35.0 / 27.0;
    static const double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                        b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static const double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                        c6 = 512.0 / 1771.0;
    static const double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                        d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                        d6 = c6 - 0.25;

    State y2{y.u + h * b21 * k1.du, y.m + h * b21 * k1.dm};
    Deriv k2 = rhs(r + h / 5.0, y2);
    State y3{y.u + h * (b31 * k1.du + b32 * k2.du), y.m + h * (b31 * k1.dm + b32 * k2.dm)};
    Deriv k3 = rhs(r + 3.0 * h / 10.0, y3);
    State y4{y.u + h * (b41 * k1.du + b42 * k2.du + b43 * k3.du),
             y.m + h * (b41 * k1.dm + b42 * k2.dm + b43 * k3.dm)};
    Deriv k4 = rhs(r + 3.0 * h / 5.0, y4);
    State y5{y.u + h * (b51 * k1.du + b52 * k2.du + b53 * k3.du + b54 * k4.du),
             y.m + h * (b51 * k1.dm + b52 * k2.dm + b53 * k3.dm + b54 * k4.dm)};
    Deriv k5 = rhs(r + h, y5);
    State y6{y.u + h * (b61 * k1.du + b62 * k2.du + b63 * k3.du + b64 * k4.du + b65 * k5.du),
             y.m + h * (b61 * k1.dm + b62 * k2.dm + b63 * k3.dm + b64 * k4.dm + b65 * k5.dm)};
    Deriv k6 = rhs(r + 7.0 * h / 8.0, y6);

    StepResult out;
    out.y5 = State{y.u + h * (c1 * k1.du + c3 * k3.du + c4 * k4.du + c6 * k6.du),
                   y.m + h * (c1 * k1.dm + c3 * k3.dm + c4 * k4.dm + c6 * k6.dm)};
    out.err_u = h * (d1 * k1.du + d3 * k3.du + d4 * k4.du + d5 * k5.du + d6 * k6.du);
    out.err_m = h * (d1 * k1.dm + d3 * k3.dm + d4 * k4.dm + d5 * k5.dm + d6 * k6.dm);
    return out;
}

double hermite(double r, const OdeNode& a, const OdeNode& b, bool mass) {
    double h = b.r - a.r;
    double t = (r - a.r) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1;
    double h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2;
    double h11 = t3 - t2;
    if (mass)
        return h00 * a.y.m + h10 * h * a.d.dm + h01 * b.y.m + h11 * h * b.d.dm;
    return h00 * a.y.u + h10 * h * a.d.du + h01 * b.y.u + h11 * h * b.d.du;
}

}  // namespace

double EquilibriumModel::euler_lagrange_residual(double interior_fraction) const {
    const auto& grid = density.grid();
    const double r_lim = support_radius * interior_fraction;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > r_lim) break;
        double rho = density.rho()[i];
        if (rho <= 0.0) continue;
        double res = std::abs(ansatz.derivative(rho) + fields.UM()[i] - cutoff_energy);
        worst = std::max(worst, res);
    }
    return worst / std::abs(cutoff_energy);
}

EquilibriumModel shoot(const AnsatzFunction& ansatz, double s, const InterpolationFunction& f,
                       const ShootOptions& opts) {
    if (!(s > 0.0)) throw DomainError("shoot: central density must be positive");
    if (ansatz.kind != AnsatzKind::FluidPsi) throw DomainError("shoot: needs a fluid ansatz");

    const ShootRhs rhs(ansatz, f);
    const double u0 = ansatz.derivative(s);
    const double A = 4.0 * pi * s / 3.0;

    // series start: u(r1) = u0 - int_0^{r1} (1 + lambda(A r)) A r dr, M = A r1^3;
    // the integral is taken in t = sqrt(r) because lambda(A r) A r ~ sqrt(r)
    double r1 = 1e-8 * std::min({1.0, std::cbrt(s), 1.0 / std::cbrt(s)});
    double du_start = integrate_gauss(
        [&](double t) {
            double rr = t * t;
            double gn = A * rr;
            return 2.0 * t * (gn + f.force_factor(gn));
        },
        0.0, std::sqrt(r1), 16);

    std::vector<OdeNode> nodes;
    nodes.reserve(512);
    double r = r1;
    State y{u0 - du_start, A * r1 * r1 * r1};
    Deriv d = rhs(r, y);
    nodes.push_back({r, y, d});

    const double rel = opts.rel_tol;
    const double u_floor = 1e-13 * u0;
    double h = r1;  // first step; controller adapts quickly
    double R_s = 0.0;

    while (true) {
        if (r > opts.r_max)
            throw NoCompactSupportError(
                "shoot: density did not reach zero before r_max = " + std::to_string(opts.r_max) +
                " (s = " + std::to_string(s) + ")");
        StepResult step = cash_karp_step(rhs, r, y, d, h);
        double tol_u = rel * std::max(std::abs(y.u), u_floor) + 1e-300;
        double tol_m = rel * std::max(std::abs(y.m), 1e-30 * A) + 1e-300;
        double err = std::max(std::abs(step.err_u) / tol_u, std::abs(step.err_m) / tol_m);
        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
            continue;
        }
        if (step.y5.u < 0.0) {
            // surface inside this step: bisect the step length
            double lo = 0.0, hi = h;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                StepResult trial = cash_karp_step(rhs, r, y, d, mid);
                if (trial.y5.u < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    if (trial.y5.u <= u_floor) {
                        hi = mid;
                        break;
                    }
                }
                if (hi - lo <= 1e-15 * h) break;
            }
            double h_surf = 0.5 * (lo + hi);
            StepResult fin = cash_karp_step(rhs, r, y, d, h_surf);
            r += h_surf;
            y = fin.y5;
            if (y.u < 0.0) y.u = 0.0;
            d = rhs(r, y);
            nodes.push_back({r, y, d});
            R_s = r;
            break;
        }
        r += h;
        y = step.y5;
        d = rhs(r, y);
        nodes.push_back({r, y, d});
        h *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
    }

    // resample onto the model grid with cubic Hermite dense output
    std::vector<double> grid;
    if (opts.grid_outer > R_s) {
        grid = make_radial_grid(opts.grid_outer, opts.grid_uniform, opts.grid_geo);
        auto it = std::lower_bound(grid.begin(), grid.end(), R_s);
        if (it == grid.end() || *it != R_s) grid.insert(it, R_s);
    } else {
        grid = make_radial_grid(R_s, opts.grid_uniform, opts.grid_geo);
    }
    std::vector<double> rho(grid.size(), 0.0);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double rr = grid[i];
        if (rr >= R_s) continue;  // vacuum beyond the surface
        if (rr <= nodes.front().r) {
            // inside the series-start region
            double du = integrate_gauss(
                [&](double t) {
                    double r2 = t * t;
                    double gn = A * r2;
                    return 2.0 * t * (gn + f.force_factor(gn));
                },
                0.0, std::sqrt(rr), 16);
            rho[i] = ansatz.inverse_derivative(u0 - du);
            continue;
        }
        while (seg + 2 < nodes.size() && nodes[seg + 1].r < rr) ++seg;
        double u = hermite(rr, nodes[seg], nodes[seg + 1], false);
        rho[i] = ansatz.inverse_derivative(u);
    }

    EquilibriumModel model;
    model.density = RadialDensity(std::move(grid), std::move(rho));
    model.fields = potentials(model.density, f, opts.normalization);
    model.ansatz = ansatz;
    model.lambda = f;
    model.central_value = s;
    model.support_radius = R_s;
    model.total_mass = nodes.back().y.m;
    model.cutoff_energy = model.fields.UM_at(R_s);
    return model;
}

PowerLawFit fit_power_law(const std::vector<MassCurvePoint>& pts, double s_lo, double s_hi,
                          double pinned_exponent) {
    PowerLawFit fit;
    fit.s_lo = s_lo;
    fit.s_hi = s_hi;
    fit.pinned_exponent = pinned_exponent;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, spin = 0;
    int n = 0;
    for (const auto& p : pts) {
        if (p.s < s_lo * (1 - 1e-12) || p.s > s_hi * (1 + 1e-12)) continue;
        double x = std::log(p.s), yv = std::log(p.mass);
        sx += x;
        sy += yv;
        sxx += x * x;
        sxy += x * yv;
        spin += yv - pinned_exponent * x;
        ++n;
    }
    fit.points = n;
    if (n >= 2) {
        double denom = n * sxx - sx * sx;
        fit.exponent = (n * sxy - sx * sy) / denom;
        fit.coefficient = std::exp((sy - fit.exponent * sx) / n);
        fit.pinned_coefficient = std::exp(spin / n);
    }
    return fit;
}

bool MassCurve::strictly_increasing() const {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].mass > points[i - 1].mass)) return false;
    return true;
}

MassCurve mass_curve(const AnsatzFunction& ansatz, const InterpolationFunction& f, double s_min,
                     double s_max, int points, const ShootOptions& opts) {
    if (!(s_min > 0.0) || !(s_max > s_min))
        throw DomainError("mass_curve: need 0 < s_min < s_max");
    if (points < 2) throw DomainError("mass_curve: need at least 2 points");
    MassCurve curve;
    curve.points.reserve(points);
    for (int i = 0; i < points; ++i) {
        double s = s_min * std::pow(s_max / s_min, static_cast<double>(i) / (points - 1));
        try {
            EquilibriumModel m = shoot(ansatz, s, f, opts);
            curve.points.push_back({s, m.total_mass, m.support_radius});
        } catch (const std::exception& e) {
            throw ToleranceError("mass_curve: solver failed at s = " + std::to_string(s) + ": " +
                                     e.what(),
                                 s, 0.0);
        }
    }
    curve.fit_deep = fit_power_law(curve.points, s_min, curve.deep_threshold, 2.0);
    curve.fit_newton = fit_power_law(curve.points, curve.newton_threshold, s_max, 1.0);
    return curve;
}

EquilibriumModel solve_for_mass(const AnsatzFunction& ansatz, const InterpolationFunction& f,
                                double target_mass, const MassBracket& bracket,
                                const ShootOptions& opts) {
    if (!(target_mass > 0.0)) throw DomainError("solve_for_mass: target mass must be positive");
    double s_lo = bracket.s_lo, s_hi = bracket.s_hi;
    EquilibriumModel lo = shoot(ansatz, s_lo, f, opts);
    EquilibriumModel hi = shoot(ansatz, s_hi, f, opts);
    if (!(lo.total_mass <= target_mass && target_mass <= hi.total_mass)) {
        throw BracketError("solve_for_mass: bracket [" + std::to_string(s_lo) + ", " +
                           std::to_string(s_hi) + "] gives masses [" +
                           std::to_string(lo.total_mass) + ", " + std::to_string(hi.total_mass) +
                           "], target " + std::to_string(target_mass) +
                           "; widen the bracket or scan with mass-curve first");
    }
    if (std::abs(lo.total_mass - target_mass) <= 1e-8 * target_mass) return lo;
    if (std::abs(hi.total_mass - target_mass) <= 1e-8 * target_mass) return hi;

    double a = std::log(s_lo), b = std::log(s_hi);
    double fa = std::log(lo.total_mass / target_mass);
    double fb = std::log(hi.total_mass / target_mass);
    EquilibriumModel best = std::move(hi);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double sec = (fb != fa) ? b - fb * (b - a) / (fb - fa) : mid;
        double x = (sec > std::min(a, b) && sec < std::max(a, b)) ? sec : mid;
        EquilibriumModel trial = shoot(ansatz, std::exp(x), f, opts);
        double fx = std::log(trial.total_mass / target_mass);
        best = std::move(trial);
        if (std::abs(best.total_mass - target_mass) <= 1e-8 * target_mass) return best;
        if (fa * fx < 0.0) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    return best;
}

}  // namespace mondeq
