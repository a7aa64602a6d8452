#include "mondeq/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mondeq/common.hpp"

namespace mondeq {

namespace {

GaussRule make_rule(int n) {
    // Newton iteration on Legendre polynomials, symmetric pairs
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

double panel_pair(const std::function<double(double)>& f, double a, double b, double& coarse) {
    coarse = integrate_gauss(f, a, b, 8);
    return integrate_gauss(f, a, b, 16);
}

double adaptive_impl(const std::function<double(double)>& f, double a, double b, double fine,
                     double coarse, double rel_tol, double abs_tol, int depth) {
    double err = std::abs(fine - coarse);
    if (err <= abs_tol || err <= rel_tol * std::abs(fine) || depth <= 0) return fine;
    double mid = 0.5 * (a + b);
    double cl, cr;
    double fl = panel_pair(f, a, mid, cl);
    double fr = panel_pair(f, mid, b, cr);
    return adaptive_impl(f, a, mid, fl, cl, rel_tol, 0.5 * abs_tol, depth - 1) +
           adaptive_impl(f, mid, b, fr, cr, rel_tol, 0.5 * abs_tol, depth - 1);
}

}  // namespace

const GaussRule& gauss_rule(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
    return it->second;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    double coarse;
    double fine = panel_pair(f, a, b, coarse);
    return adaptive_impl(f, a, b, fine, coarse, rel_tol, abs_tol, max_depth);
}

double integrate_panels(const std::function<double(double)>& f, std::span<const double> edges,
                        int order) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i + 1] > edges[i]) sum += integrate_gauss(f, edges[i], edges[i + 1], order);
    return sum;
}

double find_root(const std::function<double(double)>& f, double a, double b, double x_tol,
                 int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw BracketError("find_root: endpoints do not bracket a sign change");
    // bisection with secant acceleration
    for (int i = 0; i < max_iter; ++i) {
        double m = 0.5 * (a + b);
        double s = (fb != fa) ? b - fb * (b - a) / (fb - fa) : m;
        double x = (s > std::min(a, b) && s < std::max(a, b)) ? s : m;
        double fx = f(x);
        if (fx == 0.0 || std::abs(b - a) < x_tol) return x;
        if (fa * fx < 0.0) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace mondeq
