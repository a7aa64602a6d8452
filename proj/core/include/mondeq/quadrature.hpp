#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mondeq {

/// Gauss-Legendre rule on [-1, 1]; nodes/weights computed once per order and cached.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int order);

/// fixed-order Gauss-Legendre integral of f over [a, b]
template <typename F>
double integrate_gauss(F&& f, double a, double b, int order = 8) {
    const GaussRule& rule = gauss_rule(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

/// adaptive bisection with an embedded low/high order pair as error estimate
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 0.0, int max_depth = 48);

/// sum of fixed-order Gauss integrals over the panels [edges[0], edges[1]], ...
double integrate_panels(const std::function<double(double)>& f, std::span<const double> edges,
                        int order = 8);

/// brent-style bracketed root solve for continuous f with f(a) f(b) <= 0
double find_root(const std::function<double(double)>& f, double a, double b,
                 double x_tol, int max_iter = 200);

}  // namespace mondeq
