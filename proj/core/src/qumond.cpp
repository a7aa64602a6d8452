#include "mondeq/qumond.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "mondeq/common.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

namespace {

/// inner angular integral int_{-1}^{1} (r mu - s) / (r^2 + s^2 - 2 r s mu)^{3/2} dmu,
/// substituted mu = 1 - u^2 so the integrand is smooth through y = x (s = r)
double angular_kernel(double r, double s, int panel_splits, int order) {
    const double B = 2.0 * r * s;
    const double d2 = (r - s) * (r - s);
    auto f = [&](double u) {
        double u2 = u * u;
        double base = d2 + B * u2;
        return 2.0 * u * (r - s - r * u2) / (base * std::sqrt(base));
    };
    // geometric panels toward u = 0 resolve the |r - s| boundary layer
    const double u_max = std::sqrt(2.0);
    double sum = 0.0;
    double hi = u_max;
    for (int j = 0; j < panel_splits; ++j) {
        double lo = (j + 1 == panel_splits) ? 0.0 : hi * 0.5;
        sum += integrate_gauss(f, lo, hi, order);
        hi = lo;
    }
    return sum;
}

double probe_one(const RadialDensity& d, const InterpolationFunction& f, double r, int level) {
    const double rim = d.grid().back();
    const double s_max = std::max(2.0 * r, 2.0 * rim);
    const int mu_panels = 20 + 4 * level;
    const int order = 8;
    const int diag_splits = 12 + 2 * level;
    const int refine = 1 << level;

    auto h_of = [&](double s) { return f.force_factor(d.gN_at(s)); };

    // panel edges: density grid nodes, log-spaced vacuum edges, diagonal splits at s = r
    std::vector<double> edges;
    for (double g : d.grid())
        if (g > 0.0 && g < s_max) edges.push_back(g);
    if (rim < s_max) {
        int n_log = 48 * refine;
        for (int i = 1; i <= n_log; ++i)
            edges.push_back(rim * std::pow(s_max / rim, static_cast<double>(i) / n_log));
    }
    if (r > 0.0 && r < s_max) {
        for (int j = 0; j <= diag_splits; ++j) {
            double delta = r * std::pow(0.5, j);
            if (r - delta > 0.0) edges.push_back(r - delta);
            if (r + delta < s_max) edges.push_back(r + delta);
        }
        edges.push_back(r);
    }
    edges.push_back(s_max);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (refine > 1) {
        std::vector<double> fine;
        fine.reserve(edges.size() * refine);
        double prev = 0.0;
        for (double e : edges) {
            for (int j = 1; j <= refine; ++j) fine.push_back(prev + (e - prev) * j / refine);
            prev = e;
        }
        edges.swap(fine);
    }

    auto s_integrand = [&](double s) {
        double k = angular_kernel(r, s, mu_panels, order) + 2.0 / (s * s);
        return h_of(s) * s * s * k;
    };

    double total = 0.0;
    // first panel in t = sqrt(s): h(s) is O(sqrt(s)) near the center
    double s_first = edges.front();
    total += integrate_gauss([&](double t) { return 2.0 * t * s_integrand(t * t); }, 0.0,
                             std::sqrt(s_first), 16);
    double prev = s_first;
    for (std::size_t i = 1; i < edges.size(); ++i) {
        total += integrate_gauss(s_integrand, prev, edges[i], order);
        prev = edges[i];
    }
    return 0.5 * total;
}

}  // namespace

std::vector<double> qumond_direct(const RadialDensity& d, const InterpolationFunction& f,
                                  const std::vector<double>& probe_radii,
                                  const QumondOptions& opts) {
    for (double r : probe_radii)
        if (!(r >= 0.0) || !std::isfinite(r))
            throw DomainError("qumond_direct: probe radii must be finite and nonnegative");

    std::vector<double> out(probe_radii.size(), 0.0);
    auto eval_one = [&](std::size_t idx) {
        double r = probe_radii[idx];
        if (r == 0.0) {
            out[idx] = 0.0;  // kernel cancels identically at x = 0
            return;
        }
        double prev = probe_one(d, f, r, 0);
        for (int level = 1; level <= opts.max_refine; ++level) {
            double cur = probe_one(d, f, r, level);
            double err = std::abs(cur - prev);
            if (err <= opts.rel_tol * std::max(std::abs(cur), 1e-300)) {
                out[idx] = cur;
                return;
            }
            prev = cur;
            if (level == opts.max_refine)
                throw ToleranceError("qumond_direct: quadrature did not converge at r = " +
                                         std::to_string(r),
                                     cur, err);
        }
        out[idx] = prev;
    };

    if (opts.threads > 1 && probe_radii.size() > 1) {
        std::vector<std::thread> pool;
        std::size_t stride = (probe_radii.size() + opts.threads - 1) / opts.threads;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int t = 0; t < opts.threads; ++t) {
            std::size_t begin = t * stride;
            std::size_t end = std::min(probe_radii.size(), begin + stride);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) eval_one(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    } else {
        for (std::size_t i = 0; i < probe_radii.size(); ++i) eval_one(i);
    }
    return out;
}

}  // namespace mondeq
