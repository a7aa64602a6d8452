#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace mondeq {

enum class LambdaFamily { Sqrt, Simple };

/// MOND interpolation function lambda with its bound constants.
/// Sqrt:   lambda(s) = sqrt(a0/s)                (the deep-MOND form everywhere)
/// Simple: lambda(s) = sqrt(1/4 + a0/s) - 1/2
/// Both satisfy lambda(s) <= Lambda2/sqrt(s) for all s > 0 and
/// lambda(s) >= Lambda1/sqrt(s) for s <= small_sigma_threshold.
struct InterpolationFunction {
    LambdaFamily family = LambdaFamily::Sqrt;
    double a0 = 1.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    static InterpolationFunction make(LambdaFamily family, double a0 = 1.0);

    /// lambda(sigma); sigma must be positive
    double operator()(double sigma) const;

    /// lambda(sigma) * sigma, continuously extended by 0 at sigma = 0
    double force_factor(double sigma) const;

    /// range on which the (Lambda1) lower bound is declared: sigma <= a0
    double small_sigma_threshold() const { return a0; }
};

/// Q(v) = int_0^v lambda(w) w dw; closed form for the Sqrt family,
/// adaptive quadrature (sqrt-substituted, smooth integrand) otherwise.
struct QKernel {
    InterpolationFunction owner;
    double quadrature_tol = 1e-10;

    double operator()(double v) const;
    bool has_closed_form() const { return owner.family == LambdaFamily::Sqrt; }
    /// always evaluates by quadrature, regardless of family
    double by_quadrature(double v) const;
};

struct FittedConstant {
    double value;      // max observed ratio
    int contributing;  // samples with a nonzero denominator
};

/// max over random 3-vector pairs of |lam(|u|)u - lam(|v|)v| / |u-v|^{1/2},
/// magnitudes drawn uniformly in [0, mag_max], isotropic directions
FittedConstant check_hoelder(const InterpolationFunction& f, int samples, std::uint64_t seed,
                             double mag_max = 10.0);

/// max over random pairs of |Q(|u|) - Q(|v|) - lam(|v|) v.(u-v)| / |u-v|^{3/2}
FittedConstant check_q_taylor(const QKernel& q, int samples, std::uint64_t seed,
                              double mag_max = 10.0);

}  // namespace mondeq
