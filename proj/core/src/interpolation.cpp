#include "mondeq/interpolation.hpp"

#include <cmath>

#include "mondeq/common.hpp"
#include "mondeq/quadrature.hpp"

namespace mondeq {

InterpolationFunction InterpolationFunction::make(LambdaFamily family, double a0) {
    if (a0 <= 0.0) throw DomainError("InterpolationFunction: a0 must be positive");
    InterpolationFunction f;
    f.family = family;
    f.a0 = a0;
    if (family == LambdaFamily::Sqrt) {
        f.lambda1 = std::sqrt(a0);
        f.lambda2 = std::sqrt(a0);
    } else {
        // lambda(s) sqrt(s) = sqrt(s/4 + a0) - sqrt(s)/2 decreases in s;
        // tightest Lambda1 on (0, a0] sits at the threshold s = a0
        f.lambda1 = std::sqrt(a0 / 4.0 + a0) - std::sqrt(a0) / 2.0;
        f.lambda2 = std::sqrt(a0);
    }
    return f;
}

double InterpolationFunction::operator()(double sigma) const {
    if (sigma <= 0.0) throw DomainError("lambda: sigma must be positive");
    if (family == LambdaFamily::Sqrt) return std::sqrt(a0 / sigma);
    return std::sqrt(0.25 + a0 / sigma) - 0.5;
}

double InterpolationFunction::force_factor(double sigma) const {
    if (sigma < 0.0) throw DomainError("force_factor: sigma must be nonnegative");
    if (sigma == 0.0) return 0.0;
    if (family == LambdaFamily::Sqrt) return std::sqrt(a0 * sigma);
    // (sqrt(1/4 + a0/s) - 1/2) s, written to avoid cancellation for large s
    return std::sqrt(0.25 * sigma * sigma + a0 * sigma) - 0.5 * sigma;
}

double QKernel::operator()(double v) const {
    if (v < 0.0) throw DomainError("Q: argument must be nonnegative");
    if (v == 0.0) return 0.0;
    if (owner.family == LambdaFamily::Sqrt)
        return (2.0 / 3.0) * std::sqrt(owner.a0) * v * std::sqrt(v);
    return by_quadrature(v);
}

double QKernel::by_quadrature(double v) const {
    if (v < 0.0) throw DomainError("Q: argument must be nonnegative");
    if (v == 0.0) return 0.0;
    // substitute w = t^2: integrand 2 t^3 lambda(t^2) is smooth down to t = 0
    const InterpolationFunction f = owner;
    auto integrand = [&f](double t) { return 2.0 * t * t * t * f(t * t); };
    return integrate_adaptive(integrand, 0.0, std::sqrt(v), quadrature_tol, 0.0);
}

namespace {

struct Vec3 {
    double x, y, z;
};

Vec3 random_vector(Rng& rng, double mag_max) {
    // isotropic direction, magnitude uniform in [0, mag_max]
    double mag = rng.uniform(0.0, mag_max);
    double c = rng.uniform(-1.0, 1.0);
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    double phi = rng.uniform(0.0, 2.0 * pi);
    return {mag * s * std::cos(phi), mag * s * std::sin(phi), mag * c};
}

Vec3 scaled_force(const InterpolationFunction& f, const Vec3& u) {
    double mag = std::sqrt(u.x * u.x + u.y * u.y + u.z * u.z);
    if (mag == 0.0) return {0.0, 0.0, 0.0};
    double factor = f.force_factor(mag) / mag;
    return {factor * u.x, factor * u.y, factor * u.z};
}

}  // namespace

FittedConstant check_hoelder(const InterpolationFunction& f, int samples, std::uint64_t seed,
                             double mag_max) {
    if (samples < 2) throw DomainError("check_hoelder: need at least 2 samples");
    Rng rng(seed);
    FittedConstant out{0.0, 0};
    for (int i = 0; i < samples; ++i) {
        Vec3 u = random_vector(rng, mag_max);
        Vec3 v = random_vector(rng, mag_max);
        double dx = u.x - v.x, dy = u.y - v.y, dz = u.z - v.z;
        double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (dist == 0.0) continue;
        Vec3 fu = scaled_force(f, u);
        Vec3 fv = scaled_force(f, v);
        double num = std::sqrt((fu.x - fv.x) * (fu.x - fv.x) + (fu.y - fv.y) * (fu.y - fv.y) +
                               (fu.z - fv.z) * (fu.z - fv.z));
        double ratio = num / std::sqrt(dist);
        ++out.contributing;
        if (ratio > out.value) out.value = ratio;
    }
    return out;
}

FittedConstant check_q_taylor(const QKernel& q, int samples, std::uint64_t seed, double mag_max) {
    if (samples < 2) throw DomainError("check_q_taylor: need at least 2 samples");
    Rng rng(seed);
    FittedConstant out{0.0, 0};
    for (int i = 0; i < samples; ++i) {
        Vec3 u = random_vector(rng, mag_max);
        Vec3 v = random_vector(rng, mag_max);
        double dx = u.x - v.x, dy = u.y - v.y, dz = u.z - v.z;
        double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (dist == 0.0) continue;
        double mu = std::sqrt(u.x * u.x + u.y * u.y + u.z * u.z);
        double mv = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
        Vec3 fv = scaled_force(q.owner, v);
        double linear = fv.x * dx + fv.y * dy + fv.z * dz;
        double num = std::abs(q(mu) - q(mv) - linear);
        double ratio = num / (dist * std::sqrt(dist));
        ++out.contributing;
        if (ratio > out.value) out.value = ratio;
    }
    return out;
}

}  // namespace mondeq
