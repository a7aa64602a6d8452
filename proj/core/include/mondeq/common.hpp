#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mondeq {

/// Input violates a documented precondition (bad argument range, invalid data).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Structured input is inconsistent (mass mismatch, corrupted file, bad config).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or iteration failed to reach its tolerance; carries the best estimate.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double achieved_value, double achieved_error)
        : std::runtime_error(what), value(achieved_value), error(achieved_error) {}
    double value;
    double error;
};

/// A root bracket did not straddle the target; message carries scan hints.
class BracketError : public std::runtime_error {
public:
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

/// Rejection sampling fell below the minimum admissible efficiency.
class SamplerError : public std::runtime_error {
public:
    explicit SamplerError(const std::string& what) : std::runtime_error(what) {}
};

/// The shooting integration ran past r_max without the density reaching zero.
class NoCompactSupportError : public std::runtime_error {
public:
    explicit NoCompactSupportError(const std::string& what) : std::runtime_error(what) {}
};

/// splitmix64-seeded xorshift-free generator: std::mt19937_64 output is
/// standardized, but the distribution adapters are not; map raw draws to
/// doubles ourselves so runs are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::uint64_t state_;
};

inline constexpr double pi = 3.14159265358979323846;

}  // namespace mondeq
