#include <doctest.h>

#include <cmath>

#include "mondeq/common.hpp"
#include "mondeq/interpolation.hpp"

using namespace mondeq;

TEST_SUITE_BEGIN("interpolation");

TEST_CASE("lambda values for both families") {
    auto sqrt_f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    CHECK(sqrt_f(1.0) == doctest::Approx(1.0));
    CHECK(sqrt_f(4.0) == doctest::Approx(0.5));

    auto simple = InterpolationFunction::make(LambdaFamily::Simple, 1.0);
    CHECK(simple(4.0 / 3.0) == doctest::Approx(0.5));

    CHECK_THROWS_AS(sqrt_f(0.0), DomainError);
    CHECK_THROWS_AS(sqrt_f(-1.0), DomainError);
}

TEST_CASE("bound constants") {
    auto sqrt_f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    CHECK(sqrt_f.lambda1 == doctest::Approx(1.0));
    CHECK(sqrt_f.lambda2 == doctest::Approx(1.0));
    auto simple = InterpolationFunction::make(LambdaFamily::Simple, 1.0);
    CHECK(simple.lambda1 == doctest::Approx(std::sqrt(1.25) - 0.5));
    CHECK(simple.lambda2 == doctest::Approx(1.0));
}

TEST_CASE("Q closed form for the Sqrt family") {
    QKernel q{InterpolationFunction::make(LambdaFamily::Sqrt, 1.0), 1e-10};
    CHECK(q(0.0) == 0.0);
    CHECK(q(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(q(4.0) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(q(-0.5), DomainError);
}

TEST_CASE("Q closed form matches quadrature on 100 points") {
    QKernel q{InterpolationFunction::make(LambdaFamily::Sqrt, 1.0), 1e-10};
    for (int i = 1; i <= 100; ++i) {
        double v = 1e-3 * std::pow(1e6, i / 100.0);
        CHECK(q.by_quadrature(v) == doctest::Approx(q(v)).epsilon(1e-9));
    }
}

TEST_CASE("Q is nondecreasing and respects the 3/2-power envelopes") {
    for (auto family : {LambdaFamily::Sqrt, LambdaFamily::Simple}) {
        auto f = InterpolationFunction::make(family, 1.0);
        QKernel q{f, 1e-10};
        double prev = 0.0;
        for (int i = 0; i <= 40; ++i) {
            double u = 1e-4 * std::pow(1e6, i / 40.0);
            double qu = q(u);
            CHECK(qu >= prev);
            CHECK(qu <= (2.0 * f.lambda2 / 3.0) * std::pow(u, 1.5) * (1 + 1e-12));
            if (u <= f.small_sigma_threshold())
                CHECK(qu >= (2.0 * f.lambda1 / 3.0) * std::pow(u, 1.5) * (1 - 1e-12));
            prev = qu;
        }
    }
}

TEST_CASE("difference bounds on ordered pairs") {
    // Q(u) - Q(v) <= (2 L2/3)(u^{3/2} - v^{3/2}); reversed with L1 for small u, v
    for (auto family : {LambdaFamily::Sqrt, LambdaFamily::Simple}) {
        auto f = InterpolationFunction::make(family, 1.0);
        QKernel q{f, 1e-10};
        const double c2 = 2.0 * f.lambda2 / 3.0;
        const double c1 = 2.0 * f.lambda1 / 3.0;
        int pairs = 0;
        for (int i = 0; i < 33 && pairs < 1000; ++i) {
            double u = 1e-3 * std::pow(1e5, i / 32.0);
            for (int j = 0; j <= i; ++j, ++pairs) {
                double v = 1e-3 * std::pow(1e5, j / 32.0);
                double lhs = q(u) - q(v);
                double env = std::pow(u, 1.5) - std::pow(v, 1.5);
                CHECK(lhs <= c2 * env + 1e-12);
                if (u <= f.small_sigma_threshold()) CHECK(lhs >= c1 * env - 1e-12);
            }
        }
        CHECK(pairs >= 500);
    }
}

TEST_CASE("lambda monotone nonincreasing over 16 decades") {
    for (auto family : {LambdaFamily::Sqrt, LambdaFamily::Simple}) {
        auto f = InterpolationFunction::make(family, 1.0);
        double prev = f(1e-8);
        for (int i = 1; i <= 200; ++i) {
            double sigma = 1e-8 * std::pow(1e16, i / 200.0);
            double cur = f(sigma);
            CHECK(cur <= prev);
            prev = cur;
        }
        CHECK(f(1e8) < 1e-3);
    }
}

TEST_CASE("Hoelder constant: hand cases and sampling stability") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    // u = 0, v = e1: |0 - lambda(1) e1| / 1 = 1
    CHECK(f.force_factor(1.0) == doctest::Approx(1.0));
    FittedConstant c1 = check_hoelder(f, 10000, 7);
    FittedConstant c2 = check_hoelder(f, 20000, 8);
    CHECK(c1.value >= 1.0);  // the hand case is a lower bound for the max
    CHECK(std::isfinite(c1.value));
    CHECK(std::abs(c2.value / c1.value - 1.0) < 0.2);
    CHECK_THROWS_AS(check_hoelder(f, 1, 7), DomainError);
}

TEST_CASE("Q Taylor constant: hand case and sampling stability") {
    QKernel q{InterpolationFunction::make(LambdaFamily::Sqrt, 1.0), 1e-10};
    // v = 0, u = e1: |Q(1) - 0 - 0| / 1 = 2/3
    CHECK(q(1.0) == doctest::Approx(2.0 / 3.0));
    FittedConstant c1 = check_q_taylor(q, 10000, 9);
    FittedConstant c2 = check_q_taylor(q, 20000, 10);
    CHECK(c1.value >= 2.0 / 3.0 - 1e-12);
    CHECK(std::isfinite(c1.value));
    CHECK(std::abs(c2.value / c1.value - 1.0) < 0.2);
}

TEST_SUITE_END();
