#include <doctest.h>

#include <cmath>

#include "mondeq/common.hpp"
#include "mondeq/field.hpp"
#include "mondeq/qumond.hpp"
#include "mondeq/radial.hpp"

using namespace mondeq;

TEST_SUITE_BEGIN("radial_field");

TEST_CASE("cumulative mass of the uniform unit ball") {
    RadialDensity d = uniform_ball(1.0, 1.0);
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.mass_at(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.mass_at(0.5) == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(d.mass_cum().front() == 0.0);

    RadialDensity copy = cumulative_mass(d);
    CHECK(copy.total_mass() == doctest::Approx(d.total_mass()));
}

TEST_CASE("zero density has zero mass everywhere") {
    std::vector<double> grid = make_radial_grid(2.0, 64);
    std::vector<double> rho(grid.size(), 0.0);
    RadialDensity d(std::move(grid), std::move(rho));
    CHECK(d.total_mass() == 0.0);
    CHECK(d.mass_at(1.3) == 0.0);
    CHECK(d.support_radius() == 0.0);
}

TEST_CASE("negative density is rejected") {
    std::vector<double> grid = make_radial_grid(1.0, 64);
    std::vector<double> rho(grid.size(), 1.0);
    rho[3] = -1e-9;
    CHECK_THROWS_AS(RadialDensity(std::move(grid), std::move(rho)), ValidationError);
}

TEST_CASE("newtonian field: shell theorem values") {
    RadialDensity d = uniform_ball(1.0, 1.0);
    CHECK(d.gN_at(2.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(d.gN_at(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(d.gN_at(0.5) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(d.gN_at(0.0) == 0.0);
    std::vector<double> g = newtonian_field(d);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mond field values") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    RadialDensity d = uniform_ball(1.0, 1.0);
    std::vector<double> gM = mond_field(d, f);
    // gN = 1 at the rim: gM = 1 + 1 = 2
    CHECK(gM.back() == doctest::Approx(2.0).epsilon(1e-13));
    // deep-MOND dominance at small gN
    CHECK(f.force_factor(1e-6) + 1e-6 == doctest::Approx(1.001e-3).epsilon(1e-3));
    // gN = 1/4 somewhere: gM = 1/4 + 1/2
    CHECK(0.25 + f.force_factor(0.25) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("potentials of the uniform unit ball") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    RadialDensity d = uniform_ball(1.0, 1.0, 2048);
    FieldProfile p = potentials(d, f);

    // closed forms: UN(r) = -(3 - r^2)/2 inside, Ulam(r) = (2/3) r^{3/2}
    CHECK(p.UN_at(0.0) == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(p.UN_at(0.5) == doctest::Approx(-1.375).epsilon(1e-10));
    CHECK(p.Ulam_at(0.5) == doctest::Approx((2.0 / 3.0) * std::pow(0.5, 1.5)).epsilon(1e-10));
    CHECK(p.UM_at(0.5) == doctest::Approx(-1.375 + 0.23570226).epsilon(1e-8));

    // exterior difference: UM(e R0) - UM(R0) = (1 - 1/e) + 1
    double lhs = p.UM_at(std::exp(1.0)) - p.UM_at(1.0);
    CHECK(lhs == doctest::Approx(1.0 - std::exp(-1.0) + 1.0).epsilon(1e-10));
    // trivially zero difference
    CHECK(p.UM_at(0.7) - p.UM_at(0.7) == 0.0);

    // UM nondecreasing
    double prev = p.UM().front();
    for (double v : p.UM()) {
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    // gM >= gN pointwise
    for (std::size_t i = 0; i < p.grid().size(); ++i) CHECK(p.gM()[i] >= p.gN()[i]);
}

TEST_CASE("interior potential value against a 10x-resolution reference") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    // smooth non-uniform profile
    auto make = [&](int n) {
        std::vector<double> grid = make_radial_grid(1.0, n, 48);
        std::vector<double> rho(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            rho[i] = (1.0 + 0.5 * std::cos(3.0 * grid[i])) * (1.0 - grid[i] * grid[i]);
        rho.back() = 0.0;
        return RadialDensity(std::move(grid), std::move(rho));
    };
    FieldProfile coarse = potentials(make(512), f);
    FieldProfile fine = potentials(make(5120), f);
    CHECK(coarse.UM_at(0.5) == doctest::Approx(fine.UM_at(0.5)).epsilon(1e-6));
}

TEST_CASE("potential normalizations differ by constants only") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    RadialDensity d = uniform_ball(2.0, 1.5, 512);
    FieldProfile a = potentials(d, f, PotentialNormalization::NewtonianAtInfinity);
    FieldProfile b = potentials(d, f, PotentialNormalization::SurfaceZero);
    FieldProfile c = potentials(d, f, PotentialNormalization::CenterZero);
    CHECK(std::abs(b.UM_at(1.5)) < 1e-12);
    CHECK(std::abs(c.UM_at(0.0)) < 1e-12);
    double shift_ab = a.UM_at(0.7) - b.UM_at(0.7);
    CHECK(a.UM_at(1.2) - b.UM_at(1.2) == doctest::Approx(shift_ab).epsilon(1e-12));
}

TEST_CASE("zero total mass: Ulam is identically zero") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    std::vector<double> grid = make_radial_grid(1.0, 64);
    std::vector<double> rho(grid.size(), 0.0);
    RadialDensity d(std::move(grid), std::move(rho));
    FieldProfile p = potentials(d, f);
    CHECK(p.Ulam_at(0.5) == 0.0);
    CHECK(p.Ulam_at(5.0) == 0.0);
}

TEST_CASE("shell-theorem bounds outside the support") {
    // appendix bounds: sqrt(1 - R^2/r^2) M/(r+R)^2 <= gN(r) <= M/(r-R)^2
    RadialDensity d = uniform_ball(1.7, 0.8, 256);
    double r_sup = d.support_radius();
    double m = d.total_mass();
    for (int i = 1; i <= 50; ++i) {
        double r = r_sup * (1.0 + 0.15 * i);
        double g = d.gN_at(r);
        CHECK(g <= m / ((r - r_sup) * (r - r_sup)) * (1 + 1e-12));
        CHECK(g >= std::sqrt(1.0 - r_sup * r_sup / (r * r)) * m / ((r + r_sup) * (r + r_sup)) *
                       (1 - 1e-12));
    }
}

TEST_CASE("qumond direct quadrature") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    RadialDensity d = uniform_ball(1.0, 1.0, 256);
    FieldProfile p = potentials(d, f);

    SUBCASE("x = 0 vanishes by construction") {
        auto v = qumond_direct(d, f, {0.0});
        CHECK(v[0] == 0.0);
    }
    SUBCASE("interior probe matches the radial integral") {
        auto v = qumond_direct(d, f, {0.7});
        CHECK(v[0] == doctest::Approx(p.Ulam_at(0.7)).epsilon(1e-3));
        // closed form for the uniform ball: (2/3) r^{3/2}
        CHECK(v[0] == doctest::Approx((2.0 / 3.0) * std::pow(0.7, 1.5)).epsilon(1e-3));
    }
    SUBCASE("exterior probe matches Ulam(R0) + sqrt(M) log(r/R0)") {
        auto v = qumond_direct(d, f, {5.0});
        CHECK(v[0] == doctest::Approx(2.0 / 3.0 + std::log(5.0)).epsilon(1e-3));
    }
    SUBCASE("negative probe radius is rejected") {
        CHECK_THROWS_AS(qumond_direct(d, f, {-1.0}), DomainError);
    }
    SUBCASE("threads do not change results") {
        QumondOptions one, four;
        four.threads = 4;
        auto a = qumond_direct(d, f, {0.3, 0.9, 2.0}, one);
        auto b = qumond_direct(d, f, {0.3, 0.9, 2.0}, four);
        for (int i = 0; i < 3; ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("grid refinement: UM converges at 2nd order") {
    auto f = InterpolationFunction::make(LambdaFamily::Sqrt, 1.0);
    auto um = [&](int n) {
        std::vector<double> grid = make_radial_grid(1.0, n, 32);
        std::vector<double> rho(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) rho[i] = 1.0 - grid[i] * grid[i];
        rho.back() = 0.0;
        RadialDensity d(std::move(grid), std::move(rho));
        return potentials(d, f).UM_at(0.55);
    };
    double ref = um(8192);
    double e1 = std::abs(um(256) - ref);
    double e2 = std::abs(um(512) - ref);
    double order = std::log2(e1 / e2);
    CHECK(order > 1.6);
    CHECK(order < 2.6);
}

TEST_SUITE_END();
