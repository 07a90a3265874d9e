#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mqra/grid.hpp"

using namespace mqra;

TEST_CASE("grid spec validation") {
    CHECK_NOTHROW(GridSpec(8.0, 1e-3));
    CHECK(GridSpec(8.0, 1e-3).points() == 8001);
    CHECK_THROWS_AS(GridSpec(0.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(8.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(8.0005, 1e-3 * 1.0001), std::invalid_argument);
}

TEST_CASE("simpson quadrature on decaying integrands") {
    const GridSpec g(8.0, 1e-3);
    const GridFunction gauss = sample(g, Parity::Even, [](double x) { return std::exp(-x * x); });
    CHECK(quadrature(gauss) == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-10));

    const GridFunction moment =
        sample(g, Parity::Even, [](double x) { return x * x * std::exp(-x * x); });
    CHECK(quadrature(moment) == doctest::Approx(std::sqrt(M_PI) / 4).epsilon(1e-10));
}

TEST_CASE("odd interval count falls back to the 3/8 rule") {
    const GridSpec g(5.555, 1e-3);  // 5555 intervals
    const GridFunction f = sample(g, Parity::Even, [](double x) { return std::exp(-x); });
    CHECK(quadrature(f) == doctest::Approx(1.0 - std::exp(-5.555)).epsilon(1e-12));
}

TEST_CASE("quadrature rejects tiny grids") {
    GridFunction f;
    f.x_max = 1e-3;
    f.h = 1e-3;
    f.values = {1.0, 2.0};
    CHECK_THROWS_AS(quadrature(f), std::invalid_argument);
}

TEST_CASE("weighted inner products") {
    const GridSpec g(8.0, 1e-3);
    const GridFunction psi = sample(g, Parity::Even, [](double x) { return std::exp(-x * x / 2); });
    CHECK(weighted_inner(psi, psi) == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-10));
    CHECK(weighted_inner(psi, psi, 2) == doctest::Approx(std::sqrt(M_PI) / 4).epsilon(1e-10));

    const GridFunction other = sample(GridSpec(6.0, 1e-3), Parity::Even,
                                      [](double x) { return std::exp(-x * x / 2); });
    CHECK_THROWS_AS(weighted_inner(psi, other), std::invalid_argument);
}

TEST_CASE("decay check") {
    const GridSpec g(8.0, 1e-3);
    GridFunction ok = sample(g, Parity::Even, [](double x) { return std::exp(-x * x / 2); });
    CHECK(ok.decays(1e-6));
    GridFunction bad = sample(g, Parity::Even, [](double x) { return 1.0 + 0.0 * x; });
    CHECK_FALSE(bad.decays(1e-6));
}
