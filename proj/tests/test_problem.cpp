#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mqra/odesolve.hpp"
#include "mqra/problem.hpp"

using namespace mqra;

TEST_CASE("family validation") {
    CHECK_NOTHROW(ProblemFamily(2, 4));
    CHECK_NOTHROW(ProblemFamily(4, 10));
    CHECK_THROWS_AS(ProblemFamily(3, 4), std::invalid_argument);   // odd base
    CHECK_THROWS_AS(ProblemFamily(2, 5), std::invalid_argument);   // odd perturbation
    CHECK_THROWS_AS(ProblemFamily(4, 4), std::invalid_argument);   // not b > a
    CHECK_THROWS_AS(ProblemFamily(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(ProblemFamily(-2, 4), std::invalid_argument);
}

TEST_CASE("reduce_potential scalings") {
    const PotentialScaling s1 = reduce_potential(1.0, 0.5, 2, 4);
    CHECK(s1.lambda == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s1.x_scale == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s1.e_scale == doctest::Approx(1.0).epsilon(1e-15));

    // harmonic with doubled frequency: E_physical = 2 (2n+1)
    const PotentialScaling s2 = reduce_potential(4.0, 0.0, 2, 4);
    CHECK(s2.lambda == 0.0);
    CHECK(s2.e_scale == doctest::Approx(2.0).epsilon(1e-15));

    const PotentialScaling s3 = reduce_potential(2.0, 3.0, 2, 6);
    CHECK(s3.lambda == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(s3.e_scale == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    CHECK_THROWS_AS(reduce_potential(0.0, 1.0, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(reduce_potential(-1.0, 1.0, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(reduce_potential(1.0, -1.0, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(reduce_potential(1.0, 1.0, 3, 5), std::invalid_argument);
}

TEST_CASE("reduce_potential round trip against the shooting oracle") {
    // solve A x^2 + B x^6 directly and through the reduced problem
    const double A = 2.0, B = 3.0;
    const PotentialScaling s = reduce_potential(A, B, 2, 6);
    const double e_direct = solve_eigen(power_potential(2, A, 6, B), 0).energy;
    const double e_reduced = solve_eigen(power_potential(2, 1.0, 6, s.lambda), 0).energy;
    CHECK(std::abs(e_direct - s.e_scale * e_reduced) <= 1e-8 * e_direct);
}

TEST_CASE("asymptotic_structure worked families") {
    const AsymptoticStructure q = asymptotic_structure(ProblemFamily(2, 4));
    CHECK(q.m == 3);
    CHECK(q.s == 2);
    CHECK(q.exponents[0] == rat(1, 3));
    CHECK(q.exponents[1] == rat(-1, 3));
    CHECK(q.exponents[2] == rat(-1, 1));

    const AsymptoticStructure s = asymptotic_structure(ProblemFamily(2, 6));
    CHECK(s.m == 2);
    CHECK(s.s == 1);
    CHECK(s.exponents[0] == rat(1, 4));
    CHECK(s.exponents[1] == rat(-1, 4));

    const AsymptoticStructure g = asymptotic_structure(ProblemFamily(4, 6));
    CHECK(g.m == 4);
    CHECK(g.s == 3);
    CHECK(g.exponents[0] == rat(1, 4));
    CHECK(g.exponents[1] == rat(-1, 2));
    CHECK(g.exponents[2] == rat(-5, 4));
    CHECK(g.exponents[3] == rat(-2, 1));
}

TEST_CASE("piece-exponent identities hold in exact arithmetic") {
    for (auto [a, b] : {std::pair{2, 4}, {2, 6}, {4, 6}, {2, 8}, {4, 10}, {6, 8}}) {
        const ProblemFamily fam(a, b);
        const AsymptoticStructure st = asymptotic_structure(fam);
        const Rat step = rat(a + 2, b + 2);
        CHECK(st.exponents[0] == rat(2, b + 2));
        for (std::size_t j = 0; j + 1 < st.exponents.size(); ++j) {
            CHECK(st.exponents[j] - st.exponents[j + 1] == step);
            CHECK(st.exponents[j] > st.exponents[j + 1]);
        }
        CHECK(Rat(st.m) * step == Rat(st.s));
        CHECK(st.m >= 2);
        CHECK(st.s >= 1);
    }
}

TEST_CASE("scale_to_asymptotic") {
    const AsymptoticScaling u = scale_to_asymptotic(1.0, ProblemFamily(2, 4));
    CHECK(u.lambda_tilde == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u.e_tilde_scale == doctest::Approx(1.0).epsilon(1e-15));

    const AsymptoticScaling v = scale_to_asymptotic(8.0, ProblemFamily(2, 6));
    CHECK(v.lambda_tilde == doctest::Approx(std::pow(8.0, -0.5)).epsilon(1e-14));
    CHECK(v.e_tilde_scale == doctest::Approx(std::pow(8.0, 0.25)).epsilon(1e-14));

    CHECK_THROWS_AS(scale_to_asymptotic(0.0, ProblemFamily(2, 4)), std::invalid_argument);

    // monotone decreasing map
    double prev = scale_to_asymptotic(0.01, ProblemFamily(2, 4)).lambda_tilde;
    for (double lam : {0.1, 1.0, 5.0, 50.0, 500.0}) {
        const double cur = scale_to_asymptotic(lam, ProblemFamily(2, 4)).lambda_tilde;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("asymptotic frame consistency against shooting") {
    // E(8) for x^2 + 8 x^6 equals e_tilde_scale * E~(lambda_tilde)
    const ProblemFamily fam(2, 6);
    const AsymptoticScaling sc = scale_to_asymptotic(8.0, fam);
    const double e_direct = solve_eigen(power_potential(2, 1.0, 6, 8.0), 0).energy;
    ShootingConfig cfg;
    cfg.x_max = 5.0;
    const double e_tilde =
        solve_eigen(power_potential(6, 1.0, 2, sc.lambda_tilde), 0, cfg).energy;
    CHECK(std::abs(e_direct - sc.e_tilde_scale * e_tilde) <= 1e-8 * e_direct);
}

TEST_CASE("reduced problem parity") {
    const ReducedProblem p0(ProblemFamily(2, 4), 1.0, 0);
    CHECK(p0.parity == Parity::Even);
    const ReducedProblem p1(ProblemFamily(2, 4), 1.0, 1);
    CHECK(p1.parity == Parity::Odd);
    CHECK_THROWS_AS(ReducedProblem(ProblemFamily(2, 4), -1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(ReducedProblem(ProblemFamily(2, 4), 1.0, -1), std::invalid_argument);
}
