#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqra/series_io.hpp"

using namespace mqra;

TEST_CASE("series data roundtrip") {
    SeriesData s{ProblemFamily(2, 6), 1, ExpansionPoint::finite(0.5),
                 {3.0, 13.125, -2.75e-3}, {}};
    s.meta.x_max = 8.0;
    s.meta.h = 1e-3;
    s.meta.tol_e = 1e-12;
    s.meta.n_terms = 3;
    s.meta.warnings = {"requested beyond budget"};

    const SeriesData back = series_from_json(to_json_string(s));
    CHECK(back.family.a == 2);
    CHECK(back.family.b == 6);
    CHECK(back.level == 1);
    CHECK(back.point.kind == ExpansionPoint::Kind::Finite);
    CHECK(back.point.alpha == 0.5);
    CHECK(back.coefficients == s.coefficients);
    CHECK(back.meta.h == 1e-3);
    CHECK(back.meta.warnings == s.meta.warnings);
}

TEST_CASE("asymptotic point tag") {
    SeriesData s{ProblemFamily(2, 4), 0, ExpansionPoint::asymptotic(), {1.06}, {}};
    const std::string text = to_json_string(s);
    CHECK(text.find("\"asymptotic\"") != std::string::npos);
    CHECK(series_from_json(text).point.kind == ExpansionPoint::Kind::Asymptotic);
}

TEST_CASE("rational series serializes num/den strings") {
    RationalSeries rs;
    rs.level = 0;
    rs.b = 4;
    rs.coefficients = {rat(1), rat(3, 4), rat(-21, 16)};
    rs.polys = {{rat(1)}, {rat(0), rat(0), rat(-3, 8), rat(0), rat(-1, 8)}};
    const std::string text = to_json_string(rs);
    CHECK(text.find("\"3/4\"") != std::string::npos);
    CHECK(text.find("\"-21/16\"") != std::string::npos);
    CHECK(text.find("\"-3/8\"") != std::string::npos);

    // exact documents parse back through the generic reader
    const SeriesData back = series_from_json(text);
    CHECK(back.coefficients[1] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("approximant roundtrip") {
    Approximant ap{.family = ProblemFamily(2, 4), .level = 0, .N = 2, .mu = 2.0};
    ap.structure = asymptotic_structure(ap.family);
    ap.piece_coeffs = {{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, {7.0, 8.0, 9.0}};
    ap.q = {0.5, 0.25};
    ap.constraints = {Constraint::finite(0.0, 0), Constraint::asymptotic(1)};
    ap.residual = 1e-12;

    const std::string text = to_json_string(ap);
    CHECK(text.find("\"1/3\"") != std::string::npos);   // exponent strings
    CHECK(text.find("\"-1/3\"") != std::string::npos);
    CHECK(text.find("\"-1\"") != std::string::npos);

    const Approximant back = approximant_from_json(text);
    CHECK(back.N == 2);
    CHECK(back.mu == 2.0);
    CHECK(back.piece_coeffs == ap.piece_coeffs);
    CHECK(back.q == ap.q);
    REQUIRE(back.constraints.size() == 2);
    CHECK(back.constraints[0] == ap.constraints[0]);
    CHECK(back.constraints[1] == ap.constraints[1]);
    CHECK(evaluate(back, 1.5) == doctest::Approx(evaluate(ap, 1.5)).epsilon(1e-15));
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS(series_from_json("not json"));
    CHECK_THROWS(series_from_json("{}"));
    CHECK_THROWS(approximant_from_json(R"({"family":{"a":2,"b":4},"level":0,"N":3,"mu":2.0,
        "pieces":[{"exponent":"1/3","coeffs":[1,2]}],"q":[1,2,3]})"));
    CHECK_THROWS_AS(rat_parse("1/0x"), std::invalid_argument);
}
