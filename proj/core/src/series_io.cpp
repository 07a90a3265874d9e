#include "mqra/series_io.hpp"

#include <json.hpp>

#include <stdexcept>

namespace mqra {

using json = nlohmann::ordered_json;

namespace {

json family_json(const ProblemFamily& fam) { return json{{"a", fam.a}, {"b", fam.b}}; }

ProblemFamily family_from(const json& j) {
    return ProblemFamily(j.at("a").get<int>(), j.at("b").get<int>());
}

json point_json(const ExpansionPoint& p) {
    if (p.kind == ExpansionPoint::Kind::Asymptotic) return json{{"type", "asymptotic"}};
    return json{{"type", "finite"}, {"alpha", p.alpha}};
}

ExpansionPoint point_from(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "asymptotic") return ExpansionPoint::asymptotic();
    if (type == "finite") return ExpansionPoint::finite(j.at("alpha").get<double>());
    throw std::invalid_argument("unknown expansion point type: " + type);
}

json meta_json(const SolverMeta& m) {
    return json{{"x_max", m.x_max},
                {"h", m.h},
                {"tol_e", m.tol_e},
                {"n_terms", m.n_terms},
                {"warnings", m.warnings}};
}

}  // namespace

std::string to_json_string(const SeriesData& s) {
    json j;
    j["family"] = family_json(s.family);
    j["level"] = s.level;
    j["point"] = point_json(s.point);
    j["coefficients"] = s.coefficients;
    j["meta"] = meta_json(s.meta);
    return j.dump(2);
}

std::string to_json_string(const RationalSeries& s) {
    json j;
    j["family"] = json{{"a", 2}, {"b", s.b}};
    j["level"] = s.level;
    j["point"] = json{{"type", "finite"}, {"alpha", 0.0}};
    j["exact"] = true;
    json coeffs = json::array();
    for (const Rat& c : s.coefficients) coeffs.push_back(rat_str(c));
    j["coefficients"] = coeffs;
    json polys = json::array();
    for (const auto& poly : s.polys) {
        json p = json::array();
        for (const Rat& c : poly) p.push_back(rat_str(c));
        polys.push_back(std::move(p));
    }
    j["polys"] = polys;
    return j.dump(2);
}

std::string to_json_string(const Approximant& a) {
    json j;
    j["family"] = family_json(a.family);
    j["level"] = a.level;
    j["N"] = a.N;
    j["mu"] = a.mu;
    json pieces = json::array();
    for (int p = 0; p < a.structure.m; ++p)
        pieces.push_back(json{{"exponent", rat_str(a.structure.exponents[p])},
                              {"coeffs", a.piece_coeffs[p]}});
    j["pieces"] = pieces;
    j["q"] = a.q;
    json cons = json::array();
    for (const Constraint& c : a.constraints) {
        if (c.kind == Constraint::Kind::FiniteMatch)
            cons.push_back(json{{"kind", "finite"}, {"alpha", c.alpha}, {"order", c.order}});
        else
            cons.push_back(json{{"kind", "asymptotic"}, {"index", c.order}});
    }
    j["constraints"] = cons;
    j["residual"] = a.residual;
    j["condition_estimate"] = a.condition_estimate;
    return j.dump(2);
}

SeriesData series_from_json(const std::string& text) {
    const json j = json::parse(text);
    SeriesData s{family_from(j.at("family")), j.at("level").get<int>(),
                 point_from(j.at("point")), {}, {}};
    if (j.contains("exact") && j.at("exact").get<bool>()) {
        for (const auto& c : j.at("coefficients"))
            s.coefficients.push_back(rat_d(rat_parse(c.get<std::string>())));
    } else {
        s.coefficients = j.at("coefficients").get<std::vector<double>>();
    }
    if (j.contains("meta")) {
        const json& m = j.at("meta");
        s.meta.x_max = m.value("x_max", 0.0);
        s.meta.h = m.value("h", 0.0);
        s.meta.tol_e = m.value("tol_e", 0.0);
        s.meta.n_terms = m.value("n_terms", 0);
        s.meta.warnings = m.value("warnings", std::vector<std::string>{});
    }
    return s;
}

Approximant approximant_from_json(const std::string& text) {
    const json j = json::parse(text);
    Approximant a{.family = family_from(j.at("family")),
                  .level = j.at("level").get<int>(),
                  .N = j.at("N").get<int>(),
                  .mu = j.at("mu").get<double>()};
    a.structure = asymptotic_structure(a.family);
    const json& pieces = j.at("pieces");
    if (int(pieces.size()) != a.structure.m)
        throw std::invalid_argument("approximant file: piece count does not match the family");
    for (const auto& p : pieces)
        a.piece_coeffs.push_back(p.at("coeffs").get<std::vector<double>>());
    a.q = j.at("q").get<std::vector<double>>();
    for (const auto& piece : a.piece_coeffs)
        if (int(piece.size()) != a.N + 1)
            throw std::invalid_argument("approximant file: piece degree does not match N");
    if (int(a.q.size()) != a.N)
        throw std::invalid_argument("approximant file: denominator degree does not match N");
    if (j.contains("constraints")) {
        for (const auto& c : j.at("constraints")) {
            if (c.at("kind").get<std::string>() == "finite")
                a.constraints.push_back(
                    Constraint::finite(c.at("alpha").get<double>(), c.at("order").get<int>()));
            else
                a.constraints.push_back(Constraint::asymptotic(c.at("index").get<int>()));
        }
    }
    a.residual = j.value("residual", 0.0);
    a.condition_estimate = j.value("condition_estimate", 0.0);
    return a;
}

}  // namespace mqra
