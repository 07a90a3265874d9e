#include "mqra/problem.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mqra {

ProblemFamily::ProblemFamily(int a_, int b_) : a(a_), b(b_) {
    if (a < 2 || a % 2 != 0)
        throw std::invalid_argument("base exponent a must be even and >= 2, got " +
                                    std::to_string(a));
    if (b % 2 != 0 || b <= a)
        throw std::invalid_argument("perturbation exponent b must be even and > a, got b=" +
                                    std::to_string(b) + " with a=" + std::to_string(a));
}

ReducedProblem::ReducedProblem(ProblemFamily fam, double lambda_, int level_)
    : family(fam), lambda(lambda_), level(level_), parity(level_parity(level_)) {
    if (lambda < 0.0) throw std::invalid_argument("coupling lambda must be nonnegative");
    if (level < 0) throw std::invalid_argument("level must be nonnegative");
}

PotentialScaling reduce_potential(double A, double B, int a, int b) {
    ProblemFamily family(a, b);  // validates the exponents
    if (!(A > 0.0)) throw std::invalid_argument("leading coefficient A must be positive");
    if (B < 0.0) throw std::invalid_argument("coefficient B must be nonnegative");

    PotentialScaling out;
    out.lambda = std::pow(A, -double(b + 2) / double(a + 2)) * B;
    out.x_scale = std::pow(A, -1.0 / double(a + 2));
    out.e_scale = std::pow(A, 2.0 / double(a + 2));
    return out;
}

AsymptoticStructure asymptotic_structure(const ProblemFamily& family) {
    const int g = std::gcd(family.a + 2, family.b + 2);
    AsymptoticStructure st;
    st.m = (family.b + 2) / g;
    st.s = (family.a + 2) / g;
    st.exponents.reserve(st.m);
    for (int j = 0; j < st.m; ++j)
        st.exponents.push_back(rat(2 - long(j) * (family.a + 2), family.b + 2));
    return st;
}

AsymptoticScaling scale_to_asymptotic(double lambda, const ProblemFamily& family) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("asymptotic frame requires lambda > 0");
    AsymptoticScaling out;
    out.lambda_tilde = std::pow(lambda, -double(family.a + 2) / double(family.b + 2));
    out.y_scale = std::pow(lambda, -1.0 / double(family.b + 2));
    out.e_tilde_scale = std::pow(lambda, 2.0 / double(family.b + 2));
    return out;
}

}  // namespace mqra
