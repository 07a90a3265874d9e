#pragma once

#include <vector>

#include "mqra/rational.hpp"

namespace mqra {

enum class Parity { Even, Odd };

inline Parity level_parity(int level) {
    return (level % 2 == 0) ? Parity::Even : Parity::Odd;
}

/// Exponent pair of the potential x^a + lambda*x^b. Both exponents must be
/// even and b > a >= 2; the parity-based boundary treatment downstream
/// depends on it.
struct ProblemFamily {
    int a;
    int b;

    ProblemFamily(int a_, int b_);
};

/// One-parameter eigenvalue problem: level-th eigenvalue of
/// -d^2/dx^2 + x^a + lambda*x^b.
struct ReducedProblem {
    ProblemFamily family;
    double lambda;
    int level;
    Parity parity;

    ReducedProblem(ProblemFamily fam, double lambda_, int level_);
};

/// Shape of the large-lambda expansion: m sub-series ("pieces"), piece j
/// carrying the fractional power lambda^{e_j} and descending inside the
/// piece in integer steps of lambda^{-s}.
struct AsymptoticStructure {
    int m;
    int s;
    std::vector<Rat> exponents;  // e_j = (2 - j(a+2))/(b+2), j = 0..m-1
};

/// Result of scaling V = A x^a + B x^b down to the one-parameter form.
/// E_physical = e_scale * E_reduced; x_physical = x_scale * x_reduced.
struct PotentialScaling {
    double lambda;
    double x_scale;
    double e_scale;
};

PotentialScaling reduce_potential(double A, double B, int a, int b);

AsymptoticStructure asymptotic_structure(const ProblemFamily& family);

/// Change of frame for lambda -> infinity: E = e_tilde_scale * E_tilde,
/// x = y_scale * y, and the scaled problem carries coupling lambda_tilde.
struct AsymptoticScaling {
    double lambda_tilde;
    double y_scale;
    double e_tilde_scale;
};

AsymptoticScaling scale_to_asymptotic(double lambda, const ProblemFamily& family);

}  // namespace mqra
