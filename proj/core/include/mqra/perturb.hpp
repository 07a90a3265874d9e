#pragma once

#include <string>
#include <vector>

#include "mqra/odesolve.hpp"
#include "mqra/problem.hpp"
#include "mqra/rational.hpp"

namespace mqra {

/// Expansion about lambda = alpha (finite) or about lambda -> infinity.
struct ExpansionPoint {
    enum class Kind { Finite, Asymptotic };
    Kind kind = Kind::Finite;
    double alpha = 0.0;

    static ExpansionPoint finite(double a) { return {Kind::Finite, a}; }
    static ExpansionPoint asymptotic() { return {Kind::Asymptotic, 0.0}; }
};

/// Snapshot of the solver settings a series was produced with.
struct SolverMeta {
    double x_max = 0.0;
    double h = 0.0;
    double tol_e = 0.0;
    int n_terms = 0;
    std::vector<std::string> warnings;
};

struct SeriesData {
    ProblemFamily family;
    int level = 0;
    ExpansionPoint point;
    std::vector<double> coefficients;
    SolverMeta meta;
};

/// Exact power-series data for the a = 2 base: energies E_k and the
/// polynomial factors of psi_n = P_n(x) exp(-x^2/2), all as exact
/// rationals. polys[n][j] is the x^j coefficient of P_n.
struct RationalSeries {
    int level = 0;
    int b = 0;
    std::vector<Rat> coefficients;
    std::vector<std::vector<Rat>> polys;
};

/// Exact rationals for the harmonic base via the polynomial-times-Gaussian
/// ansatz: powers are matched top-down, E_n falls out of the solvability
/// row, and the free coefficient at x^level is gauged to zero.
RationalSeries exact_harmonic_series(int b, int level, int n_terms);

/// Taylor data of E(lambda) at lambda = alpha through the ODE chain on
/// W = x^a + alpha x^b. Terms above term_cap get a precision warning in
/// meta (chain error accumulates with order).
SeriesData numeric_series(const ProblemFamily& family, int level, double alpha, int n_terms,
                          const ShootingConfig& config = {}, int term_cap = 6);

/// Centered finite-difference dE/dlambda at alpha from two eigenvalue
/// solves; a cross-check on the chain's first-order coefficient.
double fd_derivative_oracle(const ProblemFamily& family, int level, double alpha, double eps,
                            const ShootingConfig& config = {});

}  // namespace mqra
