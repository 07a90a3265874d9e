#pragma once

#include <vector>

#include "mqra/perturb.hpp"
#include "mqra/problem.hpp"

namespace mqra {

/// Large-lambda expansion data: coefficients E~_k of the scaled-frame
/// series, plus the same coefficients regrouped into the m pieces of the
/// lambda-expansion (piece j holds indices j, m+j, 2m+j, ...).
struct AsymptoticSeries {
    ProblemFamily family;
    int level = 0;
    std::vector<double> coefficients;
    std::vector<std::vector<double>> pieces;
    SolverMeta meta;
};

/// Runs the chain in the scaled frame: base operator y^b, perturbation
/// y^a, coupling lambda_tilde. Same machinery as the finite-point chain
/// with the exponent roles swapped.
AsymptoticSeries asymptotic_series(const ProblemFamily& family, int level, int n_terms,
                                   const ShootingConfig& config = {});

/// Truncation of the regrouped expansion at the first K coefficients
/// (global index order): sum_{k<K} E~_k lambda^{(2 - k(a+2))/(b+2)}.
double eval_asymptotic(const AsymptoticSeries& series, double lambda, int K);

SeriesData to_series_data(const AsymptoticSeries& series);

}  // namespace mqra
