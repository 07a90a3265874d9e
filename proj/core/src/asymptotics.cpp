#include "mqra/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace mqra {

AsymptoticSeries asymptotic_series(const ProblemFamily& family, int level, int n_terms,
                                   const ShootingConfig& config) {
    if (n_terms < 1) throw std::invalid_argument("asymptotic_series: need at least one term");

    ShootingConfig cfg = config;
    if (cfg.x_max <= 0.0) {
        // steeper confinement than the direct frame; 0 keeps the auto rule
        if (family.b == 4) cfg.x_max = 6.0;
        else if (family.b == 6) cfg.x_max = 5.0;
    }

    const Potential W = power_potential(family.b, 1.0, family.a, 0.0);
    EigenSolution base = solve_eigen(W, level, cfg);

    ChainState chain;
    chain.W = W;
    chain.perturbation_exponent = family.a;
    chain.parity = level_parity(level);
    chain.decay_tol = cfg.decay_tol;
    chain.functions.push_back(base.psi);
    chain.energies.push_back(base.energy);
    while (int(chain.order()) < n_terms) chain_extend(chain);

    AsymptoticSeries out{family, level, chain.energies, {}, {}};
    if (!(out.coefficients[0] > 0.0))
        throw std::runtime_error("asymptotic_series: nonpositive leading coefficient");

    const AsymptoticStructure st = asymptotic_structure(family);
    out.pieces.assign(st.m, {});
    for (std::size_t k = 0; k < out.coefficients.size(); ++k)
        out.pieces[k % st.m].push_back(out.coefficients[k]);

    out.meta.x_max = base.psi.x_max;
    out.meta.h = base.psi.h;
    out.meta.tol_e = cfg.tol_e;
    out.meta.n_terms = n_terms;
    return out;
}

double eval_asymptotic(const AsymptoticSeries& series, double lambda, int K) {
    if (!(lambda > 0.0)) throw std::invalid_argument("eval_asymptotic: lambda must be positive");
    if (K < 1 || std::size_t(K) > series.coefficients.size())
        throw std::invalid_argument("eval_asymptotic: K exceeds the available terms");
    const double a2 = series.family.a + 2, b2 = series.family.b + 2;
    double sum = 0.0;
    for (int k = 0; k < K; ++k)
        sum += series.coefficients[k] * std::pow(lambda, (2.0 - k * a2) / b2);
    return sum;
}

SeriesData to_series_data(const AsymptoticSeries& series) {
    SeriesData out{series.family, series.level, ExpansionPoint::asymptotic(),
                   series.coefficients, series.meta};
    return out;
}

}  // namespace mqra
