#include "mqra/perturb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mqra {

namespace {

/// Physicists' Hermite polynomial H_level, exact integer coefficients.
std::vector<Rat> hermite_coeffs(int level) {
    std::vector<Rat> prev{rat(1)};
    if (level == 0) return prev;
    std::vector<Rat> cur{rat(0), rat(2)};
    for (int n = 1; n < level; ++n) {
        std::vector<Rat> next(n + 2, rat(0));
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2 * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= 2 * n * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Rat coeff_at(const std::vector<Rat>& poly, int j) {
    return (j >= 0 && std::size_t(j) < poly.size()) ? poly[j] : Rat(0);
}

}  // namespace

RationalSeries exact_harmonic_series(int b, int level, int n_terms) {
    if (b < 4 || b % 2 != 0)
        throw std::invalid_argument("exact_harmonic_series: b must be even and >= 4");
    if (level < 0 || n_terms < 1)
        throw std::invalid_argument("exact_harmonic_series: bad level or term count");

    const int nu = level;
    RationalSeries out;
    out.level = level;
    out.b = b;
    out.coefficients.push_back(rat(2L * nu + 1));
    out.polys.push_back(hermite_coeffs(level));

    for (int n = 1; n < n_terms; ++n) {
        const int deg = nu + b * n;
        // r_j: the x^j coefficient of  -x^b P_{n-1} + sum_{k=1}^{n-1} E_{n-k} P_k,
        // with the E_n P_0 part carried separately (E_n unknown until the
        // solvability row)
        std::vector<Rat> r(deg + 1, Rat(0));
        const std::vector<Rat>& prev = out.polys[n - 1];
        for (std::size_t j = 0; j < prev.size(); ++j) r[j + b] -= prev[j];
        for (int k = 1; k < n; ++k) {
            const std::vector<Rat>& pk = out.polys[k];
            const Rat& e = out.coefficients[n - k];
            for (std::size_t j = 0; j < pk.size(); ++j) r[j] += e * pk[j];
        }
        const std::vector<Rat>& p0 = out.polys[0];

        // match powers downward: 2(j - nu) p_j - (j+2)(j+1) p_{j+2} = r_j
        std::vector<Rat> p(deg + 1, Rat(0));
        for (int j = deg; j > nu; j -= 2)
            p[j] = (r[j] + Rat((j + 2) * (j + 1)) * coeff_at(p, j + 2)) / Rat(2 * (j - nu));

        // solvability row at j = nu fixes E_n; the x^nu coefficient stays 0
        const Rat e_n =
            (Rat(-(nu + 2) * (nu + 1)) * coeff_at(p, nu + 2) - r[nu]) / coeff_at(p0, nu);
        out.coefficients.push_back(e_n);

        for (int j = nu - 2; j >= 0; j -= 2) {
            const Rat rj = r[j] + e_n * coeff_at(p0, j);
            p[j] = (rj + Rat((j + 2) * (j + 1)) * coeff_at(p, j + 2)) / Rat(2 * (j - nu));
        }
        out.polys.push_back(std::move(p));
    }
    return out;
}

SeriesData numeric_series(const ProblemFamily& family, int level, double alpha, int n_terms,
                          const ShootingConfig& config, int term_cap) {
    if (alpha < 0.0) throw std::invalid_argument("numeric_series: alpha must be nonnegative");
    if (n_terms < 1) throw std::invalid_argument("numeric_series: need at least one term");

    const Potential W = power_potential(family.a, 1.0, family.b, alpha);
    EigenSolution base = solve_eigen(W, level, config);

    ChainState chain;
    chain.W = W;
    chain.perturbation_exponent = family.b;
    chain.parity = level_parity(level);
    chain.decay_tol = config.decay_tol;
    chain.functions.push_back(base.psi);
    chain.energies.push_back(base.energy);
    while (int(chain.order()) < n_terms) chain_extend(chain);

    SeriesData out{family, level, ExpansionPoint::finite(alpha), chain.energies, {}};
    out.meta.x_max = base.psi.x_max;
    out.meta.h = base.psi.h;
    out.meta.tol_e = config.tol_e;
    out.meta.n_terms = n_terms;
    if (n_terms > term_cap)
        out.meta.warnings.push_back("requested " + std::to_string(n_terms) +
                                    " terms, beyond the precision budget of " +
                                    std::to_string(term_cap) +
                                    "; trailing coefficients lose accuracy");
    return out;
}

double fd_derivative_oracle(const ProblemFamily& family, int level, double alpha, double eps,
                            const ShootingConfig& config) {
    if (!(eps > 0.0) || !(alpha - eps > 0.0))
        throw std::invalid_argument("fd_derivative_oracle: need 0 < eps < alpha");
    const double e_plus =
        solve_eigen(power_potential(family.a, 1.0, family.b, alpha + eps), level, config).energy;
    const double e_minus =
        solve_eigen(power_potential(family.a, 1.0, family.b, alpha - eps), level, config).energy;
    return (e_plus - e_minus) / (2.0 * eps);
}

}  // namespace mqra
