#include "mqra/approximant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mqra {

namespace {

double int_binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

std::string describe(const Constraint& c) {
    std::ostringstream os;
    if (c.kind == Constraint::Kind::FiniteMatch)
        os << "FiniteMatch(alpha=" << c.alpha << ", order=" << c.order << ")";
    else
        os << "AsymptoticMatch(" << c.order << ")";
    return os.str();
}

}  // namespace

void SeriesBank::add(SeriesData series) { entries_.push_back(std::move(series)); }

double SeriesBank::finite_coeff(double alpha, int k) const {
    for (const SeriesData& s : entries_) {
        if (s.point.kind != ExpansionPoint::Kind::Finite) continue;
        if (std::abs(s.point.alpha - alpha) > 1e-12 * std::max(1.0, std::abs(alpha))) continue;
        if (k < int(s.coefficients.size())) return s.coefficients[k];
        throw std::runtime_error("series bank: expansion at alpha=" + std::to_string(alpha) +
                                 " holds only " + std::to_string(s.coefficients.size()) +
                                 " terms, order " + std::to_string(k) + " requested");
    }
    throw std::runtime_error("series bank: no expansion at alpha=" + std::to_string(alpha));
}

double SeriesBank::asymptotic_coeff(int i) const {
    for (const SeriesData& s : entries_) {
        if (s.point.kind != ExpansionPoint::Kind::Asymptotic) continue;
        if (i < int(s.coefficients.size())) return s.coefficients[i];
        throw std::runtime_error("series bank: asymptotic expansion holds only " +
                                 std::to_string(s.coefficients.size()) + " terms, index " +
                                 std::to_string(i) + " requested");
    }
    throw std::runtime_error("series bank: no asymptotic expansion loaded");
}

LinearSystem assemble_system(const ProblemFamily& family, [[maybe_unused]] int level, int N,
                             double mu, const std::vector<Constraint>& constraints,
                             const SeriesBank& bank) {
    if (N < 1) throw std::invalid_argument("assemble_system: polynomial degree must be >= 1");
    if (!(mu > 0.0)) throw std::invalid_argument("assemble_system: mu must be positive");

    const AsymptoticStructure st = asymptotic_structure(family);
    const int m = st.m;
    const int n_unknowns = m * (N + 1) + N;
    if (int(constraints.size()) != n_unknowns) {
        std::ostringstream os;
        os << "constraints=" << constraints.size() << " unknowns=" << n_unknowns;
        throw std::invalid_argument(os.str());
    }
    for (std::size_t i = 0; i < constraints.size(); ++i)
        for (std::size_t k = i + 1; k < constraints.size(); ++k)
            if (constraints[i] == constraints[k])
                throw std::invalid_argument("duplicate constraint " + describe(constraints[i]));

    LinearSystem sys;
    sys.n = n_unknowns;
    sys.matrix.assign(std::size_t(n_unknowns) * n_unknowns, 0.0);
    sys.rhs.assign(n_unknowns, 0.0);

    const auto p_index = [&](int j, int c) { return j * (N + 1) + c; };
    const auto q_index = [&](int c) { return m * (N + 1) + (c - 1); };
    std::vector<double> e_exp(m);
    for (int j = 0; j < m; ++j) e_exp[j] = rat_d(st.exponents[j]);

    for (std::size_t row = 0; row < constraints.size(); ++row) {
        double* a = &sys.matrix[row * n_unknowns];
        const Constraint& c = constraints[row];

        if (c.kind == Constraint::Kind::FiniteMatch) {
            const double alpha = c.alpha;
            const int k = c.order;
            const double beta = 1.0 + mu * alpha;
            const double w = mu / beta;

            // q_c columns: order-k coefficient of Q(lambda) * E(lambda) at alpha
            for (int col = 1; col <= N; ++col) {
                double acc = 0.0;
                for (int t = 0; t <= std::min(col, k); ++t)
                    acc += bank.finite_coeff(alpha, k - t) * int_binom(col, t) *
                           std::pow(alpha, col - t);
                a[q_index(col)] += acc;
            }
            // p_{j,c} columns: order-k coefficient of (1+mu lambda)^{e_j} P_j(lambda)
            for (int j = 0; j < m; ++j) {
                const double head = std::pow(beta, e_exp[j]);
                for (int col = 0; col <= N; ++col) {
                    double acc = 0.0;
                    for (int r = 0; r <= std::min(col, k); ++r) {
                        const double g =
                            head * rat_d(rat_binom(st.exponents[j], k - r)) * std::pow(w, k - r);
                        acc += g * int_binom(col, r) * std::pow(alpha, col - r);
                    }
                    a[p_index(j, col)] -= acc;
                }
            }
            sys.rhs[row] = -bank.finite_coeff(alpha, k);
        } else {
            const int i = c.order;
            const int j = i % m;
            const int r_ord = i / m;  // consecutive lambda' orders, pieces cycling first

            // q side: [lambda'^N Q(1/lambda')] * piece-j series at order r_ord
            for (int t = 0; st.s * t <= r_ord; ++t) {
                const int sub = N - r_ord + st.s * t;  // q subscript; 0 is the constant 1
                if (sub < 0 || sub > N) continue;
                const double e_tilde = bank.asymptotic_coeff(m * t + j);
                if (sub == 0)
                    sys.rhs[row] -= e_tilde;
                else
                    a[q_index(sub)] += e_tilde;
            }
            // p side: (lambda' + mu)^{e_j} * [lambda'^N P_j(1/lambda')] at order r_ord
            for (int r = std::max(0, r_ord - N); r <= r_ord; ++r) {
                const int col = N - r_ord + r;
                const double coeff =
                    rat_d(rat_binom(st.exponents[j], r)) * std::pow(mu, e_exp[j] - r);
                a[p_index(j, col)] -= coeff;
            }
        }
    }
    return sys;
}

namespace {

bool extended_precision_requested() {
    const char* env = std::getenv("MQRA_PRECISION");
    return env && std::string(env) == "extended";
}

template <typename S>
std::vector<double> lu_solve(const LinearSystem& sys, SolveReport* report) {
    const int n = sys.n;
    std::vector<S> a(sys.matrix.begin(), sys.matrix.end());

    // row equilibration
    std::vector<S> row_scale(n, S(1));
    for (int i = 0; i < n; ++i) {
        S mx = 0;
        for (int j = 0; j < n; ++j) mx = std::max(mx, std::abs(a[i * n + j]));
        if (mx > 0) {
            row_scale[i] = S(1) / mx;
            for (int j = 0; j < n; ++j) a[i * n + j] *= row_scale[i];
        }
    }
    const std::vector<S> a0 = a;  // equilibrated copy for refinement residuals

    // LU with full pivoting
    std::vector<int> row_perm(n), col_perm(n);
    for (int j = 0; j < n; ++j) row_perm[j] = col_perm[j] = j;
    S piv_max = 0, piv_min = std::numeric_limits<S>::max();
    bool singular = false;

    for (int k = 0; k < n; ++k) {
        int pr = k, pc = k;
        S best = -1;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j)
                if (std::abs(a[i * n + j]) > best) {
                    best = std::abs(a[i * n + j]);
                    pr = i;
                    pc = j;
                }
        if (!(best > 0)) {
            singular = true;
            break;
        }
        if (pr != k) {
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[pr * n + j]);
            std::swap(row_perm[k], row_perm[pr]);
        }
        if (pc != k) {
            for (int i = 0; i < n; ++i) std::swap(a[i * n + k], a[i * n + pc]);
            std::swap(col_perm[k], col_perm[pc]);
        }
        const S piv = a[k * n + k];
        piv_max = std::max(piv_max, std::abs(piv));
        piv_min = std::min(piv_min, std::abs(piv));
        for (int i = k + 1; i < n; ++i) {
            const S f = a[i * n + k] / piv;
            a[i * n + k] = f;
            for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
        }
    }

    // solves A0 x = r (equilibrated frame) with the stored factorization
    const auto lu_apply = [&](const std::vector<S>& r) {
        std::vector<S> y(n);
        for (int i = 0; i < n; ++i) y[i] = r[row_perm[i]];
        for (int k = 0; k < n; ++k)
            for (int i = k + 1; i < n; ++i) y[i] -= a[i * n + k] * y[k];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) y[i] -= a[i * n + j] * y[j];
            const S piv = a[i * n + i];
            y[i] = (piv != S(0)) ? y[i] / piv : S(0);
        }
        std::vector<S> x(n);
        for (int j = 0; j < n; ++j) x[col_perm[j]] = y[j];
        return x;
    };

    std::vector<S> b(n);
    for (int i = 0; i < n; ++i) b[i] = S(sys.rhs[i]) * row_scale[i];
    std::vector<S> x = lu_apply(b);

    // iterative refinement with long double residual accumulation
    for (int pass = 0; pass < 2 && !singular; ++pass) {
        std::vector<S> r(n);
        for (int i = 0; i < n; ++i) {
            long double acc = static_cast<long double>(b[i]);
            for (int j = 0; j < n; ++j)
                acc -= static_cast<long double>(a0[i * n + j]) * static_cast<long double>(x[j]);
            r[i] = S(acc);
        }
        const std::vector<S> d = lu_apply(r);
        for (int j = 0; j < n; ++j) x[j] += d[j];
    }

    if (report) {
        if (singular) {
            report->ill_conditioned = true;
            report->condition_estimate = std::numeric_limits<double>::infinity();
        }
        else {
            report->condition_estimate = piv_min > 0
                                             ? double(piv_max / piv_min)
                                             : std::numeric_limits<double>::infinity();
            report->ill_conditioned |= report->condition_estimate > 1e12;
        }
        long double bnorm = 0, rnorm = 0;
        for (int i = 0; i < n; ++i) {
            long double acc = static_cast<long double>(sys.rhs[i]);
            for (int j = 0; j < n; ++j)
                acc -= static_cast<long double>(sys.matrix[i * n + j]) *
                       static_cast<long double>(x[j]);
            rnorm = std::max(rnorm, std::abs(acc));
            bnorm = std::max(bnorm, std::abs(static_cast<long double>(sys.rhs[i])));
        }
        report->residual = double(rnorm / std::max(bnorm, 1e-300L));
    }

    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = double(x[j]);
    return out;
}

}  // namespace

std::vector<double> solve_coefficients(const LinearSystem& sys, SolveReport* report) {
    if (sys.n < 1 || sys.matrix.size() != std::size_t(sys.n) * sys.n ||
        sys.rhs.size() != std::size_t(sys.n))
        throw std::invalid_argument("solve_coefficients: malformed system");
    SolveReport local;
    SolveReport* rep = report ? report : &local;
    if (extended_precision_requested()) {
        rep->precision = "extended";
        return lu_solve<long double>(sys, rep);
    }
    rep->precision = "double";
    return lu_solve<double>(sys, rep);
}

double Approximant::q_eval(double lambda) const {
    double acc = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * lambda + *it;
    return acc * lambda + 1.0;
}

Approximant build_approximant(const ProblemFamily& family, int level, int N, double mu,
                              const std::vector<Constraint>& constraints,
                              const SeriesBank& bank) {
    LinearSystem sys = assemble_system(family, level, N, mu, constraints, bank);
    SolveReport rep;
    std::vector<double> x = solve_coefficients(sys, &rep);

    Approximant ap{.family = family, .level = level, .N = N, .mu = mu};
    ap.structure = asymptotic_structure(family);
    ap.constraints = constraints;
    ap.residual = rep.residual;
    ap.condition_estimate = rep.condition_estimate;
    ap.piece_coeffs.assign(ap.structure.m, std::vector<double>(N + 1));
    for (int j = 0; j < ap.structure.m; ++j)
        for (int c = 0; c <= N; ++c) ap.piece_coeffs[j][c] = x[j * (N + 1) + c];
    ap.q.assign(x.begin() + ap.structure.m * (N + 1), x.end());
    return ap;
}

DefectReport check_defect_free(const Approximant& ap) {
    DefectReport out;
    if (std::all_of(ap.q.begin(), ap.q.end(), [](double v) { return v > 0.0; })) {
        out.ok = true;
        return out;
    }
    // Descartes screen on 1 + q_1 x + ... + q_N x^N
    int variations = 0;
    double prev = 1.0;
    for (double v : ap.q) {
        if (v == 0.0) continue;
        if (std::signbit(v) != std::signbit(prev)) ++variations;
        prev = v;
    }
    if (variations == 0) {
        out.ok = true;
        return out;
    }

    int deg = int(ap.q.size());
    while (deg > 0 && ap.q[deg - 1] == 0.0) --deg;
    double max_ratio = 0.0;
    for (int k = 0; k < deg; ++k)
        max_ratio = std::max(max_ratio, std::abs((k == 0 ? 1.0 : ap.q[k - 1]) / ap.q[deg - 1]));
    const double bound = 1.0 + max_ratio;

    const auto qv = [&](double x) { return ap.q_eval(x); };
    const int samples = 4000;
    double x_prev = 1e-12, f_prev = qv(x_prev);
    for (int i = 1; i <= samples; ++i) {
        const double x = 1e-12 * std::pow(bound / 1e-12, double(i) / samples);
        const double f = qv(x);
        if (f == 0.0) {
            out.positive_roots.push_back(x);
        } else if (f_prev != 0.0 && std::signbit(f) != std::signbit(f_prev)) {
            double lo = x_prev, hi = x;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (std::signbit(qv(mid)) == std::signbit(qv(lo))) lo = mid;
                else hi = mid;
                if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
            }
            out.positive_roots.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = f;
    }
    out.ok = out.positive_roots.empty();
    return out;
}

double evaluate(const Approximant& ap, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("evaluate: lambda must be nonnegative");
    const double qv = ap.q_eval(lambda);
    if (qv == 0.0) throw std::runtime_error("evaluate: denominator vanishes (defect)");
    const double aux = 1.0 + ap.mu * lambda;
    double sum = 0.0;
    for (int j = 0; j < ap.structure.m; ++j) {
        const std::vector<double>& p = ap.piece_coeffs[j];
        double pv = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) pv = pv * lambda + *it;
        sum += std::pow(aux, rat_d(ap.structure.exponents[j])) * pv;
    }
    return sum / qv;
}

std::vector<SweepRow> error_sweep(const Approximant& ap, const std::vector<double>& lambdas,
                                  const ShootingConfig& config) {
    std::vector<SweepRow> rows;
    rows.reserve(lambdas.size());
    for (double lam : lambdas) {
        SweepRow row;
        row.lambda = lam;
        row.e_app = evaluate(ap, lam);
        const Potential W = power_potential(ap.family.a, 1.0, ap.family.b, lam);
        row.e_shoot = solve_eigen(W, ap.level, config).energy;
        row.rel_err = std::abs(row.e_app - row.e_shoot) / row.e_shoot;
        rows.push_back(row);
    }
    return rows;
}

MuScanResult scan_mu(const ProblemFamily& family, int level, int N,
                     const std::vector<Constraint>& constraints, const SeriesBank& bank,
                     const std::vector<double>& mu_grid, const std::vector<double>& audit_grid,
                     const ShootingConfig& config) {
    if (mu_grid.empty()) throw std::invalid_argument("scan_mu: empty mu grid");
    for (double mu : mu_grid)
        if (!(mu > 0.0)) throw std::invalid_argument("scan_mu: mu must be positive");

    // shooting targets shared by every candidate
    std::vector<double> targets;
    targets.reserve(audit_grid.size());
    for (double lam : audit_grid) {
        const Potential W = power_potential(family.a, 1.0, family.b, lam);
        targets.push_back(solve_eigen(W, level, config).energy);
    }

    MuScanResult result;
    for (double mu : mu_grid) {
        MuCandidate cand;
        cand.mu = mu;
        Approximant ap = build_approximant(family, level, N, mu, constraints, bank);
        DefectReport defects = check_defect_free(ap);
        cand.defect_free = defects.ok;
        cand.roots = defects.positive_roots;
        if (defects.ok) {
            for (std::size_t i = 0; i < audit_grid.size(); ++i) {
                const double rel =
                    std::abs(evaluate(ap, audit_grid[i]) - targets[i]) / targets[i];
                if (rel > cand.max_rel_err) {
                    cand.max_rel_err = rel;
                    cand.argmax_lambda = audit_grid[i];
                }
            }
        }
        result.candidates.push_back(std::move(cand));
    }

    double best_err = std::numeric_limits<double>::infinity();
    for (const MuCandidate& c : result.candidates)
        if (c.defect_free) best_err = std::min(best_err, c.max_rel_err);
    if (!std::isfinite(best_err)) {
        std::ostringstream os;
        os << "scan_mu: every candidate is defective; positive roots:";
        for (const MuCandidate& c : result.candidates) {
            os << " mu=" << c.mu << " ->";
            for (double r : c.roots) os << " " << r;
            os << ";";
        }
        throw std::runtime_error(os.str());
    }
    // smallest mu within 5% of the best max-error
    double best_mu = std::numeric_limits<double>::infinity();
    for (const MuCandidate& c : result.candidates)
        if (c.defect_free && c.max_rel_err <= 1.05 * best_err) best_mu = std::min(best_mu, c.mu);
    result.best_mu = best_mu;
    return result;
}

}  // namespace mqra
