#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqra/asymptotics.hpp"
#include "mqra/odesolve.hpp"
#include "mqra/perturb.hpp"
#include "mqra/problem.hpp"

namespace mqra {

/// One matching condition on the approximant.
///   FiniteMatch(alpha, k): k-th Taylor coefficient at lambda = alpha
///     equals the series value E^alpha_k.
///   AsymptoticMatch(i): the row matching E~_i in the lambda' = 1/lambda
///     frame (piece i mod m, order s * floor(i/m)).
struct Constraint {
    enum class Kind { FiniteMatch, AsymptoticMatch };
    Kind kind = Kind::FiniteMatch;
    double alpha = 0.0;  // FiniteMatch only
    int order = 0;       // Taylor order, or the asymptotic term index

    static Constraint finite(double alpha, int order) {
        return {Kind::FiniteMatch, alpha, order};
    }
    static Constraint asymptotic(int index) {
        return {Kind::AsymptoticMatch, 0.0, index};
    }
    bool operator==(const Constraint&) const = default;
};

/// Lookup table of expansion data the assembly draws on.
class SeriesBank {
public:
    void add(SeriesData series);
    /// E^alpha_k; throws with a descriptive message when absent.
    double finite_coeff(double alpha, int k) const;
    /// E~_i; throws when absent.
    double asymptotic_coeff(int i) const;
    const std::vector<SeriesData>& entries() const { return entries_; }

private:
    std::vector<SeriesData> entries_;
};

struct LinearSystem {
    int n = 0;
    std::vector<double> matrix;  // row-major n x n
    std::vector<double> rhs;
};

/// Builds the square matching system for polynomials of degree N and
/// auxiliary parameter mu. Unknown order: piece coefficients p_{j,0..N}
/// for j = 0..m-1, then q_1..q_N. Throws if the constraint count does not
/// equal m(N+1)+N, or on duplicate constraints or missing series data.
LinearSystem assemble_system(const ProblemFamily& family, int level, int N, double mu,
                             const std::vector<Constraint>& constraints, const SeriesBank& bank);

struct SolveReport {
    double residual = 0.0;            // ||Ax-b||_inf / ||b||_inf (or ||Ax||/||x|| scale)
    double condition_estimate = 0.0;  // from the pivot spread, order of magnitude only
    bool ill_conditioned = false;
    std::string precision = "double";
};

/// Dense solve: row equilibration, LU with full pivoting, one step of
/// iterative refinement. MQRA_PRECISION=extended switches the arithmetic
/// to long double. Ill conditioning is reported, never fatal.
std::vector<double> solve_coefficients(const LinearSystem& system, SolveReport* report = nullptr);

struct Approximant {
    ProblemFamily family;
    int level = 0;
    int N = 0;
    double mu = 0.0;
    AsymptoticStructure structure;
    std::vector<std::vector<double>> piece_coeffs;  // m rows of N+1
    std::vector<double> q;                          // q_1..q_N (q_0 = 1 implied)
    std::vector<Constraint> constraints;
    double residual = 0.0;
    double condition_estimate = 0.0;

    /// Q(lambda) = 1 + sum q_k lambda^k by Horner.
    double q_eval(double lambda) const;
};

Approximant build_approximant(const ProblemFamily& family, int level, int N, double mu,
                              const std::vector<Constraint>& constraints,
                              const SeriesBank& bank);

struct DefectReport {
    bool ok = false;
    std::vector<double> positive_roots;
};

/// Defect screen: strictly positive q coefficients are sufficient for a
/// root-free denominator on (0, inf); otherwise roots are isolated by
/// sign scanning plus bisection and reported.
DefectReport check_defect_free(const Approximant& approx);

double evaluate(const Approximant& approx, double lambda);

struct SweepRow {
    double lambda = 0.0;
    double e_app = 0.0;
    double e_shoot = 0.0;
    double rel_err = 0.0;
};

/// rel_err = |E_app - E_shoot| / E_shoot on each grid point, target from
/// solve_eigen on x^a + lambda x^b.
std::vector<SweepRow> error_sweep(const Approximant& approx, const std::vector<double>& lambdas,
                                  const ShootingConfig& config = {});

struct MuCandidate {
    double mu = 0.0;
    bool defect_free = false;
    std::vector<double> roots;
    double max_rel_err = 0.0;
    double argmax_lambda = 0.0;
};

struct MuScanResult {
    double best_mu = 0.0;
    std::vector<MuCandidate> candidates;
};

/// Builds one approximant per mu candidate, drops defective ones, ranks
/// the rest by max relative error over the audit grid. Ties within 5% of
/// the best error go to the smallest mu.
MuScanResult scan_mu(const ProblemFamily& family, int level, int N,
                     const std::vector<Constraint>& constraints, const SeriesBank& bank,
                     const std::vector<double>& mu_grid, const std::vector<double>& audit_grid,
                     const ShootingConfig& config = {});

}  // namespace mqra
