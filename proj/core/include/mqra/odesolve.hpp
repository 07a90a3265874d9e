#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mqra/grid.hpp"
#include "mqra/problem.hpp"

namespace mqra {

using Potential = std::function<double(double)>;

/// Monomial-sum potential c2*x^a + c4*x^b; the workhorse for every frame.
Potential power_potential(int a, double ca, int b, double cb);

struct Init {
    double value;
    double slope;
};

/// Raw outcome of one initial-value integration of
///   -u'' + W(x) u - E u = S(x),  u(0) = init.value, u'(0) = init.slope.
/// When the solution exceeds the overflow guard the remaining samples keep
/// the sign of the blowup and `overflow` is set; shooting uses that sign.
struct IvpResult {
    GridFunction u;
    std::vector<double> slopes;
    bool overflow = false;
    std::size_t overflow_index = 0;
};

IvpResult integrate_ivp(const Potential& W, double E, const GridFunction* source, Init init,
                        const GridSpec& grid, Parity parity);

struct ShootingConfig {
    double x_max = 0.0;     // 0 => auto: max(8, 2.5 * outer turning point)
    double h = 1e-3;
    double e_lo = 0.0;      // initial eigenvalue bracket hint; auto-widened
    double e_hi = 0.0;
    double tol_e = 1e-12;   // relative eigenvalue convergence
    double decay_tol = 1e-6;
    int max_iter = 240;
};

struct EigenSolution {
    double energy = 0.0;
    GridFunction psi;
    int nodes = 0;                    // interior nodes on (0, x_max)
    double boundary_mismatch = 0.0;   // matching residual of the two-sided assembly
};

/// level-th eigenvalue of -u'' + W u = E u on the half line with the
/// parity boundary condition at x = 0 ((1,0) even, (0,1) odd) and decay at
/// x_max. Bracket by node counting, then bisect; the eigenfunction is
/// assembled from an outward and an inward sweep glued at the outer
/// turning point, so its tail is clean down to underflow.
EigenSolution solve_eigen(const Potential& W, int level, const ShootingConfig& config = {});

/// State of the coupled chain at base energy E_0: the first n functions
/// and energies, the operator potential W, and the exponent p of the x^p
/// term that feeds function n-1 into equation n.
struct ChainState {
    Potential W;
    int perturbation_exponent = 0;
    Parity parity = Parity::Even;
    double decay_tol = 1e-6;
    std::vector<GridFunction> functions;  // psi_0 .. psi_{n-1}
    std::vector<double> energies;         // E_0 .. E_{n-1}

    std::size_t order() const { return energies.size(); }
};

/// E_n by projecting chain equation n onto psi_0 (no new ODE solve):
///   E_n = [<psi_0, x^p psi_{n-1}> - sum_{k=1}^{n-1} E_{n-k} <psi_0, psi_k>] / <psi_0, psi_0>.
double chain_energy(const ChainState& state, int n);

/// psi_n solving chain equation n with E_n given: linear shooting with an
/// outward and an inward sweep, the free psi_0 multiple fixed by the
/// intermediate-normalization gauge <psi_0, psi_n> = 0. Throws if the
/// matching residual exceeds decay_tol (inconsistent E_n).
GridFunction chain_function(const ChainState& state, int n, double e_n);

/// Convenience: computes (E_n, psi_n) for n = order() and appends them.
void chain_extend(ChainState& state);

}  // namespace mqra
