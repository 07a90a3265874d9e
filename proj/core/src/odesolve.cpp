#include "mqra/odesolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mqra {

namespace {

constexpr double kOverflowGuard = 1e250;
constexpr double kRescaleFactor = 1e-250;
// WKB decay budget: beyond the point where the barrier integral from the
// turning point reaches this, the true tail is below ~3e-20 of the peak.
constexpr double kDecayHorizon = 45.0;

/// Cubic 4-point interpolation of a grid source at the midpoint of panel i.
double source_mid(const std::vector<double>& s, std::size_t i_lo, std::size_t i_hi) {
    const std::size_t n = s.size();
    const std::size_t a = std::min(i_lo, i_hi);
    if (a == 0)
        return 0.3125 * s[0] + 0.9375 * s[1] - 0.3125 * s[2] + 0.0625 * s[3];
    if (a + 2 >= n)
        return 0.0625 * s[n - 4] - 0.3125 * s[n - 3] + 0.9375 * s[n - 2] + 0.3125 * s[n - 1];
    return -0.0625 * s[a - 1] + 0.5625 * s[a] + 0.5625 * s[a + 1] - 0.0625 * s[a + 2];
}

struct Sweep {
    std::vector<double> u;
    std::vector<double> v;
    bool overflow = false;
    std::size_t overflow_index = 0;  // first index not reached cleanly
};

/// Fixed-step RK4 for -u'' + (W - E) u = S between grid indices i_from and
/// i_to (inclusive, either direction). With allow_rescale the running state
/// and the already-written samples are rescaled when the overflow guard
/// trips (homogeneous sweeps only); otherwise the sweep stops and reports.
Sweep rk4_sweep(const Potential& W, double E, const std::vector<double>* source, double u0,
                double v0, const GridSpec& grid, std::size_t i_from, std::size_t i_to,
                bool allow_rescale) {
    const std::size_t n = grid.points();
    Sweep out;
    out.u.assign(n, 0.0);
    out.v.assign(n, 0.0);

    const int dir = (i_to >= i_from) ? 1 : -1;
    const double h = grid.h * dir;
    double u = u0, v = v0;
    out.u[i_from] = u;
    out.v[i_from] = v;

    const auto g = [&](double x) { return W(x) - E; };

    std::size_t i = i_from;
    while (i != i_to) {
        const std::size_t j = i + dir;
        const double x = double(i) * grid.h;
        const double xm = x + 0.5 * h;
        const double xj = double(j) * grid.h;

        const double s_i = source ? (*source)[i] : 0.0;
        const double s_m = source ? source_mid(*source, i, j) : 0.0;
        const double s_j = source ? (*source)[j] : 0.0;

        const double gi = g(x), gm = g(xm), gj = g(xj);

        const double k1u = v;
        const double k1v = gi * u - s_i;
        const double k2u = v + 0.5 * h * k1v;
        const double k2v = gm * (u + 0.5 * h * k1u) - s_m;
        const double k3u = v + 0.5 * h * k2v;
        const double k3v = gm * (u + 0.5 * h * k2u) - s_m;
        const double k4u = v + h * k3v;
        const double k4v = gj * (u + h * k3u) - s_j;

        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        if (std::abs(u) > kOverflowGuard || std::abs(v) > kOverflowGuard) {
            if (allow_rescale && !source) {
                u *= kRescaleFactor;
                v *= kRescaleFactor;
                std::size_t k = i_from;
                while (true) {
                    out.u[k] *= kRescaleFactor;
                    out.v[k] *= kRescaleFactor;
                    if (k == i) break;
                    k += dir;
                }
            } else {
                out.overflow = true;
                out.overflow_index = j;
                const double fill = std::copysign(kOverflowGuard, u);
                std::size_t k = j;
                while (true) {
                    out.u[k] = fill;
                    out.v[k] = fill;
                    if (k == i_to) break;
                    k += dir;
                }
                return out;
            }
        }
        out.u[j] = u;
        out.v[j] = v;
        i = j;
    }
    return out;
}

Init parity_init(Parity p) {
    return p == Parity::Even ? Init{1.0, 0.0} : Init{0.0, 1.0};
}

/// Interior sign changes over [0, limit], skipping exact zeros.
int count_nodes(const std::vector<double>& u, std::size_t limit) {
    int nodes = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i <= limit && i < u.size(); ++i) {
        const double cur = u[i];
        if (cur == 0.0) continue;
        if (prev != 0.0 && std::signbit(cur) != std::signbit(prev)) ++nodes;
        prev = cur;
    }
    return nodes;
}

double turning_point(const Potential& W, double E) {
    double hi = 1.0;
    int guard = 0;
    while (W(hi) < E && guard++ < 200) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (W(mid) < E ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::size_t turning_index(const Potential& W, double E, const GridSpec& grid) {
    const std::size_t n = grid.points();
    std::size_t i = 0;
    while (i + 1 < n && W(double(i) * grid.h) < E) ++i;
    return std::clamp<std::size_t>(i, 4, n >= 9 ? n - 5 : n - 1);
}

/// Index beyond which the true bound-state tail is negligible: the WKB
/// barrier integral from the turning point exceeds kDecayHorizon.
std::size_t horizon_index(const Potential& W, double E, const GridSpec& grid, std::size_t i_turn) {
    const std::size_t n = grid.points();
    double acc = 0.0;
    for (std::size_t i = i_turn; i + 1 < n; ++i) {
        const double x = double(i) * grid.h;
        acc += std::sqrt(std::max(W(x) - E, 0.0)) * grid.h;
        if (acc > kDecayHorizon) return i;
    }
    return n - 1;
}

double fd_slope(const std::vector<double>& u, std::size_t i, double h) {
    // centered 5-point first derivative
    return (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * h);
}

GridSpec aligned_grid(double x_max, double h) {
    const double n = std::round(x_max / h);
    return GridSpec(std::max(n, 8.0) * h, h);
}

}  // namespace

Potential power_potential(int a, double ca, int b, double cb) {
    return [a, ca, b, cb](double x) {
        return ca * std::pow(x, a) + cb * std::pow(x, b);
    };
}

IvpResult integrate_ivp(const Potential& W, double E, const GridFunction* source, Init init,
                        const GridSpec& grid, Parity parity) {
    if (source && source->size() != grid.points())
        throw std::invalid_argument("integrate_ivp: source not on the integration grid");
    Sweep sw = rk4_sweep(W, E, source ? &source->values : nullptr, init.value, init.slope, grid,
                         0, grid.points() - 1, false);
    IvpResult out;
    out.u = GridFunction(grid, parity);
    out.u.values = std::move(sw.u);
    out.slopes = std::move(sw.v);
    out.overflow = sw.overflow;
    out.overflow_index = sw.overflow_index;
    return out;
}

namespace {

struct ShotInfo {
    int nodes;
    std::size_t limit;
};

ShotInfo shoot_nodes(const Potential& W, double E, const GridSpec& grid, Parity parity) {
    const Init init = parity_init(parity);
    Sweep sw = rk4_sweep(W, E, nullptr, init.value, init.slope, grid, 0, grid.points() - 1, false);
    const std::size_t limit = sw.overflow ? sw.overflow_index : grid.points() - 1;
    return {count_nodes(sw.u, limit), limit};
}

EigenSolution solve_on_grid(const Potential& W, int level, const GridSpec& grid,
                            const ShootingConfig& cfg) {
    const Parity parity = level_parity(level);
    const int k_target = level / 2;  // sector node count below the eigenvalue

    auto nodes_at = [&](double E) { return shoot_nodes(W, E, grid, parity).nodes; };

    // bracket by node counting; the count jumps k_target -> k_target+1 at E_level
    double lo = std::max(cfg.e_lo, 0.0);
    double hi = cfg.e_hi > lo ? cfg.e_hi : std::max(10.0, 2.0 * lo);
    if (nodes_at(lo) > k_target) lo = 0.0;
    int guard = 0;
    while (nodes_at(hi) <= k_target) {
        hi *= 2.0;
        if (++guard > 80)
            throw std::runtime_error("solve_eigen: bracket widening failed to capture level " +
                                     std::to_string(level));
    }

    int iter = 0;
    while (hi - lo > cfg.tol_e * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        (nodes_at(mid) > k_target ? hi : lo) = mid;
        if (++iter > cfg.max_iter)
            throw std::runtime_error("solve_eigen: no convergence within iteration cap");
    }
    const double energy = 0.5 * (lo + hi);

    // two-sided assembly: outward to the turning point, inward from the
    // decay horizon, glued by one scale factor
    const Init init = parity_init(parity);
    const std::size_t i_match = turning_index(W, energy, grid);
    const std::size_t i_far = horizon_index(W, energy, grid, i_match);

    Sweep outw = rk4_sweep(W, energy, nullptr, init.value, init.slope, grid, 0, i_match, false);
    const double seed_slope = -std::sqrt(std::max(W(double(i_far) * grid.h) - energy, 1.0));
    Sweep inw = rk4_sweep(W, energy, nullptr, 1.0, seed_slope, grid, i_far, i_match, true);

    if (inw.u[i_match] == 0.0)
        throw std::runtime_error("solve_eigen: degenerate inward sweep at the matching point");
    const double gamma = outw.u[i_match] / inw.u[i_match];

    EigenSolution sol;
    sol.energy = energy;
    sol.psi = GridFunction(grid, parity);
    for (std::size_t i = 0; i <= i_match; ++i) sol.psi.values[i] = outw.u[i];
    for (std::size_t i = i_match + 1; i <= i_far; ++i) sol.psi.values[i] = gamma * inw.u[i];
    // beyond the horizon the true tail is below representable relevance

    const double denom = std::abs(outw.v[i_match]) + std::abs(outw.u[i_match]) + 1e-300;
    sol.boundary_mismatch = std::abs(outw.v[i_match] - gamma * inw.v[i_match]) / denom;
    sol.nodes = count_nodes(sol.psi.values, sol.psi.size() - 1);

    if (!sol.psi.decays(cfg.decay_tol)) {
        std::ostringstream msg;
        msg << "solve_eigen: eigenfunction fails the decay check, |psi(x_max)|/max = "
            << std::abs(sol.psi.values.back()) / sol.psi.max_abs();
        throw std::runtime_error(msg.str());
    }
    return sol;
}

}  // namespace

EigenSolution solve_eigen(const Potential& W, int level, const ShootingConfig& cfg) {
    if (level < 0) throw std::invalid_argument("solve_eigen: level must be nonnegative");

    GridSpec grid = cfg.x_max > 0.0 ? GridSpec(cfg.x_max, cfg.h) : aligned_grid(8.0, cfg.h);
    EigenSolution sol = solve_on_grid(W, level, grid, cfg);
    if (cfg.x_max > 0.0) return sol;

    // auto grid: enforce x_max >= max(8, 2.5 * outer turning point)
    for (int pass = 0; pass < 3; ++pass) {
        const double want = std::max(8.0, 2.5 * turning_point(W, sol.energy));
        if (want <= grid.x_max + grid.h) break;
        grid = aligned_grid(want, cfg.h);
        sol = solve_on_grid(W, level, grid, cfg);
    }
    return sol;
}

double chain_energy(const ChainState& state, int n) {
    if (n < 1 || std::size_t(n) > state.order())
        throw std::invalid_argument("chain_energy: need psi_0..psi_{n-1} in the state");
    const GridFunction& psi0 = state.functions[0];
    for (const GridFunction& f : state.functions)
        if (!f.same_grid(psi0)) throw std::invalid_argument("chain_energy: grid mismatch");

    const double norm = weighted_inner(psi0, psi0);
    if (norm < 1e-120) throw std::runtime_error("chain_energy: psi_0 norm below threshold");

    double num = weighted_inner(psi0, state.functions[n - 1], state.perturbation_exponent);
    for (int k = 1; k < n; ++k)
        num -= state.energies[n - k] * weighted_inner(psi0, state.functions[k]);
    return num / norm;
}

GridFunction chain_function(const ChainState& state, int n, double e_n) {
    if (n < 1 || std::size_t(n) > state.order())
        throw std::invalid_argument("chain_function: need psi_0..psi_{n-1} in the state");
    const GridFunction& psi0 = state.functions[0];
    const GridSpec grid = psi0.grid();
    const double e0 = state.energies[0];

    // S_n = sum_{k=0}^{n-1} E_{n-k} psi_k - x^p psi_{n-1}, with E_n = e_n
    GridFunction src(grid, state.parity);
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double x = src.x(i);
        double s = e_n * psi0.values[i] - std::pow(x, state.perturbation_exponent) *
                                              state.functions[n - 1].values[i];
        for (int k = 1; k < n; ++k)
            s += state.energies[n - k] * state.functions[k].values[i];
        src.values[i] = s;
    }

    const std::size_t i_match = turning_index(state.W, e0, grid);
    const std::size_t i_far = horizon_index(state.W, e0, grid, i_match);

    Sweep outw = rk4_sweep(state.W, e0, &src.values, 0.0, 0.0, grid, 0, i_match, false);
    Sweep inw = rk4_sweep(state.W, e0, &src.values, 0.0, 0.0, grid, i_far, i_match, false);
    if (outw.overflow || inw.overflow)
        throw std::runtime_error("chain_function: overflow during linear shooting");

    if (psi0.values[i_match] == 0.0)
        throw std::runtime_error("chain_function: psi_0 vanishes at the matching point");
    const double correction = (inw.u[i_match] - outw.u[i_match]) / psi0.values[i_match];

    GridFunction out(grid, state.parity);
    for (std::size_t i = 0; i <= i_match; ++i)
        out.values[i] = outw.u[i] + correction * psi0.values[i];
    for (std::size_t i = i_match + 1; i <= i_far; ++i) out.values[i] = inw.u[i];

    const double psi0_slope = fd_slope(psi0.values, i_match, grid.h);
    const double slope_gap =
        std::abs(inw.v[i_match] - outw.v[i_match] - correction * psi0_slope);
    const double mismatch = slope_gap / (1.0 + out.max_abs());
    if (mismatch > state.decay_tol) {
        std::ostringstream msg;
        msg << "chain_function: boundary mismatch " << mismatch << " exceeds decay_tol "
            << state.decay_tol << " (E_" << n << " inconsistent with the chain)";
        throw std::runtime_error(msg.str());
    }

    // intermediate-normalization gauge <psi_0, psi_n> = 0
    const double shift = -weighted_inner(psi0, out) / weighted_inner(psi0, psi0);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += shift * psi0.values[i];
    return out;
}

void chain_extend(ChainState& state) {
    const int n = int(state.order());
    const double e_n = chain_energy(state, n);
    GridFunction psi_n = chain_function(state, n, e_n);
    state.energies.push_back(e_n);
    state.functions.push_back(std::move(psi_n));
}

}  // namespace mqra
