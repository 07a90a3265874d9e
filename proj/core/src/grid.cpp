#include "mqra/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mqra {

GridSpec::GridSpec(double x_max_, double h_) : x_max(x_max_), h(h_) {
    if (!(x_max > 0.0) || !(h > 0.0))
        throw std::invalid_argument("grid requires x_max > 0 and h > 0");
    const double ratio = x_max / h;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-12 * std::max(1.0, ratio))
        throw std::invalid_argument("x_max must be an integer multiple of h");
    n_points = std::size_t(rounded) + 1;
}

GridFunction::GridFunction(const GridSpec& grid, Parity parity_)
    : x_max(grid.x_max), h(grid.h), parity(parity_), values(grid.points(), 0.0) {}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::decays(double tol) const {
    if (values.empty()) return false;
    return std::abs(values.back()) <= tol * max_abs();
}

bool GridFunction::same_grid(const GridFunction& other) const {
    return values.size() == other.values.size() &&
           std::abs(x_max - other.x_max) <= 1e-12 * std::max(1.0, x_max) &&
           std::abs(h - other.h) <= 1e-12 * h;
}

GridFunction sample(const GridSpec& grid, Parity parity, const std::function<double(double)>& f) {
    GridFunction out(grid, parity);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = f(out.x(i));
    return out;
}

namespace {

double simpson(const std::vector<double>& v, double h, std::size_t lo, std::size_t hi) {
    // [lo, hi] must span an even number of intervals
    double sum = v[lo] + v[hi];
    for (std::size_t i = lo + 1; i < hi; i += 2) sum += 4.0 * v[i];
    for (std::size_t i = lo + 2; i < hi; i += 2) sum += 2.0 * v[i];
    return sum * h / 3.0;
}

}  // namespace

double quadrature(const GridFunction& f) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("quadrature needs at least 3 grid points");
    const std::size_t intervals = n - 1;
    if (intervals % 2 == 0) return simpson(f.values, f.h, 0, intervals);
    // odd interval count: Simpson up to intervals-3, then the 3/8 rule
    double head = intervals > 3 ? simpson(f.values, f.h, 0, intervals - 3) : 0.0;
    const std::size_t j = intervals - 3;
    double tail = (f.values[j] + 3.0 * f.values[j + 1] + 3.0 * f.values[j + 2] + f.values[j + 3]) *
                  3.0 * f.h / 8.0;
    return head + tail;
}

double weighted_inner(const GridFunction& f, const GridFunction& g, int p) {
    if (!f.same_grid(g)) throw std::invalid_argument("weighted_inner: grid mismatch");
    GridFunction prod(f.grid(), Parity::Even);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = (p == 0) ? 1.0 : std::pow(f.x(i), p);
        prod.values[i] = w * f.values[i] * g.values[i];
    }
    return quadrature(prod);
}

}  // namespace mqra
