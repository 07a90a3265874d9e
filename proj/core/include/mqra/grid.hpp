#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mqra/problem.hpp"

namespace mqra {

/// Uniform half-line grid x = 0, h, 2h, ..., x_max. x_max must be an
/// integer multiple of h (within 1e-12 relative).
struct GridSpec {
    double x_max;
    double h;

    GridSpec(double x_max_, double h_);
    std::size_t points() const { return n_points; }

private:
    std::size_t n_points;
};

/// A function sampled on a uniform half-line grid. Parity encodes the
/// full-line continuation: even functions mirror, odd ones flip sign.
struct GridFunction {
    double x_max = 0.0;
    double h = 0.0;
    Parity parity = Parity::Even;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(const GridSpec& grid, Parity parity_);

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return double(i) * h; }
    GridSpec grid() const { return GridSpec(x_max, h); }

    double max_abs() const;
    /// Decay check for bound states: |values.back()| <= tol * max|values|.
    bool decays(double tol) const;
    bool same_grid(const GridFunction& other) const;
};

/// Builds a GridFunction by sampling f at the grid points.
GridFunction sample(const GridSpec& grid, Parity parity, const std::function<double(double)>& f);

/// Composite Simpson over [0, x_max]. Odd interval counts fall back to
/// Simpson 3/8 on the last three panels. Throws below 3 points.
double quadrature(const GridFunction& f);

/// Simpson integral of w(x) * f(x) * g(x) with w(x) = x^p (p = 0 for plain
/// products); f and g must share a grid.
double weighted_inner(const GridFunction& f, const GridFunction& g, int p = 0);

}  // namespace mqra
