#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "glines/errors.hpp"

namespace glines {

// Uniform grid on [a,b] with n steps (n+1 points).  Every structural point
// used by the geometry (interval endpoints, poles, strip widths) is snapped
// to this grid once and the snapped value is reused everywhere after.
class Grid {
 public:
  Grid(double a, double b, long n) : a_(a), b_(b), n_(n) {
    if (!(a < b)) throw NonPositiveSpan("make_grid: a >= b");
    if (n < 1) throw ZeroSteps("make_grid: n < 1");
    step_ = (b - a) / static_cast<double>(n);
  }

  double a() const { return a_; }
  double b() const { return b_; }
  long n() const { return n_; }
  double step() const { return step_; }
  long size() const { return n_ + 1; }

  double point(long i) const { return (i == n_) ? b_ : a_ + step_ * static_cast<double>(i); }

  // Index of the nearest grid point (clamped to the span).
  long snap_index(double x) const {
    long i = std::lround((x - a_) / step_);
    if (i < 0) i = 0;
    if (i > n_) i = n_;
    return i;
  }

  double snap(double x) const { return point(snap_index(x)); }

  bool on_grid(double x, double tol = 0.0) const {
    if (tol <= 0.0) tol = 1e-9 * std::max({1.0, std::fabs(a_), std::fabs(b_)});
    return std::fabs(x - snap(x)) <= tol;
  }

  long index_of(double x) const {
    if (!on_grid(x)) throw OffGrid("point is not a grid point");
    return snap_index(x);
  }

  bool contains(double x) const { return x >= a_ - 1e-12 && x <= b_ + 1e-12; }

  // Sub-grid spanning [point(i0), point(i1)].
  Grid section(long i0, long i1) const {
    if (i1 <= i0) throw DegenerateInterval("grid section");
    return Grid(point(i0), point(i1), i1 - i0);
  }

  bool operator==(const Grid& o) const {
    return a_ == o.a_ && b_ == o.b_ && n_ == o.n_;
  }

 private:
  double a_, b_, step_;
  long n_;
};

inline Grid make_grid(double a, double b, long n) { return Grid(a, b, n); }

// One curve: real values at the grid points, piecewise linear in between.
class Path {
 public:
  Path(Grid grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (static_cast<long>(values_.size()) != grid_.size())
      throw DomainMismatch("Path: values.length != grid.n + 1");
  }

  Path(Grid grid, double constant)
      : grid_(grid), values_(static_cast<std::size_t>(grid.size()), constant) {}

  template <typename F>
  static Path from_fn(const Grid& grid, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (long i = 0; i <= grid.n(); ++i) v[static_cast<std::size_t>(i)] = f(grid.point(i));
    return Path(grid, std::move(v));
  }

  static Path affine(const Grid& grid, double va, double vb) {
    return from_fn(grid, [&](double x) {
      return ((grid.b() - x) * va + (x - grid.a()) * vb) / (grid.b() - grid.a());
    });
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](long i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](long i) { return values_[static_cast<std::size_t>(i)]; }

  // Piecewise-linear evaluation; this is the single continuum convention
  // shared by all modules (suprema and integrals are grid suprema/trapezoids).
  double at(double x) const {
    if (!grid_.contains(x)) throw OutOfSpan("Path::at");
    const double u = (x - grid_.a()) / grid_.step();
    long i = static_cast<long>(std::floor(u));
    if (i < 0) i = 0;
    if (i >= grid_.n()) i = grid_.n() - 1;
    const double w = u - static_cast<double>(i);
    return values_[static_cast<std::size_t>(i)] * (1.0 - w) +
           values_[static_cast<std::size_t>(i + 1)] * w;
  }

  double max_value() const {
    double m = values_[0];
    for (double v : values_) m = std::max(m, v);
    return m;
  }

  // Restriction to [point(i0), point(i1)].
  Path section(long i0, long i1) const {
    Grid g = grid_.section(i0, i1);
    std::vector<double> v(values_.begin() + i0, values_.begin() + i1 + 1);
    return Path(g, std::move(v));
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

}  // namespace glines
