#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "glines/errors.hpp"

namespace glines {

// Concave majorant (upper convex hull) of sampled data.  Vertices are the
// extreme points xExt; segment slopes are nonincreasing.
struct ConcaveHull {
  std::vector<double> support_x;       // strictly increasing
  std::vector<double> support_y;
  std::vector<double> segment_slopes;  // slopes[i] between vertex i and i+1

  long vertex_count() const { return static_cast<long>(support_x.size()); }

  double eval(double x) const {
    if (x < support_x.front() - 1e-12 || x > support_x.back() + 1e-12)
      throw OutOfSpan("ConcaveHull::eval");
    // binary search for the segment
    long lo = 0, hi = vertex_count() - 1;
    while (hi - lo > 1) {
      long mid = (lo + hi) / 2;
      if (support_x[static_cast<std::size_t>(mid)] <= x)
        lo = mid;
      else
        hi = mid;
    }
    const double x0 = support_x[static_cast<std::size_t>(lo)];
    const double x1 = support_x[static_cast<std::size_t>(hi)];
    const double y0 = support_y[static_cast<std::size_t>(lo)];
    const double y1 = support_y[static_cast<std::size_t>(hi)];
    if (x <= x0) return y0;
    if (x >= x1) return y1;
    const double w = (x - x0) / (x1 - x0);
    return y0 * (1.0 - w) + y1 * w;
  }

  bool is_vertex(double x, double tol = 1e-9) const {
    for (double vx : support_x)
      if (std::fabs(vx - x) <= tol) return true;
    return false;
  }
};

// Single monotone-chain pass.  A point within tol (in value units, scaled by
// the data magnitude) of the chord spanning its neighbors is NOT a vertex;
// ties resolve to "not extreme".
inline ConcaveHull concave_majorant(const std::vector<double>& grid_x,
                                    const std::vector<double>& values,
                                    double tol = 1e-9) {
  const std::size_t n = grid_x.size();
  if (n < 2 || values.size() != n) throw TooFewPoints("concave_majorant");
  for (std::size_t i = 1; i < n; ++i)
    if (!(grid_x[i] > grid_x[i - 1]))
      throw BadOrdering("concave_majorant: abscissae not increasing");

  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::fabs(v));
  const double eps = tol * scale;

  // height of b above the chord a--c; <= eps means b is redundant
  auto above_chord = [](double ax, double ay, double bx, double by, double cx,
                        double cy) {
    return by - (ay + (cy - ay) * (bx - ax) / (cx - ax));
  };

  std::vector<std::size_t> stack;
  stack.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    while (stack.size() >= 2) {
      const std::size_t a = stack[stack.size() - 2];
      const std::size_t b = stack[stack.size() - 1];
      if (above_chord(grid_x[a], values[a], grid_x[b], values[b], grid_x[i],
                      values[i]) <= eps)
        stack.pop_back();
      else
        break;
    }
    stack.push_back(i);
  }

  ConcaveHull h;
  h.support_x.reserve(stack.size());
  h.support_y.reserve(stack.size());
  for (std::size_t idx : stack) {
    h.support_x.push_back(grid_x[idx]);
    h.support_y.push_back(values[idx]);
  }
  for (std::size_t i = 0; i + 1 < h.support_x.size(); ++i)
    h.segment_slopes.push_back((h.support_y[i + 1] - h.support_y[i]) /
                               (h.support_x[i + 1] - h.support_x[i]));
  return h;
}

struct OneSidedSlopes {
  double left;   // +inf at the left endpoint
  double right;  // -inf at the right endpoint
};

// Adjacent segment slopes at x.  Strictly inside a segment both sides equal
// the segment slope; at a vertex they bracket it; at the span ends the
// outward side is the infinite sentinel.
inline OneSidedSlopes one_sided_slopes(const ConcaveHull& h, double x,
                                       double tol = 1e-9) {
  const double inf = std::numeric_limits<double>::infinity();
  const long m = h.vertex_count();
  if (x < h.support_x.front() - tol || x > h.support_x.back() + tol)
    throw OutOfSpan("one_sided_slopes");
  if (m == 1) return {inf, -inf};

  // locate: first vertex with support_x >= x - tol
  long v = 0;
  while (v < m && h.support_x[static_cast<std::size_t>(v)] < x - tol) ++v;
  const bool at_vertex =
      v < m && std::fabs(h.support_x[static_cast<std::size_t>(v)] - x) <= tol;

  OneSidedSlopes s{};
  if (at_vertex) {
    s.left = (v == 0) ? inf : h.segment_slopes[static_cast<std::size_t>(v - 1)];
    s.right = (v == m - 1) ? -inf : h.segment_slopes[static_cast<std::size_t>(v)];
  } else {
    // strictly inside segment v-1 .. v
    const double slope = h.segment_slopes[static_cast<std::size_t>(v - 1)];
    s.left = slope;
    s.right = slope;
  }
  return s;
}

}  // namespace glines
