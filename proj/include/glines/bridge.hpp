#pragma once

#include <cmath>
#include <utility>

#include "glines/grid.hpp"
#include "glines/rng.hpp"

namespace glines {

struct GaussianLaw {
  double mean = 0.0;
  double variance = 0.0;
};

// Law of B(q) for a Brownian bridge (diffusion parameter one) pinned at
// (ell, a) and (r, b).
inline GaussianLaw bridge_conditional_law(double ell, double r, double a,
                                          double b, double q) {
  if (!(ell < r)) throw DegenerateInterval("bridge_conditional_law: ell >= r");
  if (q < ell || q > r) throw OutOfSpan("bridge_conditional_law: q outside [ell,r]");
  GaussianLaw law;
  law.mean = ((r - q) * a + (q - ell) * b) / (r - ell);
  law.variance = (q - ell) * (r - q) / (r - ell);
  return law;
}

// Exact Brownian bridge sample on the grid, built left to right: given the
// value v at x_i, the value at x_{i+1} is Gaussian with mean interpolating
// toward (b, xb) and variance step*(b-x_{i+1})/(b-x_i).  O(n), exact, and the
// endpoints are pinned bit-exactly.
inline Path sample_bridge(const Grid& grid, double xa, double xb,
                          RngStream& rng) {
  std::vector<double> v(static_cast<std::size_t>(grid.size()));
  v[0] = xa;
  double cur = xa;
  for (long i = 1; i < grid.n(); ++i) {
    const double xprev = grid.point(i - 1);
    const double x = grid.point(i);
    const double rem_prev = grid.b() - xprev;
    const double rem = grid.b() - x;
    const double mean = cur + grid.step() * (xb - cur) / rem_prev;
    const double var = grid.step() * rem / rem_prev;
    cur = mean + std::sqrt(var) * rng.gaussian();
    v[static_cast<std::size_t>(i)] = cur;
  }
  v[static_cast<std::size_t>(grid.n())] = xb;
  return Path(grid, std::move(v));
}

// Bridge conditioned on interior values: pins[] are (grid index, value) pairs
// in increasing index order covering neither endpoint; segments between
// consecutive pinned points are independent bridges.
inline Path sample_bridge_pinned(const Grid& grid, double xa, double xb,
                                 const std::vector<std::pair<long, double>>& pins,
                                 RngStream& rng) {
  std::vector<double> v(static_cast<std::size_t>(grid.size()));
  long i0 = 0;
  double v0 = xa;
  v[0] = xa;
  auto fill = [&](long a_idx, double va, long b_idx, double vb) {
    Grid seg = grid.section(a_idx, b_idx);
    Path p = sample_bridge(seg, va, vb, rng);
    for (long i = a_idx; i <= b_idx; ++i)
      v[static_cast<std::size_t>(i)] = p[i - a_idx];
  };
  for (const auto& [idx, val] : pins) {
    if (idx <= i0 || idx >= grid.n()) throw BadIndices("sample_bridge_pinned");
    fill(i0, v0, idx, val);
    i0 = idx;
    v0 = val;
  }
  fill(i0, v0, grid.n(), xb);
  return Path(grid, std::move(v));
}

// h minus its affine interpolant on [a,b]; vanishes at both ends.
inline Path bridge_part(const Path& path, double a, double b) {
  const Grid& g = path.grid();
  const long ia = g.index_of(a);
  const long ib = g.index_of(b);
  if (ib <= ia) throw DegenerateInterval("bridge_part: a >= b");
  Grid sub = g.section(ia, ib);
  const double ha = path[ia];
  const double hb = path[ib];
  std::vector<double> v(static_cast<std::size_t>(sub.size()));
  for (long i = 0; i <= sub.n(); ++i) {
    const double x = sub.point(i);
    v[static_cast<std::size_t>(i)] =
        path[ia + i] - ((x - a) * hb + (b - x) * ha) / (b - a);
  }
  v[0] = 0.0;
  v[static_cast<std::size_t>(sub.n())] = 0.0;
  return Path(sub, std::move(v));
}

}  // namespace glines
