#pragma once

#include <algorithm>
#include <vector>

#include "glines/domain.hpp"
#include "glines/geometry.hpp"
#include "glines/hamiltonian.hpp"

namespace glines {

// log W_full <= log W_jump <= 0 holds exactly on the shared trapezoid
// quadrature: both weights integrate the same layer function on each closed
// column interval (junction grid points take the adjacent interval's layer
// value, matching their zero measure in the continuum integrals), and the
// chain inequality of ham_ht_jk is applied cell by cell.
struct WeightBreakdown {
  double log_full = 0.0;
  double log_jump = 0.0;
  double log_rest = 0.0;
};

namespace detail {

// trapezoid integral of f over grid cells [ia, ib]
template <typename F>
double trapezoid(const Grid& g, long ia, long ib, F&& f) {
  if (ib <= ia) return 0.0;
  double acc = 0.5 * (f(ia) + f(ib));
  for (long i = ia + 1; i < ib; ++i) acc += f(i);
  return acc * g.step();
}

inline double clamp_integral(double I, CapStats* caps) {
  if (I > kIntegralCap) {
    if (caps) ++caps->integral_hits;
    return kIntegralCap;
  }
  return I;
}

struct IndexInterval {
  long lo, hi;  // grid indices, inclusive; empty when hi <= lo
};

inline void subtract_interval(std::vector<IndexInterval>& xs, long lo, long hi) {
  std::vector<IndexInterval> out;
  for (const auto& iv : xs) {
    if (hi <= iv.lo || lo >= iv.hi) {
      out.push_back(iv);
      continue;
    }
    if (iv.lo < lo) out.push_back({iv.lo, lo});
    if (hi < iv.hi) out.push_back({hi, iv.hi});
  }
  xs = std::move(out);
}

inline std::vector<IndexInterval> merge_intervals(std::vector<IndexInterval> xs) {
  std::sort(xs.begin(), xs.end(),
            [](const IndexInterval& a, const IndexInterval& b) { return a.lo < b.lo; });
  std::vector<IndexInterval> out;
  for (const auto& iv : xs) {
    if (iv.hi <= iv.lo) continue;
    if (!out.empty() && iv.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

}  // namespace detail

// log of the full Boltzmann weight W_H on dom: boundary terms
// H_t(f_{j+1} - L_j) on [ell_j, ell_{j+1}] u [r_{j+1}, r_j], pair terms
// H_t(L_{j+1} - L_j) on [ell_{j+1}, r_{j+1}], and the bottom term
// H_t(f_{k+1} - L_k) on [ell_k, r_k].  Absent layers contribute nothing.
inline double log_weight_full(const LineEnsemble& ens, const BoundaryData& bdd,
                              const HamiltonianSpec& spec,
                              CapStats* caps = nullptr) {
  const DomainSpec& dom = ens.domain;
  const Grid& g = dom.grid;
  if (static_cast<long>(bdd.layers.size()) != dom.k + 1)
    throw DomainMismatch("log_weight_full: layer count");
  double I = 0.0;

  auto curve_at = [&](long j, long gi) {
    return ens.curve(j)[gi - g.index_of(dom.ell_j(j))];
  };

  for (long j = 1; j <= dom.k; ++j) {
    const bool last = (j == dom.k);
    const long lo = g.index_of(dom.ell_j(j));
    const long hi = g.index_of(dom.r_j(j));
    if (bdd.has_layer(j + 1)) {
      const Path& f = bdd.layer_ref(j + 1);
      auto integrand = [&](long gi) {
        return ham_ht(spec, f[gi] - curve_at(j, gi), caps);
      };
      if (last) {
        I += detail::trapezoid(g, lo, hi, integrand);
      } else {
        const long li = g.index_of(dom.ell_j(j + 1));
        const long ri = g.index_of(dom.r_j(j + 1));
        I += detail::trapezoid(g, lo, li, integrand);
        I += detail::trapezoid(g, ri, hi, integrand);
      }
    }
    if (!last) {
      const long li = g.index_of(dom.ell_j(j + 1));
      const long ri = g.index_of(dom.r_j(j + 1));
      I += detail::trapezoid(g, li, ri, [&](long gi) {
        return ham_ht(spec, curve_at(j + 1, gi) - curve_at(j, gi), caps);
      });
    }
  }
  return -detail::clamp_integral(I, caps);
}

// The interaction regions Int_i of the jump weight: a strip of width d on the
// outward side of every joint pole, clipped to column i and away from the d'
// strips so the cell-by-cell comparison with the full weight stays exact at
// any parameter scale (at the paper's scale the clipping is a no-op).
inline std::vector<std::vector<detail::IndexInterval>> jump_interaction_regions(
    const DomainSpec& dom, const std::vector<double>& joint_poles, double d,
    double dprime) {
  const Grid& g = dom.grid;
  const long dcells = std::max<long>(1, std::lround(d / g.step()));
  const long pcells = std::lround(dprime / g.step());
  std::vector<std::vector<detail::IndexInterval>> regions(
      static_cast<std::size_t>(dom.k));

  for (long i = 1; i <= dom.k; ++i) {
    const long li = g.index_of(dom.ell_j(i));
    const long ri = g.index_of(dom.r_j(i));
    const bool last = (i == dom.k);
    const long lcol_hi = last ? g.snap_index(0.0) : g.index_of(dom.ell_j(i + 1));
    const long rcol_lo = last ? g.snap_index(0.0) : g.index_of(dom.r_j(i + 1));
    std::vector<detail::IndexInterval> xs;
    for (double p : joint_poles) {
      const long pi = g.index_of(p);
      if (pi > li && pi <= lcol_hi && (last ? p < 0.0 : true)) {
        // left strip [p-d, p], clipped to the column
        xs.push_back({std::max(li, pi - dcells), pi});
      }
      const bool right_side = last ? (pi >= rcol_lo && p >= 0.0) : (pi >= rcol_lo);
      if (right_side && pi < ri) {
        xs.push_back({pi, std::min(ri, pi + dcells)});
      }
    }
    xs = detail::merge_intervals(std::move(xs));
    if (pcells > 0) {
      detail::subtract_interval(xs, li, li + pcells);
      detail::subtract_interval(xs, ri - pcells, ri);
    }
    regions[static_cast<std::size_t>(i - 1)] = std::move(xs);
  }
  return regions;
}

// Jump/rest decomposition.  W^j_jump keeps the full Hamiltonian on the d'
// strips at ell_j and r_j and uses the weakened H_t^{j,i+1} on Int_i; the
// rest weight is the exact quotient in log space.
inline WeightBreakdown log_weight_decomposition(
    const LineEnsemble& ens, const BoundaryData& bdd,
    const PoleTentBundle& bundle, const HamiltonianSpec& spec, double d,
    double dprime, CapStats* caps = nullptr) {
  const DomainSpec& dom = ens.domain;
  const Grid& g = dom.grid;
  for (double p : bundle.joint_poles)
    if (!g.on_grid(p)) throw BundleStale("pole off grid");

  auto curve_at = [&](long j, long gi) {
    return ens.curve(j)[gi - g.index_of(dom.ell_j(j))];
  };

  const auto regions = jump_interaction_regions(dom, bundle.joint_poles, d, dprime);
  const long pcells = std::lround(dprime / g.step());

  double J = 0.0;
  for (long j = 1; j <= dom.k; ++j) {
    const long lo = g.index_of(dom.ell_j(j));
    const long hi = g.index_of(dom.r_j(j));
    const Path& f = bdd.layer_ref(j + 1);
    if (pcells > 0) {
      auto integrand = [&](long gi) {
        return ham_ht(spec, f[gi] - curve_at(j, gi), caps);
      };
      J += detail::trapezoid(g, lo, lo + pcells, integrand);
      J += detail::trapezoid(g, hi - pcells, hi, integrand);
    }
    for (long i = j; i <= dom.k; ++i) {
      const Path& fi = bdd.layer_ref(i + 1);
      for (const auto& iv : regions[static_cast<std::size_t>(i - 1)]) {
        const long a = std::max(iv.lo, lo);
        const long b = std::min(iv.hi, hi);
        J += detail::trapezoid(g, a, b, [&](long gi) {
          return ham_ht_jk(spec, j, i + 1, fi[gi] - curve_at(j, gi), caps);
        });
      }
    }
  }

  WeightBreakdown w;
  w.log_full = log_weight_full(ens, bdd, spec, caps);
  w.log_jump = -detail::clamp_integral(J, caps);
  w.log_rest = w.log_full - w.log_jump;
  return w;
}

}  // namespace glines
