#pragma once

#include <optional>
#include <vector>

#include "glines/grid.hpp"

namespace glines {

// The staggered resampling domain: curve j lives on [ell[j-1], r[j-1]] (an
// upside-down pyramid of intervals), all endpoints snapped to a shared grid
// on [ell0, r0].
struct DomainSpec {
  Grid grid;                 // shared grid spanning [ell0, r0]
  long k = 0;                // number of resampled curves
  std::vector<double> ell;   // ell[0..k-1] = ell_1..ell_k (snapped)
  std::vector<double> r;     // r[0..k-1]   = r_1..r_k (snapped)

  DomainSpec(Grid g, std::vector<double> ell_in, std::vector<double> r_in)
      : grid(g), k(static_cast<long>(ell_in.size())), ell(std::move(ell_in)), r(std::move(r_in)) {
    if (static_cast<long>(r.size()) != k || k < 1)
      throw BadParams("DomainSpec: need k >= 1 and |ell| == |r|");
    for (long j = 0; j < k; ++j) {
      ell[static_cast<std::size_t>(j)] = grid.snap(ell[static_cast<std::size_t>(j)]);
      r[static_cast<std::size_t>(j)] = grid.snap(r[static_cast<std::size_t>(j)]);
    }
    double prev = grid.a();
    for (long j = 0; j < k; ++j) {
      if (!(prev < ell_j(j + 1))) throw BadOrdering("DomainSpec: ell ordering");
      prev = ell_j(j + 1);
    }
    if (!(prev < 0.0)) throw BadOrdering("DomainSpec: ell_k >= 0");
    prev = grid.b();
    for (long j = 0; j < k; ++j) {
      if (!(r_j(j + 1) < prev)) throw BadOrdering("DomainSpec: r ordering");
      prev = r_j(j + 1);
    }
    if (!(prev > 0.0)) throw BadOrdering("DomainSpec: r_k <= 0");
  }

  double ell0() const { return grid.a(); }
  double r0() const { return grid.b(); }
  // 1-based accessors matching the ell_j / r_j indexing.
  double ell_j(long j) const { return ell[static_cast<std::size_t>(j - 1)]; }
  double r_j(long j) const { return r[static_cast<std::size_t>(j - 1)]; }

  // r_k > s is required by the ordering assumption; validated where s is known.
  void require_span(double s) const {
    if (!(r_j(k) > s)) throw BadOrdering("DomainSpec: r_k <= s");
  }

  Grid curve_grid(long j) const {
    return grid.section(grid.index_of(ell_j(j)), grid.index_of(r_j(j)));
  }
};

// k curves, curve j defined exactly on [ell_j, r_j].
struct LineEnsemble {
  DomainSpec domain;
  std::vector<Path> curves;  // curves[j-1] has grid span [ell_j, r_j]

  LineEnsemble(DomainSpec d, std::vector<Path> c)
      : domain(std::move(d)), curves(std::move(c)) {
    if (static_cast<long>(curves.size()) != domain.k)
      throw DomainMismatch("LineEnsemble: curve count != k");
    for (long j = 1; j <= domain.k; ++j) {
      const Grid& g = curve(j).grid();
      if (g.a() != domain.ell_j(j) || g.b() != domain.r_j(j))
        throw DomainMismatch("LineEnsemble: curve span != [ell_j, r_j]");
    }
  }

  const Path& curve(long j) const { return curves[static_cast<std::size_t>(j - 1)]; }
  Path& curve(long j) { return curves[static_cast<std::size_t>(j - 1)]; }
};

// Boundary data for the resampling: entrance/exit values for each curve and
// the k+1 neighbor layers f_1..f_{k+1}, each stored on the full box [ell0,r0]
// (the weight only ever reads the Jct part).  An absent layer is the
// "no interaction" sentinel and contributes nothing to any weight.
struct BoundaryData {
  std::vector<double> entrance;               // entrance[j-1] = f_j(ell_j)
  std::vector<double> exit;                   // exit[j-1]     = f_j(r_j)
  std::vector<std::optional<Path>> layers;    // layers[j-1] = f_j on [ell0,r0]

  static BoundaryData from_layers(const DomainSpec& dom,
                                  std::vector<std::optional<Path>> ls) {
    if (static_cast<long>(ls.size()) != dom.k + 1)
      throw DomainMismatch("BoundaryData: need k+1 layers");
    BoundaryData b;
    b.layers = std::move(ls);
    for (long j = 1; j <= dom.k; ++j) {
      const auto& fj = b.layers[static_cast<std::size_t>(j - 1)];
      if (!fj) throw LayerMissing("BoundaryData: f_j absent for j <= k");
      b.entrance.push_back(fj->at(dom.ell_j(j)));
      b.exit.push_back(fj->at(dom.r_j(j)));
    }
    return b;
  }

  const std::optional<Path>& layer(long j) const {
    return layers[static_cast<std::size_t>(j - 1)];
  }
  bool has_layer(long j) const {
    return j >= 1 && j <= static_cast<long>(layers.size()) && layer(j).has_value();
  }
  const Path& layer_ref(long j) const {
    if (!has_layer(j)) throw LayerMissing("layer f_" + std::to_string(j));
    return *layer(j);
  }
  double entrance_j(long j) const { return entrance[static_cast<std::size_t>(j - 1)]; }
  double exit_j(long j) const { return exit[static_cast<std::size_t>(j - 1)]; }
};

}  // namespace glines
