#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "glines/domain.hpp"
#include "glines/hull.hpp"
#include "glines/schedule.hpp"

namespace glines {

// ---------------------------------------------------------------------------
// Junction region bookkeeping.  Layer j (1-based, j <= k) is boundary data on
// [ell0, ell_j] u [r_j, r0]; layer k+1 on the whole box.

inline bool in_jct(const DomainSpec& dom, long layer, double x) {
  if (layer == dom.k + 1) return true;
  return x <= dom.ell_j(layer) + 1e-12 || x >= dom.r_j(layer) - 1e-12;
}

// Index of the deepest curve whose span contains x (1 if none).  The lower
// boundary reads layer deepest+1 there.
inline long deepest_curve(const DomainSpec& dom, double x) {
  long deepest = 1;
  for (long j = 1; j <= dom.k; ++j)
    if (x >= dom.ell_j(j) && x <= dom.r_j(j)) deepest = j;
  return deepest;
}

// ---------------------------------------------------------------------------
// Stopping endpoints (the l_j / r_j construction).  l_j is the leftmost point
// of the T/5 window around -(k+1-j)T at which the concave majorant of f_{j+1}
// has right slope <= (k+1-j)T; the fallback sits at the window's right edge.

struct StoppingWindows {
  double center_minus, center_plus;  // -(k+1-j)T and +(k+1-j)T
  double fallback_l, fallback_r;
};

inline std::pair<double, double> stopping_endpoints(const BoundaryData& boundary,
                                                    const ScheduleParams& sched,
                                                    long j, const Grid& grid) {
  if (j < 1 || j > sched.k) throw BadIndices("stopping_endpoints: j");
  const Path& f = boundary.layer_ref(j + 1);
  const double m = static_cast<double>(sched.k + 1 - j) * sched.T;
  const double half = 0.5 * sched.T;
  const double bar = 0.2 * sched.T;

  auto window_hull = [&](double center) {
    const long ia = grid.snap_index(center - half);
    const long ib = grid.snap_index(center + half);
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(ib - ia + 1));
    for (long i = ia; i <= ib; ++i) {
      xs.push_back(grid.point(i));
      ys.push_back(f[i]);
    }
    return concave_majorant(xs, ys);
  };

  // left side: scan the T/5 window left to right for right-slope <= m
  ConcaveHull hm = window_hull(-m);
  double lj = grid.snap(-m + bar);  // fallback (-(k+1-j)+1/5)T
  {
    const long ia = grid.snap_index(-m - bar);
    const long ib = grid.snap_index(-m + bar);
    for (long i = ia; i <= ib; ++i) {
      if (one_sided_slopes(hm, grid.point(i)).right <= m) {
        lj = grid.point(i);
        break;
      }
    }
  }

  // right side: scan right to left for left-slope >= -m
  ConcaveHull hp = window_hull(m);
  double rj = grid.snap(m - bar);
  {
    const long ia = grid.snap_index(m - bar);
    const long ib = grid.snap_index(m + bar);
    for (long i = ib; i >= ia; --i) {
      if (one_sided_slopes(hp, grid.point(i)).left >= -m) {
        rj = grid.point(i);
        break;
      }
    }
  }
  return {lj, rj};
}

// ---------------------------------------------------------------------------
// Lower boundary g (def g2): the layer the resampled curves interact with,
// with the upper-semicontinuous max convention at the junctions ell_i, r_i.

inline Path lower_boundary(const BoundaryData& boundary, const DomainSpec& dom) {
  for (long j = 2; j <= dom.k + 1; ++j) boundary.layer_ref(j);
  Path g = Path::from_fn(dom.grid, [&](double x) {
    return boundary.layer_ref(deepest_curve(dom, x) + 1).at(x);
  });
  for (long i = 2; i <= dom.k; ++i) {
    for (double x : {dom.ell_j(i), dom.r_j(i)}) {
      const long gi = dom.grid.index_of(x);
      g[gi] = std::max(boundary.layer_ref(i)[gi], boundary.layer_ref(i + 1)[gi]);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Pole sets and tent maps.

struct PoleTentBundle {
  DomainSpec domain;
  Path g_under;                                  // on [ell0, r0]
  std::vector<std::vector<double>> pole_sets;    // pole_sets[j-1] = P_{j+1}
  std::vector<double> joint_poles;               // P* = union
  std::vector<Path> tents;                       // tents[j-1] = Tent_{j+1} on [ell_j, r_j]
  std::vector<std::string> violations;           // invariant report, empty if clean

  PoleTentBundle(DomainSpec d, Path g) : domain(std::move(d)), g_under(std::move(g)) {}

  const std::vector<double>& poles(long j) const {
    return pole_sets[static_cast<std::size_t>(j - 1)];
  }
  const Path& tent(long j) const { return tents[static_cast<std::size_t>(j - 1)]; }
};

namespace detail {

// Greedy s-spaced selection: keep a candidate when it clears the last kept
// point by more than s.
inline void greedy_select(const std::vector<double>& cands, double s,
                          double& last, std::vector<double>& out) {
  for (double x : cands) {
    if (x - last > s) {
      out.push_back(x);
      last = x;
    }
  }
}

}  // namespace detail

inline PoleTentBundle build_pole_tent(const BoundaryData& boundary,
                                      const DomainSpec& dom,
                                      const ScheduleParams& sched) {
  const Grid& grid = dom.grid;
  if (grid.step() > sched.dprime + 1e-12 && sched.dprime > 0.0)
    throw ScheduleMismatch("build_pole_tent: grid step exceeds d'");
  PoleTentBundle bundle(dom, lower_boundary(boundary, dom));
  const double T = sched.T;
  const double s = sched.s;
  const double halfT = 0.5 * T;

  // concave majorants c_{j+1} of g_{j+1} (f_{j+1} outside (ell_j, r_j),
  // g inside) over the whole box
  std::vector<ConcaveHull> hulls;
  for (long j = 1; j <= dom.k; ++j) {
    const Path& f = boundary.layer_ref(j + 1);
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(grid.size()));
    for (long i = 0; i <= grid.n(); ++i) {
      const double x = grid.point(i);
      xs.push_back(x);
      ys.push_back((x > dom.ell_j(j) && x < dom.r_j(j)) ? bundle.g_under[i] : f[i]);
    }
    hulls.push_back(concave_majorant(xs, ys));
  }

  // shared central selection from the deepest hull; spliced into every P_{j+1}
  // so Pole_agree holds unconditionally
  std::vector<double> central;
  {
    const ConcaveHull& h = hulls.back();
    std::vector<double> cands;
    for (double x : h.support_x)
      if (x > -halfT && x < halfT) cands.push_back(x);
    double last = -std::numeric_limits<double>::infinity();
    detail::greedy_select(cands, s, last, central);
  }

  for (long j = 1; j <= dom.k; ++j) {
    const ConcaveHull& h = hulls[static_cast<std::size_t>(j - 1)];
    const double lj = dom.ell_j(j), rj = dom.r_j(j);
    std::vector<double> p;
    p.push_back(lj);
    double last = lj;
    std::vector<double> left_c, right_c;
    for (double x : h.support_x) {
      if (x > lj && x <= -halfT) left_c.push_back(x);
      if (x >= halfT && x < rj) right_c.push_back(x);
    }
    detail::greedy_select(left_c, s, last, p);
    for (double x : central) {
      p.push_back(x);  // splice; the seam at -T/2 may fall under s spacing
      last = x;
    }
    detail::greedy_select(right_c, s, last, p);
    if (p.back() < rj) p.push_back(rj);  // force-include; may leave a sub-s gap

    // d'-avoidance surgery: evict poles from (ell_i, ell_i + 2d') and
    // (r_i - 2d', r_i), replacing them by the junction point itself
    const double w = 2.0 * sched.dprime;
    for (long i = j + 1; i <= dom.k; ++i) {
      const double li = dom.ell_j(i), ri = dom.r_j(i);
      bool hit_l = false, hit_r = false;
      std::vector<double> kept;
      for (double x : p) {
        if (x > li && x < li + w)
          hit_l = true;
        else if (x > ri - w && x < ri)
          hit_r = true;
        else
          kept.push_back(x);
      }
      if (hit_l) kept.push_back(li);
      if (hit_r) kept.push_back(ri);
      p = std::move(kept);
    }

    for (double& x : p) x = grid.snap(x);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end(),
                        [&](double a, double b) { return std::fabs(a - b) < 0.5 * grid.step(); }),
            p.end());
    bundle.pole_sets.push_back(std::move(p));
  }

  std::set<double> star;
  for (const auto& ps : bundle.pole_sets) star.insert(ps.begin(), ps.end());
  bundle.joint_poles.assign(star.begin(), star.end());

  // tent maps: f_{j+1} at the window ends, g at interior poles, linear between
  for (long j = 1; j <= dom.k; ++j) {
    const auto& poles = bundle.poles(j);
    const Path& f = boundary.layer_ref(j + 1);
    Grid cg = dom.curve_grid(j);
    std::vector<double> px, py;
    for (double x : poles) {
      px.push_back(x);
      py.push_back((x == dom.ell_j(j) || x == dom.r_j(j))
                       ? f[grid.index_of(x)]
                       : bundle.g_under[grid.index_of(x)]);
    }
    Path tent = Path::from_fn(cg, [&](double x) {
      auto it = std::upper_bound(px.begin(), px.end(), x);
      if (it == px.begin()) return py.front();
      if (it == px.end()) return py.back();
      const std::size_t i = static_cast<std::size_t>(it - px.begin());
      const double w0 = (px[i] - x) / (px[i] - px[i - 1]);
      return py[i - 1] * w0 + py[i] * (1.0 - w0);
    });
    bundle.tents.push_back(std::move(tent));
  }

  // invariant report (Pole, Pole_agree, Pole_three, Pole_i, Tent bounds)
  auto note = [&](const std::string& msg) { bundle.violations.push_back(msg); };
  for (long j = 1; j <= dom.k; ++j) {
    const auto& p = bundle.poles(j);
    const double lj = dom.ell_j(j), rj = dom.r_j(j);
    if (p.front() != lj || p.back() != rj || p.size() < 2)
      note("Pole: endpoints missing for P_" + std::to_string(j + 1));
    if (static_cast<double>(p.size()) > (rj - lj) + 1.0)
      note("Pole: |P_" + std::to_string(j + 1) + "| too large");
    for (double x : p)
      if (x < lj - 1e-12 || x > rj + 1e-12)
        note("Pole: point outside [ell_j, r_j]");

    // Pole_agree against P_{k+1}
    auto central_of = [&](const std::vector<double>& ps) {
      std::vector<double> c;
      for (double x : ps)
        if (x > -halfT && x < halfT) c.push_back(x);
      return c;
    };
    if (central_of(p) != central_of(bundle.poles(dom.k)))
      note("Pole_agree: central selections differ");

    // Pole_three
    std::vector<double> in_s;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] >= 0.0 && p[i] <= s) in_s.push_back(p[i]);
    if (in_s.size() > 1) note("Pole_three: more than one pole in [0,s]");
    if (in_s.size() == 1) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != in_s[0]) continue;
        if (i > 0) {
          const double gap = p[i] - p[i - 1];
          if (gap < s - 1e-9 || gap >= 0.25 * T) note("Pole_three: left gap out of [s, T/4)");
        }
        if (i + 1 < p.size()) {
          const double gap = p[i + 1] - p[i];
          if (gap < s - 1e-9 || gap >= 0.25 * T) note("Pole_three: right gap out of [s, T/4)");
        }
      }
    }

    // Pole_i
    const double w = 2.0 * sched.dprime;
    for (long i = j; i <= dom.k; ++i) {
      for (double x : p) {
        if ((x > dom.ell_j(i) + 1e-12 && x < dom.ell_j(i) + w - 1e-12) ||
            (x > dom.r_j(i) - w + 1e-12 && x < dom.r_j(i) - 1e-12))
          note("Pole_i: pole inside a d' window");
      }
    }

    // tent bounds
    const Path& tent = bundle.tent(j);
    const double lb = 3.0 * static_cast<double>(dom.k + 1 - j) * s * T;
    for (long i = 0; i <= tent.grid().n(); ++i) {
      const double x = tent.grid().point(i);
      if (x <= lj || x >= rj) continue;
      if (tent[i] < bundle.g_under[grid.index_of(x)] - lb - 1e-9) {
        note("Tentj_lowerbound violated for Tent_" + std::to_string(j + 1));
        break;
      }
    }
    const double sb = 2.0 * static_cast<double>(dom.k + 1 - j) * T;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const double y0 = tent.at(p[i]);
      const double y1 = tent.at(p[i + 1]);
      if (std::fabs((y1 - y0) / (p[i + 1] - p[i])) > sb + 1e-9) {
        note("Tentj_slope violated for Tent_" + std::to_string(j + 1));
        break;
      }
    }
  }
  return bundle;
}

// ---------------------------------------------------------------------------
// Favorable event checker (conditions C1-C4).

struct FavorableReport {
  bool passed = true;
  std::set<std::string> failures;
  std::map<std::string, double> margins;  // worst-case slack, per condition

  void fail(const std::string& tag) {
    failures.insert(tag);
    passed = false;
  }
};

inline FavorableReport check_favorable(const std::vector<double>& ell,
                                       const std::vector<double>& r,
                                       const BoundaryData& boundary,
                                       const ScheduleParams& sched,
                                       const Grid& grid) {
  FavorableReport rep;
  const long k = sched.k;
  if (static_cast<long>(ell.size()) != k || static_cast<long>(r.size()) != k)
    throw BadParams("check_favorable: |ell| != k");
  DomainSpec dom(grid, ell, r);

  // C1: the endpoints are the stopping endpoints of the boundary layers
  double c1_mismatch = 0.0;
  for (long j = 1; j <= k; ++j) {
    auto [lj, rj] = stopping_endpoints(boundary, sched, j, grid);
    c1_mismatch = std::max({c1_mismatch, std::fabs(lj - dom.ell_j(j)),
                            std::fabs(rj - dom.r_j(j))});
  }
  rep.margins["C1"] = -c1_mismatch;
  if (c1_mismatch > 0.5 * grid.step()) rep.fail("C1");

  // C2: parabola proximity on Jct
  const double margin = sched.c2_margin();
  double worst2 = 0.0;
  for (long j = 1; j <= k + 1; ++j) {
    const Path& f = boundary.layer_ref(j);
    for (long i = 0; i <= grid.n(); ++i) {
      const double x = grid.point(i);
      if (!in_jct(dom, j, x)) continue;
      worst2 = std::max(worst2, std::fabs(f[i] + 0.5 * x * x));
    }
  }
  rep.margins["C2"] = margin - worst2;
  if (worst2 > margin) rep.fail("C2");

  // C3: oscillation over distance <= d bounded by Delta
  double worst3 = 0.0;
  const long w = static_cast<long>(std::floor(sched.d / grid.step() + 1e-9));
  for (long j = 1; j <= k + 1; ++j) {
    const Path& f = boundary.layer_ref(j);
    for (long i = 0; i <= grid.n(); ++i) {
      const double x = grid.point(i);
      if (!in_jct(dom, j, x)) continue;
      for (long l = 1; l <= w && i + l <= grid.n(); ++l) {
        if (!in_jct(dom, j, grid.point(i + l))) break;
        worst3 = std::max(worst3, std::fabs(f[i + l] - f[i]));
      }
      // sub-step oscillation under the piecewise-linear convention
      if (i < grid.n() && in_jct(dom, j, grid.point(i + 1))) {
        const double slope = std::fabs(f[i + 1] - f[i]) / grid.step();
        worst3 = std::max(worst3, slope * std::min(sched.d, grid.step()));
      }
    }
  }
  rep.margins["C3"] = sched.Delta - worst3;
  if (worst3 > sched.Delta) rep.fail("C3");

  // C4: layers out of order by at most 3*Delta
  double worst4 = -std::numeric_limits<double>::infinity();
  for (long j = 1; j <= k; ++j) {
    const Path& fj = boundary.layer_ref(j);
    const Path& fj1 = boundary.layer_ref(j + 1);
    for (long i = 0; i <= grid.n(); ++i) {
      const double x = grid.point(i);
      if (!in_jct(dom, j, x) || !in_jct(dom, j + 1, x)) continue;
      worst4 = std::max(worst4, fj1[i] - fj[i]);
    }
  }
  rep.margins["C4"] = 3.0 * sched.Delta - worst4;
  if (worst4 > 3.0 * sched.Delta) rep.fail("C4");

  return rep;
}

}  // namespace glines
