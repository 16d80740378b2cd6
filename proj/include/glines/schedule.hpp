#pragma once

#include <cmath>

#include "glines/errors.hpp"

namespace glines {

// Parameter schedule tying the box width T to the rare-event scale epsilon:
//   T   = E * max{ (log 1/eps)^{1/3}, s }
//   ell0 = -(k+1)T, r0 = (k+1)T
//   Delta = 8 log T            (local fluctuation budget)
//   d    = 64 T^{-4} (log T)^2 (pole strip width; d * e^{Delta} = 64 T^4 log^2 T)
//   d'   = T^{-3/2}            (full-interaction strip width at ell_j, r_j)
//   Delta_k = (k+2) Delta + k log k
struct ScheduleParams {
  double epsilon = 0.0;  // 0 when constructed from an explicit T
  long k = 1;
  double s = 1.0;
  double E = 0.0;  // 0 when constructed from an explicit T
  double T = 0.0;
  double ell0 = 0.0, r0 = 0.0;
  double Delta = 0.0, d = 0.0, dprime = 0.0, Delta_k = 0.0;
  // C2's parabola-proximity margin is c2_constant * T^2; the printed constant
  // is 2^-2 10^-2 but it is exposed here because the paper's own proofs invoke
  // the majorant locality with a different delta.
  double c2_constant = 0.25e-2;

  double c2_margin() const { return c2_constant * T * T; }

  void derive_from_T() {
    if (!(T > 1.0)) throw BadParams("schedule: T <= 1");
    ell0 = -(static_cast<double>(k) + 1.0) * T;
    r0 = -ell0;
    const double logT = std::log(T);
    Delta = 8.0 * logT;
    d = 64.0 * std::pow(T, -4.0) * logT * logT;
    dprime = std::pow(T, -1.5);
    Delta_k = (static_cast<double>(k) + 2.0) * Delta +
              static_cast<double>(k) * std::log(static_cast<double>(k));
  }
};

inline ScheduleParams parameter_schedule(double epsilon, long k, double s,
                                         double E) {
  if (!(E >= 10.0)) throw BadParams("parameter_schedule: E < 10");
  if (!(s >= 1.0)) throw BadParams("parameter_schedule: s < 1");
  if (k < 1) throw BadParams("parameter_schedule: k < 1");
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw BadParams("parameter_schedule: epsilon outside (0,1]");
  ScheduleParams p;
  p.epsilon = epsilon;
  p.k = k;
  p.s = s;
  p.E = E;
  p.T = E * std::max(std::cbrt(std::log(1.0 / epsilon)), s);
  p.derive_from_T();
  return p;
}

// Desk-scale entry point: T given directly, everything else derived.  The
// E >= 10 regime forces T >= 10s; small-T studies go through here.
inline ScheduleParams schedule_from_T(double T, long k, double s) {
  if (k < 1) throw BadParams("schedule_from_T: k < 1");
  if (!(s >= 1.0)) throw BadParams("schedule_from_T: s < 1");
  ScheduleParams p;
  p.k = k;
  p.s = s;
  p.T = T;
  p.derive_from_T();
  return p;
}

}  // namespace glines
