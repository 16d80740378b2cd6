#pragma once

#include <cmath>

#include "glines/errors.hpp"

namespace glines {

// Saturation rule shared by every weight computation: exponent arguments are
// clamped at kExpCap before exponentiation and accumulated integrals at
// kIntegralCap, so no weight ever becomes NaN or -inf.  exp(-kIntegralCap)
// underflows to 0 in double precision, which is the correct limit behavior
// for rejection sampling (such states are never accepted).
inline constexpr double kExpCap = 700.0;
inline constexpr double kIntegralCap = 1e6;

struct CapStats {
  long exp_hits = 0;
  long integral_hits = 0;
  void merge(const CapStats& o) {
    exp_hits += o.exp_hits;
    integral_hits += o.integral_hits;
  }
};

// The soft-ordering Hamiltonian family H_t(x) = exp(t^{1/3} x), t >= 1.
struct HamiltonianSpec {
  double t = 1.0;
  double t_cbrt = 1.0;

  explicit HamiltonianSpec(double t_in) : t(t_in) {
    if (!(t >= 1.0)) throw BadParams("HamiltonianSpec: t < 1");
    t_cbrt = std::cbrt(t);
  }
};

inline double capped_exp(double arg, CapStats* caps = nullptr) {
  if (arg > kExpCap) {
    if (caps) ++caps->exp_hits;
    arg = kExpCap;
  } else if (arg < -kExpCap) {
    arg = -kExpCap;  // underflows to ~0 anyway; keeps exp() in range
  }
  return std::exp(arg);
}

inline double ham_ht(const HamiltonianSpec& spec, double x,
                     CapStats* caps = nullptr) {
  return capped_exp(spec.t_cbrt * x, caps);
}

// Weakened chain Hamiltonian H_t^{j,k}(x) = (k-1)^{-1} exp(t^{1/3} x / (k-j)),
// for 1 <= j < k.  H_t^{k-1,k} has full exponent rate; H_t^{1,2} == H_t.
inline double ham_ht_jk(const HamiltonianSpec& spec, long j, long k, double x,
                        CapStats* caps = nullptr) {
  if (j < 1 || j >= k) throw BadIndices("ham_ht_jk: need 1 <= j < k");
  const double arg = spec.t_cbrt * x / static_cast<double>(k - j);
  return capped_exp(arg, caps) / static_cast<double>(k - 1);
}

}  // namespace glines
