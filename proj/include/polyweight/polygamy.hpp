#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyweight/errors.hpp"
#include "polyweight/states.hpp"

namespace polyweight {

inline constexpr double kEqualityTol = 1e-12;

enum class Regime { Blue, Orange, Yellow, White, Axis };
enum class WeightKind { Finite, Infinite, Degenerate };
enum class PowerKind { Finite, Unbounded, UnboundedAtCap, NonPolygamous };

struct CriticalPower {
  PowerKind kind = PowerKind::Finite;
  double value = 0.0;  // meaningful only when kind == Finite
};

// One-to-group value Q_{A|BC} plus the two pair values.
struct TripleValues {
  double one_to_group = 0.0;
  double pair_ab = 0.0;
  double pair_ac = 0.0;

  void validate() const {
    for (double v : {one_to_group, pair_ab, pair_ac}) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw contract_error("triple values must be >= 0");
    }
    // Q is nonincreasing under partial trace.
    if (one_to_group < std::max(pair_ab, pair_ac) - 1e-9) {
      throw contract_error("one-to-group value below a pair value");
    }
  }
};

// The three one-to-group entanglements E_{A|BC}, E_{B|AC}, E_{C|AB}.
struct OneToGroupValues {
  double e_a = 0.0;
  double e_b = 0.0;
  double e_c = 0.0;

  void validate() const {
    for (double v : {e_a, e_b, e_c}) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw contract_error("values must be >= 0");
    }
  }
};

struct WeightReport {
  WeightKind kind = WeightKind::Finite;
  double weight = 0.0;  // 0 when Degenerate, unused when Infinite
  Regime regime = Regime::Blue;
  CriticalPower critical_power;
  bool k_ratio_defined = false;
  double k_ratio = 0.0;  // max/min of the two smaller values, when defined
};

inline Regime classify_regime(WeightKind kind, double weight) {
  if (kind == WeightKind::Infinite) return Regime::Axis;
  if (weight <= 1.0) return Regime::Blue;
  if (weight <= 2.0) return Regime::Orange;
  if (weight <= 3.0) return Regime::Yellow;
  return Regime::White;
}

// Q^beta_{A|BC} <= Q^beta_{AB} + Q^beta_{AC}, with 1e-12 slack.
inline bool power_inequality_holds(const TripleValues& v, double beta) {
  if (!(beta > 0.0)) throw contract_error("beta must be positive");
  return std::pow(v.pair_ab, beta) + std::pow(v.pair_ac, beta) -
             std::pow(v.one_to_group, beta) >=
         -kEqualityTol;
}

namespace detail {

// Root of ra^beta + rb^beta = 1 for ratios in (0,1): strictly decreasing in
// beta, so bisection on [1e-6, 64] finds the unique crossing.
inline CriticalPower critical_from_ratios(double ra, double rb) {
  const double hi_ratio = std::max(ra, rb);
  const double lo_ratio = std::min(ra, rb);
  if (hi_ratio >= 1.0 - kEqualityTol) return {PowerKind::Unbounded, 0.0};
  if (lo_ratio <= kEqualityTol) return {PowerKind::NonPolygamous, 0.0};

  auto f = [&](double beta) { return std::pow(ra, beta) + std::pow(rb, beta) - 1.0; };
  double lo = 1e-6, hi = 64.0;
  if (f(hi) > 0.0) return {PowerKind::UnboundedAtCap, 0.0};
  if (f(lo) < 0.0) throw numerical_error("critical power bracket failure");
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= 0.0 ? lo : hi) = mid;
  }
  return {PowerKind::Finite, 0.5 * (lo + hi)};
}

}  // namespace detail

// Largest beta with Q^beta polygamous: the unique root of
// (Q_AB/Q_A|BC)^beta + (Q_AC/Q_A|BC)^beta = 1.
inline CriticalPower critical_power(const TripleValues& v) {
  v.validate();
  if (!(v.one_to_group > 0.0)) throw contract_error("one-to-group value must be positive");
  return detail::critical_from_ratios(v.pair_ab / v.one_to_group, v.pair_ac / v.one_to_group);
}

// Polygamy weight gamma of Definition 1: the coefficient on the smaller pair
// value making Q_{A|BC} = gamma * min + max exact.
inline WeightReport gamma_weight(const TripleValues& v) {
  v.validate();
  WeightReport rep;
  const double lo = std::min(v.pair_ab, v.pair_ac);
  const double hi = std::max(v.pair_ab, v.pair_ac);
  if (lo > kEqualityTol) {
    rep.kind = WeightKind::Finite;
    rep.weight = std::max(0.0, (v.one_to_group - hi) / lo);
    rep.k_ratio_defined = true;
    rep.k_ratio = hi / lo;
  } else if (v.one_to_group - hi > kEqualityTol) {
    rep.kind = WeightKind::Infinite;  // non-polygamous
  } else {
    rep.kind = WeightKind::Degenerate;  // equality holds for every gamma
  }
  rep.regime = classify_regime(rep.kind, rep.weight);
  if (v.one_to_group > kEqualityTol) {
    rep.critical_power = critical_power(v);
  } else {
    rep.critical_power = {PowerKind::Unbounded, 0.0};
  }
  return rep;
}

// Polygamy weight delta of Definition 2 among the one-to-group entanglements,
// sorted descending internally: e1 = e2 + delta * e3.
inline WeightReport delta_weight(const OneToGroupValues& v) {
  v.validate();
  double e[3] = {v.e_a, v.e_b, v.e_c};
  std::sort(e, e + 3, std::greater<>());
  WeightReport rep;
  if (e[2] > kEqualityTol) {
    rep.kind = WeightKind::Finite;
    rep.weight = std::max(0.0, (e[0] - e[1]) / e[2]);
    rep.k_ratio_defined = true;
    rep.k_ratio = e[1] > 0.0 ? e[1] / e[2] : 1.0;
  } else if (e[0] - e[1] > kEqualityTol) {
    rep.kind = WeightKind::Infinite;
  } else {
    rep.kind = WeightKind::Degenerate;  // holds for any delta
  }
  rep.regime = classify_regime(rep.kind, rep.weight);
  if (e[0] > kEqualityTol) {
    rep.critical_power = detail::critical_from_ratios(e[1] / e[0], e[2] / e[0]);
  } else {
    rep.critical_power = {PowerKind::Unbounded, 0.0};
  }
  return rep;
}

// Largest eta with E^eta_{A|BC} <= E^eta_{B|AC} + E^eta_{C|AB} (values sorted
// descending first).
inline CriticalPower eta_power_critical(const OneToGroupValues& v) {
  v.validate();
  double e[3] = {v.e_a, v.e_b, v.e_c};
  std::sort(e, e + 3, std::greater<>());
  if (!(e[0] > 0.0)) throw contract_error("largest one-to-group value must be positive");
  return detail::critical_from_ratios(e[1] / e[0], e[2] / e[0]);
}

// Closed-form weight for the generalized Schmidt family (lambda2 <= lambda3):
// gamma = sqrt(1 + l3^2/(l2^2+l4^2)) - sqrt((l3^2+l4^2)/(l2^2+l4^2)).
inline double gamma_closed_schmidt(const SchmidtFamily& p) {
  p.validate();
  if (p.lambda2 > p.lambda3 + kEqualityTol) throw contract_error("requires lambda2 <= lambda3");
  const double l2 = p.lambda2 * p.lambda2;
  const double l3 = p.lambda3 * p.lambda3;
  const double l4 = p.lambda4 * p.lambda4;
  if (!(l2 + l4 > 0.0)) throw contract_error("requires lambda2^2 + lambda4^2 > 0");
  return std::sqrt(1.0 + l3 / (l2 + l4)) - std::sqrt((l3 + l4) / (l2 + l4));
}

// g(x, y) = sqrt(1 + y^2/(1+x^2)) - sqrt((1+y^2)/(1+x^2)), x = l2/l4, y = l3/l4.
// The formula assumes lambda2 <= lambda3; for x > y the two pair cuts simply
// swap roles, so the surface is symmetrized by sorting the arguments.
inline double gamma_surface(double x, double y) {
  if (x > y) std::swap(x, y);
  const double x2 = x * x, y2 = y * y;
  return std::sqrt(1.0 + y2 / (1.0 + x2)) - std::sqrt((1.0 + y2) / (1.0 + x2));
}

// gamma = (1 + K^beta)^(1/beta) - K with K = Q_AC/Q_AB > 1, at the saturating beta.
inline double gamma_from_k_beta(double k, double beta) {
  if (!(k > 1.0) || !(beta > 0.0)) throw contract_error("requires k > 1 and beta > 0");
  return std::pow(1.0 + std::pow(k, beta), 1.0 / beta) - k;
}

// Feasibility region of the Theorem 1 proof: beta * gamma^beta <= 1.
inline bool weight_power_feasible(double beta, double gamma) {
  if (!(beta > 0.0 && beta <= 1.0)) throw contract_error("beta must lie in (0, 1]");
  if (!(gamma >= 0.0)) throw contract_error("gamma must be >= 0");
  return beta * std::pow(gamma, beta) <= 1.0 + kEqualityTol;
}

// (1 + t)^x <= 1 + x t^x on the unit square.
inline bool bernoulli_bound_holds(double x, double t) {
  if (!(x >= 0.0 && x <= 1.0 && t >= 0.0 && t <= 1.0)) {
    throw contract_error("x, t must lie in [0, 1]");
  }
  return std::pow(1.0 + t, x) <= 1.0 + x * std::pow(t, x) + kEqualityTol;
}

// Closed-form one-to-group concurrences of the angle family:
// C_{A|BC} = 2 sin(t) cos(f) sqrt(sin^2 t sin^2 f + cos^2 t),
// C_{B|AC} = sin(2t),
// C_{C|AB} = 2 sin(t) sin(f) sqrt(sin^2 t cos^2 f + cos^2 t).
inline OneToGroupValues angle_concurrence_triple(const AngleFamily& p) {
  p.validate();
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sf = std::sin(p.phi), cf = std::cos(p.phi);
  OneToGroupValues v;
  v.e_a = 2.0 * st * cf * std::sqrt(st * st * sf * sf + ct * ct);
  v.e_b = std::sin(2.0 * p.theta);
  v.e_c = 2.0 * st * sf * std::sqrt(st * st * cf * cf + ct * ct);
  return v;
}

// True iff (theta, phi) satisfies C_{A|BC} >= C_{B|AC} >= C_{C|AB} (closed
// boundaries: >= with 1e-12 slack).
inline bool angle_in_ordering_region(const AngleFamily& p) {
  const OneToGroupValues v = angle_concurrence_triple(p);
  return v.e_a >= v.e_b - kEqualityTol && v.e_b >= v.e_c - kEqualityTol;
}

// Closed-form delta_C of the angle family. On separable boundaries (smallest
// sorted concurrence zero) the equality holds for any delta; the reported
// value there is 1. Points violating the ordering region raise region_error.
inline double delta_c_closed(const AngleFamily& p) {
  const OneToGroupValues v = angle_concurrence_triple(p);
  double e[3] = {v.e_a, v.e_b, v.e_c};
  std::sort(e, e + 3, std::greater<>());
  if (e[2] <= kEqualityTol) return 1.0;
  if (!angle_in_ordering_region(p)) {
    throw region_error("(theta, phi) outside the C_A|BC >= C_B|AC >= C_C|AB region");
  }
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sf = std::sin(p.phi), cf = std::cos(p.phi);
  return (cf * std::sqrt(st * st * sf * sf + ct * ct) - ct) /
         (sf * std::sqrt(st * st * cf * cf + ct * ct));
}

}  // namespace polyweight
