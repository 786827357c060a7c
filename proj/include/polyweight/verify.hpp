#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyweight/measures.hpp"
#include "polyweight/multipartite.hpp"
#include "polyweight/polygamy.hpp"
#include "polyweight/states.hpp"

namespace polyweight {

struct RunConfig {
  std::uint64_t seed = 20240915;
  long samples = 0;  // 0 = claim default
  std::map<std::string, double> tolerances;
};

struct VerificationSummary {
  std::string claim;
  long samples = 0;
  long violations = 0;
  double max_residual = 0.0;
  std::optional<double> supremum;
  double wall_ms = 0.0;
  bool passed = false;
};

namespace verify_detail {

inline const std::map<std::string, double>& known_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"supremum", 1e-3},  {"equality", 1e-12},   {"saturation", 1e-9},
      {"power", 1e-6},     {"oracle", 5e-3},      {"gamma-oracle", 1e-2},
      {"bijection", 1e-7}, {"residual", 1e-9},    {"triangle", 1e-9},
      {"wootters", 2e-3},
  };
  return defaults;
}

inline double tol(const RunConfig& cfg, const std::string& name) {
  const auto& defaults = known_tolerances();
  const auto dit = defaults.find(name);
  if (dit == defaults.end()) throw contract_error("unknown tolerance name: " + name);
  const auto it = cfg.tolerances.find(name);
  return it != cfg.tolerances.end() ? it->second : dit->second;
}

inline void check_tolerance_names(const RunConfig& cfg) {
  for (const auto& [name, value] : cfg.tolerances) {
    if (!known_tolerances().count(name)) throw contract_error("unknown tolerance name: " + name);
    (void)value;
  }
}

inline double half_normal(std::uint64_t seed, std::uint64_t& ctr) {
  return std::abs(rng::normal(seed, ctr++));
}

// Generalized Schmidt family with per-component offsets keeping the listed
// coefficients bounded away from zero, then normalized.
inline SchmidtFamily random_family(std::uint64_t seed, const double floors[5],
                                   bool order_23 = false) {
  std::uint64_t ctr = 0;
  double l[5];
  for (int j = 0; j < 5; ++j) l[j] = floors[j] + 0.4 * half_normal(seed, ctr);
  if (order_23 && l[2] > l[3]) std::swap(l[2], l[3]);
  double s = 0.0;
  for (double x : l) s += x * x;
  const double inv = 1.0 / std::sqrt(s);
  SchmidtFamily fam;
  fam.lambda0 = l[0] * inv;
  fam.lambda1 = l[1] * inv;
  fam.lambda2 = l[2] * inv;
  fam.lambda3 = l[3] * inv;
  fam.lambda4 = l[4] * inv;
  fam.phi = 2.0 * std::numbers::pi * rng::uniform01(seed, 1000 + ctr);
  return fam;
}

// Triple with finite weight: pair ratios bounded inside (0, 1).
inline TripleValues random_triple(std::uint64_t seed) {
  const double q1 = 0.5 + rng::uniform01(seed, 0);
  const double ra = 0.05 + 0.9 * rng::uniform01(seed, 1);
  const double rb = 0.05 + 0.9 * rng::uniform01(seed, 2);
  return {q1, ra * q1, rb * q1};
}

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace verify_detail

// --- individual claims ----------------------------------------------------

// Supremum of the weight surface g(x, y) over a coarse grid on [0, 1000]^2.
inline VerificationSummary claim_fig3_supremum(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const double target = std::sqrt(2.0) - 1.0;
  const long steps = cfg.samples > 0 ? cfg.samples : 1001;
  VerificationSummary s{.claim = "fig3-supremum", .samples = steps * steps};
  double max_g = 0.0;
  for (long i = 0; i < steps; ++i) {
    const double x = 1000.0 * i / (steps - 1);
    for (long j = 0; j < steps; ++j) {
      const double g = gamma_surface(x, 1000.0 * j / (steps - 1));
      if (g > target + kEqualityTol) ++s.violations;
      max_g = std::max(max_g, g);
    }
  }
  s.supremum = max_g;
  s.max_residual = std::abs(max_g - target);
  s.passed = s.violations == 0 && s.max_residual <= verify_detail::tol(cfg, "supremum");
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// W-type states (lambda4 = 0) saturate C_a^2 additivity with critical power 2.
inline VerificationSummary claim_w_saturation_ca(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long n = cfg.samples > 0 ? cfg.samples : 1000;
  VerificationSummary s{.claim = "w-saturation-ca", .samples = n};
  const double sat_tol = verify_detail::tol(cfg, "saturation");
  const double pow_tol = verify_detail::tol(cfg, "power");
  const double floors[5] = {0.2, 0.0, 0.2, 0.2, 0.0};
  for (long i = 0; i < n; ++i) {
    SchmidtFamily fam = verify_detail::random_family(rng::derive_seed(cfg.seed, i), floors);
    // Project onto the W-type slice and renormalize.
    fam.lambda4 = 0.0;
    const double s2 = fam.lambda0 * fam.lambda0 + fam.lambda1 * fam.lambda1 +
                      fam.lambda2 * fam.lambda2 + fam.lambda3 * fam.lambda3;
    const double inv = 1.0 / std::sqrt(s2);
    fam.lambda0 *= inv;
    fam.lambda1 *= inv;
    fam.lambda2 *= inv;
    fam.lambda3 *= inv;

    const TripleValues v{assistance_closed_schmidt(fam, SchmidtCut::OneToGroup),
                         assistance_closed_schmidt(fam, SchmidtCut::PairAB),
                         assistance_closed_schmidt(fam, SchmidtCut::PairAC)};
    const double resid = std::abs(v.one_to_group * v.one_to_group - v.pair_ab * v.pair_ab -
                                  v.pair_ac * v.pair_ac);
    const CriticalPower cp = critical_power(v);
    const double perr = cp.kind == PowerKind::Finite ? std::abs(cp.value - 2.0) : 1e300;
    s.max_residual = std::max(s.max_residual, resid);
    if (resid > sat_tol || perr > pow_tol) ++s.violations;
  }
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// Oracle-based tau_a weights reproduce gamma = lambda2^2/(lambda2^2+lambda4^2).
inline VerificationSummary claim_tau_a_weight(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long n = cfg.samples > 0 ? cfg.samples : 100;
  VerificationSummary s{.claim = "tau-a-weight", .samples = n};
  const double gtol = verify_detail::tol(cfg, "gamma-oracle");
  const double floors[5] = {0.45, 0.0, 0.35, 0.35, 0.1};
  for (long i = 0; i < n; ++i) {
    const SchmidtFamily fam =
        verify_detail::random_family(rng::derive_seed(cfg.seed, i), floors, /*order_23=*/true);
    const PureState psi = schmidt_state(fam);
    OracleConfig ocfg;
    ocfg.seed = rng::derive_seed(cfg.seed, 7000 + i);
    const double tau_ab = assistance_oracle(reduce(psi, {0, 1}),
                                            MeasureKind::TangleOfAssistance, ocfg).value;
    const double tau_ac = assistance_oracle(reduce(psi, {0, 2}),
                                            MeasureKind::TangleOfAssistance, ocfg).value;
    const double total = tangle_pure(psi, {0});
    const double lo = std::min(tau_ab, tau_ac), hi = std::max(tau_ab, tau_ac);
    const double gamma = (total - hi) / lo;
    const double target = fam.lambda2 * fam.lambda2 /
                          (fam.lambda2 * fam.lambda2 + fam.lambda4 * fam.lambda4);
    const double resid = std::abs(gamma - target);
    s.max_residual = std::max(s.max_residual, resid);
    if (resid > gtol) ++s.violations;
  }
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// delta_C = 2/sqrt(3) - 1 at theta = phi = pi/4.
inline VerificationSummary claim_delta_c_example(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  VerificationSummary s{.claim = "delta-c-example", .samples = 1};
  const AngleFamily fam{std::numbers::pi / 4.0, std::numbers::pi / 4.0};
  const WeightReport rep = delta_weight(angle_concurrence_triple(fam));
  const double target = 2.0 / std::sqrt(3.0) - 1.0;
  s.max_residual = rep.kind == WeightKind::Finite ? std::abs(rep.weight - target) : 1e300;
  if (s.max_residual > verify_detail::tol(cfg, "equality")) ++s.violations;
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// The separable state (|000> + |110> + |111>)/sqrt(3): concurrence is
// non-polygamous (infinite weight) despite C_{A|BC} = 2 sqrt(2)/3.
inline VerificationSummary claim_separable_counterexample(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  VerificationSummary s{.claim = "separable-counterexample", .samples = 1};
  std::vector<complex> amps(8, 0.0);
  const double a = 1.0 / std::sqrt(3.0);
  amps[0] = a;  // |000>
  amps[6] = a;  // |110>
  amps[7] = a;  // |111>
  const PureState psi({{2, 2, 2}}, std::move(amps));

  const double c_abc = concurrence_pure(psi, {0});
  const double c_ab = wootters_concurrence(reduce(psi, {0, 1}));
  const double c_ac = wootters_concurrence(reduce(psi, {0, 2}));

  const double r1 = std::abs(c_abc - 2.0 * std::sqrt(2.0) / 3.0);
  const double r2 = std::abs(c_ab - 0.667);
  s.max_residual = std::max(r1, c_ac);
  if (r1 > verify_detail::tol(cfg, "equality")) ++s.violations;
  if (r2 > verify_detail::tol(cfg, "wootters")) ++s.violations;
  if (c_ac > verify_detail::tol(cfg, "saturation")) ++s.violations;
  const WeightReport rep = gamma_weight({c_abc, c_ab, c_ac});
  if (rep.kind != WeightKind::Infinite || rep.regime != Regime::Axis) ++s.violations;
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// gamma = (1 + K^beta*)^(1/beta*) - K reproduces the per-state weight.
inline VerificationSummary claim_remark_bijection(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long n = cfg.samples > 0 ? cfg.samples : 10000;
  VerificationSummary s{.claim = "remark-bijection", .samples = n};
  const double btol = verify_detail::tol(cfg, "bijection");
  long tested = 0;
  for (long i = 0; i < n; ++i) {
    const TripleValues v = verify_detail::random_triple(rng::derive_seed(cfg.seed, i));
    const WeightReport rep = gamma_weight(v);
    if (rep.kind != WeightKind::Finite || !rep.k_ratio_defined || rep.k_ratio <= 1.0 + 1e-9) {
      continue;
    }
    if (rep.critical_power.kind != PowerKind::Finite) continue;
    ++tested;
    const double gamma = gamma_from_k_beta(rep.k_ratio, rep.critical_power.value);
    const double resid = std::abs(gamma - rep.weight);
    s.max_residual = std::max(s.max_residual, resid);
    if (resid > btol) ++s.violations;
  }
  s.passed = s.violations == 0 && tested > n / 4;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// Appendix A: (1+t)^x <= 1 + x t^x on the unit square, and the implication
// "beta gamma^beta <= 1 and gamma <= K  =>  power inequality at beta".
inline VerificationSummary claim_bernoulli_grid(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long grid = 1000;
  const long n = cfg.samples > 0 ? cfg.samples : 100000;
  VerificationSummary s{.claim = "bernoulli-grid", .samples = grid * grid + n};
  for (long i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / (grid - 1);
    for (long j = 0; j < grid; ++j) {
      if (!bernoulli_bound_holds(x, static_cast<double>(j) / (grid - 1))) ++s.violations;
    }
  }
  for (long i = 0; i < n; ++i) {
    const std::uint64_t seed = rng::derive_seed(cfg.seed, 50000 + i);
    const TripleValues v = verify_detail::random_triple(seed);
    const WeightReport rep = gamma_weight(v);
    if (rep.kind != WeightKind::Finite || !rep.k_ratio_defined) continue;
    const double beta = 1e-3 + (1.0 - 1e-3) * rng::uniform01(seed, 9);
    if (rep.weight > rep.k_ratio + kEqualityTol) continue;
    if (!weight_power_feasible(beta, rep.weight)) continue;
    if (!power_inequality_holds(v, beta)) ++s.violations;
  }
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// formation oracle vs Wootters, and assistance oracle vs the Schmidt closed forms.
inline VerificationSummary claim_oracle_equivalence(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long n = cfg.samples > 0 ? cfg.samples : 100;
  VerificationSummary s{.claim = "oracle-equivalence", .samples = 2 * n};
  const double otol = verify_detail::tol(cfg, "oracle");
  for (long i = 0; i < n; ++i) {
    // Rank-2 two-qubit states: one-qubit marginals of Haar 3-qubit pures.
    const PureState psi = haar_random_pure({{2, 2, 2}}, rng::derive_seed(cfg.seed, i));
    const DensityMatrix rho = reduce(psi, {0, 1});
    OracleConfig ocfg;
    ocfg.seed = rng::derive_seed(cfg.seed, 40000 + i);
    const double resid =
        std::abs(formation_oracle(rho, ocfg).value - wootters_concurrence(rho));
    s.max_residual = std::max(s.max_residual, resid);
    if (resid > otol) ++s.violations;
  }
  const double floors[5] = {0.3, 0.1, 0.25, 0.25, 0.1};
  for (long i = 0; i < n; ++i) {
    const SchmidtFamily fam =
        verify_detail::random_family(rng::derive_seed(cfg.seed, 80000 + i), floors);
    const PureState psi = schmidt_state(fam);
    OracleConfig ocfg;
    ocfg.seed = rng::derive_seed(cfg.seed, 90000 + i);
    const double ora_ab = assistance_oracle(reduce(psi, {0, 1}),
                                            MeasureKind::ConcurrenceOfAssistance, ocfg).value;
    const double ora_ac = assistance_oracle(reduce(psi, {0, 2}),
                                            MeasureKind::ConcurrenceOfAssistance, ocfg).value;
    const double resid =
        std::max(std::abs(ora_ab - assistance_closed_schmidt(fam, SchmidtCut::PairAB)),
                 std::abs(ora_ac - assistance_closed_schmidt(fam, SchmidtCut::PairAC)));
    s.max_residual = std::max(s.max_residual, resid);
    if (resid > otol) ++s.violations;
  }
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// One-to-group triangle inequality E_{i|jk} <= E_{j|ik} + E_{k|ij} on Haar
// samples, for concurrence and entanglement entropy.
inline VerificationSummary claim_qian_triangle(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long n = cfg.samples > 0 ? cfg.samples : 10000;
  VerificationSummary s{.claim = "qian-triangle", .samples = n};
  const double ttol = verify_detail::tol(cfg, "triangle");
  for (long i = 0; i < n; ++i) {
    const PureState psi = haar_random_pure({{2, 2, 2}}, rng::derive_seed(cfg.seed, i));
    const double c[3] = {concurrence_pure(psi, {0}), concurrence_pure(psi, {1}),
                         concurrence_pure(psi, {2})};
    const double h[3] = {entanglement_entropy(psi, {0}), entanglement_entropy(psi, {1}),
                         entanglement_entropy(psi, {2})};
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, cidx = (a + 2) % 3;
      const double rc = c[a] - c[b] - c[cidx];
      const double rh = h[a] - h[b] - h[cidx];
      s.max_residual = std::max({s.max_residual, rc, rh});
      if (rc > ttol || rh > ttol) ++s.violations;
    }
  }
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// Theorem 2 telescoping on Haar 4-qubit states.
inline VerificationSummary claim_theorem2_telescoping(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long n = cfg.samples > 0 ? cfg.samples : 50;
  VerificationSummary s{.claim = "theorem2-telescoping", .samples = n};
  const double rtol = verify_detail::tol(cfg, "residual");
  for (long i = 0; i < n; ++i) {
    const PureState psi = haar_random_pure({{2, 2, 2, 2}}, rng::derive_seed(cfg.seed, i));
    OracleConfig ocfg;
    ocfg.seed = rng::derive_seed(cfg.seed, 60000 + i);
    const ChainReport rep = chain_weights(psi, MeasureKind::ConcurrenceOfAssistance, ocfg);
    const Theorem2Check chk = verify_theorem2(rep);
    s.max_residual = std::max(s.max_residual, rep.expansion_residual);
    if (rep.expansion_residual > rtol) ++s.violations;
    if (chk.applicable && !chk.holds) ++s.violations;  // Not-Applicable is fine, false is not
  }
  s.passed = s.violations == 0;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

// The power inequality flips exactly at the critical power.
inline VerificationSummary claim_theorem1_threshold(const RunConfig& cfg) {
  const auto t0 = verify_detail::Clock::now();
  const long n = cfg.samples > 0 ? cfg.samples : 10000;
  VerificationSummary s{.claim = "theorem1-threshold", .samples = n};
  long tested = 0;
  for (long i = 0; i < n; ++i) {
    const TripleValues v = verify_detail::random_triple(rng::derive_seed(cfg.seed, i));
    const CriticalPower cp = critical_power(v);
    if (cp.kind != PowerKind::Finite) continue;
    ++tested;
    if (!power_inequality_holds(v, 0.99 * cp.value)) ++s.violations;
    if (power_inequality_holds(v, 1.01 * cp.value + 1e-6)) ++s.violations;
  }
  s.passed = s.violations == 0 && tested > n / 4;
  s.wall_ms = verify_detail::elapsed_ms(t0);
  return s;
}

inline const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "fig3-supremum",          "w-saturation-ca",      "tau-a-weight",
      "delta-c-example",        "separable-counterexample", "remark-bijection",
      "bernoulli-grid",         "oracle-equivalence",   "qian-triangle",
      "theorem2-telescoping",   "theorem1-threshold",
  };
  return ids;
}

inline VerificationSummary run_claim(const std::string& id, const RunConfig& cfg) {
  verify_detail::check_tolerance_names(cfg);
  if (id == "fig3-supremum") return claim_fig3_supremum(cfg);
  if (id == "w-saturation-ca") return claim_w_saturation_ca(cfg);
  if (id == "tau-a-weight") return claim_tau_a_weight(cfg);
  if (id == "delta-c-example") return claim_delta_c_example(cfg);
  if (id == "separable-counterexample") return claim_separable_counterexample(cfg);
  if (id == "remark-bijection") return claim_remark_bijection(cfg);
  if (id == "bernoulli-grid") return claim_bernoulli_grid(cfg);
  if (id == "oracle-equivalence") return claim_oracle_equivalence(cfg);
  if (id == "qian-triangle") return claim_qian_triangle(cfg);
  if (id == "theorem2-telescoping") return claim_theorem2_telescoping(cfg);
  if (id == "theorem1-threshold") return claim_theorem1_threshold(cfg);
  throw contract_error("unknown claim id: " + id);
}

}  // namespace polyweight
