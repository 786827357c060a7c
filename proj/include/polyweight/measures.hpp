#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "polyweight/errors.hpp"
#include "polyweight/matrix.hpp"
#include "polyweight/states.hpp"

namespace polyweight {

enum class MeasureKind {
  Concurrence,
  Tangle,
  ConcurrenceOfAssistance,
  TangleOfAssistance,
  EntanglementEntropy,
};

// Settings for the decomposition-optimization oracles. ensemble_size = 0
// means "use rank^2".
struct OracleConfig {
  int restarts = 32;
  int ensemble_size = 0;
  double step_tolerance = 1e-6;
  int max_iterations = 500;
  std::uint64_t seed = 0;

  void validate() const {
    if (restarts <= 0 || ensemble_size < 0 || step_tolerance <= 0.0 || max_iterations <= 0) {
      throw contract_error("oracle config fields must be positive");
    }
  }
};

// Oracle outputs are bounds, never exact: lower bounds for assistance
// (maximization), upper bounds for formation (minimization).
struct OracleResult {
  double value = 0.0;
  bool converged = true;
};

namespace detail {

inline void check_partition(const PureState& s, const std::vector<std::size_t>& side_a) {
  if (side_a.empty() || side_a.size() >= s.dims.size()) {
    throw contract_error("bipartition side must be a nonempty proper subset");
  }
  std::vector<bool> seen(s.dims.size(), false);
  for (std::size_t k : side_a) {
    if (k >= s.dims.size() || seen[k]) throw contract_error("invalid bipartition index");
    seen[k] = true;
  }
}

inline double reduced_purity(const PureState& s, const std::vector<std::size_t>& side_a) {
  const ComplexMatrix rho_a = partial_trace(s.projector(), s.dims, side_a);
  double purity = 0.0;
  for (const complex& z : rho_a.entries()) purity += std::norm(z);
  return purity;
}

}  // namespace detail

// C(|psi>) = sqrt(2 [1 - Tr(rho_A^2)]) across the given bipartition.
inline double concurrence_pure(const PureState& s, const std::vector<std::size_t>& side_a) {
  detail::check_partition(s, side_a);
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - detail::reduced_purity(s, side_a))));
}

// tau(|psi>) = 2 [1 - Tr(rho_A^2)] = C^2.
inline double tangle_pure(const PureState& s, const std::vector<std::size_t>& side_a) {
  detail::check_partition(s, side_a);
  return std::max(0.0, 2.0 * (1.0 - detail::reduced_purity(s, side_a)));
}

// Von Neumann entropy of the reduced state, log base 2.
inline double entanglement_entropy(const PureState& s, const std::vector<std::size_t>& side_a) {
  detail::check_partition(s, side_a);
  const ComplexMatrix rho_a = partial_trace(s.projector(), s.dims, side_a);
  double h = 0.0;
  for (double mu : hermitian_eigenvalues(rho_a)) {
    if (mu > 1e-15) h -= mu * std::log2(mu);
  }
  return h;
}

// Wootters formula: C(rho) = max{0, eta1 - eta2 - eta3 - eta4} with eta_i the
// square roots of the eigenvalues of rho * rho_tilde in nonincreasing order.
// The eta_i come from the Hermitian sqrt(rho) rho_tilde sqrt(rho), which is
// similar to rho * rho_tilde.
inline double wootters_concurrence(const DensityMatrix& rho) {
  if (rho.dims.dims != std::vector<std::size_t>{2, 2}) {
    throw contract_error("Wootters concurrence needs a two-qubit state");
  }
  const ComplexMatrix root = hermitian_sqrt(rho.matrix);
  const ComplexMatrix m = root * spin_flip(rho.matrix) * root;
  std::vector<double> eta;
  for (double lam : hermitian_eigenvalues(m)) eta.push_back(std::sqrt(std::max(lam, 0.0)));
  return std::max(0.0, eta[0] - eta[1] - eta[2] - eta[3]);
}

enum class SchmidtCut { OneToGroup, PairAB, PairAC };

// Closed-form concurrence of assistance for the generalized Schmidt family:
// C_a(A|BC) = 2 l0 sqrt(l2^2 + l3^2 + l4^2), C_a(AB) = 2 l0 sqrt(l3^2 + l4^2),
// C_a(AC) = 2 l0 sqrt(l2^2 + l4^2). The AB reduction traces out C, so it keeps
// the |110> and |111> terms (lambda3, lambda4); check against lambda0 = lambda3
// = 1/sqrt(2), whose AB marginal is a Bell state with C_a(AB) = 1 while the AC
// marginal is separable.
inline double assistance_closed_schmidt(const SchmidtFamily& p, SchmidtCut cut) {
  p.validate();
  const double l2 = p.lambda2 * p.lambda2;
  const double l3 = p.lambda3 * p.lambda3;
  const double l4 = p.lambda4 * p.lambda4;
  switch (cut) {
    case SchmidtCut::OneToGroup:
      return 2.0 * p.lambda0 * std::sqrt(l2 + l3 + l4);
    case SchmidtCut::PairAB:
      return 2.0 * p.lambda0 * std::sqrt(l3 + l4);
    case SchmidtCut::PairAC:
      return 2.0 * p.lambda0 * std::sqrt(l2 + l4);
  }
  throw contract_error("unknown cut");
}

namespace detail {

// Pure-member contribution to the ensemble average for an unnormalized member
// w over a 2 x (d/2) split: p * C, written in terms of the unnormalized 2x2
// Gram matrix so no normalization is needed.
inline double member_objective(const std::vector<complex>& w, std::size_t half) {
  complex g01 = 0.0;
  double g00 = 0.0, g11 = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    g00 += std::norm(w[k]);
    g11 += std::norm(w[half + k]);
    g01 += w[k] * std::conj(w[half + k]);
  }
  const double p = g00 + g11;
  const double tr2 = g00 * g00 + g11 * g11 + 2.0 * std::norm(g01);
  const double gap = std::max(0.0, p * p - tr2);
  return std::sqrt(2.0 * gap);
}

// Shared ensemble-optimization engine. Ensembles are parametrized by m x r
// isometries applied to the scaled eigenvectors of rho; hill-climbing moves
// are two-row Givens-style rotations with random restarts.
inline OracleResult decomposition_oracle(const DensityMatrix& rho, bool maximize,
                                         const OracleConfig& cfg) {
  cfg.validate();
  if (rho.dims.size() < 2 || rho.dims.dims[0] != 2) {
    throw contract_error("oracle needs a qubit as the first subsystem");
  }
  const std::size_t dim = rho.matrix.rows();
  const std::size_t half = dim / 2;

  EigenSystem es = hermitian_eigensystem(rho.matrix);
  std::vector<std::vector<complex>> basis;  // sqrt(mu_j) |e_j>
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    if (es.values[j] <= 1e-12) continue;
    std::vector<complex> b(dim);
    const double r = std::sqrt(es.values[j]);
    for (std::size_t i = 0; i < dim; ++i) b[i] = r * es.vectors(i, j);
    basis.push_back(std::move(b));
  }
  const std::size_t r = basis.size();
  if (r > 4) throw contract_error("oracle supports rank <= 4 only");

  const double sign = maximize ? 1.0 : -1.0;
  if (r <= 1) {  // pure input: the single-member decomposition is optimal
    double v = r == 0 ? 0.0 : member_objective(basis[0], half);
    return {v, true};
  }

  const std::size_t m =
      std::max<std::size_t>(cfg.ensemble_size > 0 ? cfg.ensemble_size : r * r, r);

  double best = maximize ? -1.0 : 1e300;
  bool best_converged = false;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    const std::uint64_t stream = rng::derive_seed(cfg.seed, 0x0f0f0f0fULL + restart);
    std::uint64_t ctr = 0;

    // Random m x r isometry via Gram-Schmidt on Gaussian columns.
    std::vector<std::vector<complex>> cols(r, std::vector<complex>(m));
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        cols[j][i] = complex(rng::normal(stream, ctr), rng::normal(stream, ctr + 1));
        ctr += 2;
      }
      for (std::size_t j2 = 0; j2 < j; ++j2) {
        complex ip = 0.0;
        for (std::size_t i = 0; i < m; ++i) ip += std::conj(cols[j2][i]) * cols[j][i];
        for (std::size_t i = 0; i < m; ++i) cols[j][i] -= ip * cols[j2][i];
      }
      double n2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) n2 += std::norm(cols[j][i]);
      const double inv = 1.0 / std::sqrt(n2);
      for (std::size_t i = 0; i < m; ++i) cols[j][i] *= inv;
    }

    // Member vectors w_i = sum_j conj(V_ij) sqrt(mu_j) |e_j>.
    std::vector<std::vector<complex>> w(m, std::vector<complex>(dim, 0.0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const complex v = std::conj(cols[j][i]);
        for (std::size_t k = 0; k < dim; ++k) w[i][k] += v * basis[j][k];
      }

    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i) f[i] = member_objective(w[i], half);

    double step = std::numbers::pi / 4.0;
    bool converged = false;
    std::vector<complex> wi(dim), wk(dim);
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      bool improved = false;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t k = i + 1; k < m; ++k) {
          double best_gain = 1e-14;
          double best_th = 0.0, best_ph = 0.0;
          for (double th : {step, -step}) {
            const double c = std::cos(th), s = std::sin(th);
            for (int q = 0; q < 4; ++q) {
              const double ph = q * std::numbers::pi / 2.0;
              const complex e(std::cos(ph), std::sin(ph));
              for (std::size_t x = 0; x < dim; ++x) {
                wi[x] = c * w[i][x] + s * e * w[k][x];
                wk[x] = -s * std::conj(e) * w[i][x] + c * w[k][x];
              }
              const double gain = sign * (member_objective(wi, half) +
                                          member_objective(wk, half) - f[i] - f[k]);
              if (gain > best_gain) {
                best_gain = gain;
                best_th = th;
                best_ph = ph;
              }
            }
          }
          if (best_th != 0.0 || best_ph != 0.0) {
            const double c = std::cos(best_th), s = std::sin(best_th);
            const complex e(std::cos(best_ph), std::sin(best_ph));
            for (std::size_t x = 0; x < dim; ++x) {
              const complex a = w[i][x], b = w[k][x];
              w[i][x] = c * a + s * e * b;
              w[k][x] = -s * std::conj(e) * a + c * b;
            }
            f[i] = member_objective(w[i], half);
            f[k] = member_objective(w[k], half);
            improved = true;
          }
        }
      }
      if (!improved) {
        step *= 0.5;
        if (step < cfg.step_tolerance) {
          converged = true;
          break;
        }
      }
    }

    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += f[i];
    if (sign * (total - best) > 0.0) {
      best = total;
      best_converged = converged;
    }
  }

  return {best, best_converged};
}

}  // namespace detail

// C_a / tau_a via explicit ensemble optimization: a lower bound on the true
// assistance value. The assisted tangle is evaluated as the square of the
// optimal average concurrence. Maximizing the average tangle directly yields a
// strictly larger, inequivalent quantity (Jensen: sum p C^2 >= (sum p C)^2);
// the squared-concurrence convention is the one under which tau_a = C_a^2
// holds for pure states and the assisted-tangle weight formulas close.
inline OracleResult assistance_oracle(const DensityMatrix& rho, MeasureKind objective,
                                      const OracleConfig& cfg = {}) {
  if (objective != MeasureKind::ConcurrenceOfAssistance &&
      objective != MeasureKind::TangleOfAssistance) {
    throw contract_error("assistance oracle objective must be C_a or tau_a");
  }
  OracleResult res = detail::decomposition_oracle(rho, /*maximize=*/true, cfg);
  if (objective == MeasureKind::TangleOfAssistance) res.value *= res.value;
  return res;
}

// Convex-roof minimization of the average concurrence for two-qubit states:
// an upper bound on the true concurrence; independent check of Wootters.
inline OracleResult formation_oracle(const DensityMatrix& rho, const OracleConfig& cfg = {}) {
  if (rho.dims.dims != std::vector<std::size_t>{2, 2}) {
    throw contract_error("formation oracle needs a two-qubit state");
  }
  return detail::decomposition_oracle(rho, /*maximize=*/false, cfg);
}

}  // namespace polyweight
