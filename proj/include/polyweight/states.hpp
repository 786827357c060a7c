#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "polyweight/errors.hpp"
#include "polyweight/matrix.hpp"

namespace polyweight {

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for sample `index` of a campaign keyed by `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Counter-based uniform on (0, 1]: value k of the stream keyed by `seed`.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ counter * 0xd1342543de82ef95ULL);
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Standard normal, counter-based (Box-Muller on counters 2k, 2k+1).
inline double normal(std::uint64_t seed, std::uint64_t counter) {
  const double u1 = uniform01(seed, 2 * counter);
  const double u2 = uniform01(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng

// Unit-norm amplitude vector over an ordered qubit/qudit list. Big-endian
// ordering: the leftmost ket symbol is subsystem 0.
struct PureState {
  SubsystemDims dims;
  std::vector<complex> amplitudes;

  PureState(SubsystemDims d, std::vector<complex> amps)
      : dims(std::move(d)), amplitudes(std::move(amps)) {
    if (dims.total() != amplitudes.size()) {
      throw dimension_error("amplitude count inconsistent with subsystem dims");
    }
    double norm2 = 0.0;
    for (const complex& a : amplitudes) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw contract_error("non-finite amplitude");
      }
      norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > 1e-10) throw contract_error("state norm differs from 1");
  }

  ComplexMatrix projector() const {
    const std::size_t n = amplitudes.size();
    ComplexMatrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rho(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return rho;
  }
};

// Hermitian, PSD, unit-trace matrix with its subsystem dimension list.
struct DensityMatrix {
  SubsystemDims dims;
  ComplexMatrix matrix;

  DensityMatrix(SubsystemDims d, ComplexMatrix m) : dims(std::move(d)), matrix(std::move(m)) {
    if (dims.total() != matrix.rows() || matrix.rows() != matrix.cols()) {
      throw dimension_error("density matrix shape inconsistent with dims");
    }
    if (!matrix.is_hermitian(1e-10)) throw numerical_error("density matrix not Hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > 1e-10 || std::abs(matrix.trace().imag()) > 1e-10) {
      throw numerical_error("density matrix trace differs from 1");
    }
    for (double lam : hermitian_eigenvalues(matrix)) {
      if (lam < -1e-10) throw numerical_error("density matrix has a negative eigenvalue");
    }
  }
};

// Five coefficients and one phase of the generalized Schmidt form
// lambda0|000> + lambda1 e^{i phi}|100> + lambda2|101> + lambda3|110> + lambda4|111>.
struct SchmidtFamily {
  double lambda0 = 0, lambda1 = 0, lambda2 = 0, lambda3 = 0, lambda4 = 0;
  double phi = 0;

  void validate() const {
    const double l[] = {lambda0, lambda1, lambda2, lambda3, lambda4};
    double s = 0.0;
    for (double x : l) {
      if (x < 0.0 || !std::isfinite(x)) throw contract_error("Schmidt coefficients must be >= 0");
      s += x * x;
    }
    if (std::abs(s - 1.0) > 1e-10) throw contract_error("Schmidt coefficients not normalized");
  }
};

// The two angles of the family
// sin(theta)cos(phi)|000> + sin(theta)sin(phi)|101> + cos(theta)|110>.
struct AngleFamily {
  double theta = 0;
  double phi = 0;

  void validate() const {
    const double half_pi = std::numbers::pi / 2.0;
    if (!(theta >= 0.0 && theta <= half_pi) || !(phi >= 0.0 && phi <= half_pi)) {
      throw contract_error("angles must lie in [0, pi/2]");
    }
  }
};

inline PureState schmidt_state(const SchmidtFamily& p) {
  p.validate();
  std::vector<complex> amps(8, 0.0);
  amps[0] = p.lambda0;                                               // |000>
  amps[4] = p.lambda1 * complex(std::cos(p.phi), std::sin(p.phi));   // |100>
  amps[5] = p.lambda2;                                               // |101>
  amps[6] = p.lambda3;                                               // |110>
  amps[7] = p.lambda4;                                               // |111>
  return PureState({{2, 2, 2}}, std::move(amps));
}

inline PureState angle_state(const AngleFamily& p) {
  p.validate();
  std::vector<complex> amps(8, 0.0);
  amps[0] = std::sin(p.theta) * std::cos(p.phi);  // |000>
  amps[5] = std::sin(p.theta) * std::sin(p.phi);  // |101>
  amps[6] = std::cos(p.theta);                    // |110>
  // Renormalize away the last-ulp deficit so the PureState invariant holds exactly.
  double n2 = 0.0;
  for (const complex& a : amps) n2 += std::norm(a);
  const double inv = 1.0 / std::sqrt(n2);
  for (complex& a : amps) a *= inv;
  return PureState({{2, 2, 2}}, std::move(amps));
}

// Haar-distributed pure state: normalized vector of iid complex standard
// normals. Counter-based stream, so a fixed seed always gives the same state.
inline PureState haar_random_pure(const SubsystemDims& dims, std::uint64_t seed) {
  const std::size_t n = dims.total();
  if (n > kDimensionCap) throw dimension_error("total dimension exceeds cap");
  std::vector<complex> amps(n);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    amps[k] = complex(rng::normal(seed, 2 * k), rng::normal(seed, 2 * k + 1));
    norm2 += std::norm(amps[k]);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (complex& a : amps) a *= inv;
  return PureState(dims, std::move(amps));
}

// Reduced state over the kept subsystems (original order preserved).
inline DensityMatrix reduce(const PureState& s, const std::vector<std::size_t>& keep) {
  ComplexMatrix rho = partial_trace(s.projector(), s.dims, keep);
  SubsystemDims kept;
  std::vector<std::size_t> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k : sorted) kept.dims.push_back(s.dims.dims[k]);
  return DensityMatrix(std::move(kept), std::move(rho));
}

// --- state files: JSON {"dims":[...], "re":[...], "im":[...]} ------------

inline nlohmann::json to_json(const PureState& s) {
  nlohmann::json j;
  j["dims"] = s.dims.dims;
  std::vector<double> re, im;
  re.reserve(s.amplitudes.size());
  im.reserve(s.amplitudes.size());
  for (const complex& a : s.amplitudes) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline PureState state_from_json(const nlohmann::json& j) {
  if (!j.contains("dims") || !j.contains("re") || !j.contains("im")) {
    throw contract_error("state file missing dims/re/im");
  }
  SubsystemDims dims{j.at("dims").get<std::vector<std::size_t>>()};
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw contract_error("re/im length mismatch");
  std::vector<complex> amps(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) amps[k] = complex(re[k], im[k]);
  return PureState(std::move(dims), std::move(amps));
}

inline void save_state(std::ostream& os, const PureState& s) { os << to_json(s) << "\n"; }

inline PureState load_state(std::istream& is) {
  nlohmann::json j;
  is >> j;
  return state_from_json(j);
}

}  // namespace polyweight
