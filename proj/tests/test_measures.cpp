#include <catch_amalgamated.hpp>

#include <cmath>

#include "polyweight/measures.hpp"

using namespace polyweight;

namespace {

PureState bell_state() {
  std::vector<complex> amps = {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)};
  return PureState({{2, 2}}, amps);
}

PureState w_state() {
  std::vector<complex> amps(8, 0.0);
  amps[1] = amps[2] = amps[4] = 1 / std::sqrt(3.0);
  return PureState({{2, 2, 2}}, amps);
}

PureState ghz_state() {
  std::vector<complex> amps(8, 0.0);
  amps[0] = amps[7] = 1 / std::sqrt(2.0);
  return PureState({{2, 2, 2}}, amps);
}

// Random 2x2 special unitary from three angles.
ComplexMatrix random_su2(std::uint64_t seed) {
  const double a = 2 * std::numbers::pi * rng::uniform01(seed, 0);
  const double b = 2 * std::numbers::pi * rng::uniform01(seed, 1);
  const double t = std::asin(std::sqrt(rng::uniform01(seed, 2)));
  ComplexMatrix u(2, 2);
  u(0, 0) = std::polar(std::cos(t), a);
  u(0, 1) = std::polar(std::sin(t), b);
  u(1, 0) = -std::polar(std::sin(t), -b);
  u(1, 1) = std::polar(std::cos(t), -a);
  return u;
}

PureState apply_local_unitaries(const PureState& s, std::uint64_t seed) {
  ComplexMatrix u = random_su2(rng::derive_seed(seed, 0));
  for (std::size_t q = 1; q < s.dims.size(); ++q) {
    u = tensor_product(u, random_su2(rng::derive_seed(seed, q)));
  }
  std::vector<complex> out(s.amplitudes.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[i] += u(i, j) * s.amplitudes[j];
  return PureState(s.dims, out);
}

}  // namespace

TEST_CASE("pure-state concurrence and tangle") {
  CHECK(std::abs(concurrence_pure(bell_state(), {0}) - 1.0) < 1e-12);
  CHECK(std::abs(concurrence_pure(w_state(), {0}) - 2.0 * std::sqrt(2.0) / 3.0) < 1e-12);
  CHECK(std::abs(tangle_pure(bell_state(), {0}) - 1.0) < 1e-12);
  CHECK(std::abs(tangle_pure(w_state(), {0}) - 8.0 / 9.0) < 1e-12);

  SECTION("product state scores zero") {
    std::vector<complex> amps(4, 0.0);
    amps[0] = 1.0;
    const PureState prod({{2, 2}}, amps);
    CHECK(tangle_pure(prod, {0}) == 0.0);
  }

  SECTION("separable three-qubit example") {
    std::vector<complex> amps(8, 0.0);
    amps[0] = amps[6] = amps[7] = 1 / std::sqrt(3.0);
    const PureState s({{2, 2, 2}}, amps);
    CHECK(std::abs(concurrence_pure(s, {0}) - 2.0 * std::sqrt(2.0) / 3.0) < 1e-12);
  }

  SECTION("tangle is the squared concurrence") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const PureState psi = haar_random_pure({{2, 2, 2}}, 1000 + seed);
      const double c = concurrence_pure(psi, {0});
      CHECK(std::abs(tangle_pure(psi, {0}) - c * c) < 1e-12);
    }
  }

  SECTION("invalid partitions rejected") {
    CHECK_THROWS_AS(concurrence_pure(bell_state(), {}), contract_error);
    CHECK_THROWS_AS(concurrence_pure(bell_state(), {0, 1}), contract_error);
  }
}

TEST_CASE("wootters concurrence") {
  CHECK(std::abs(wootters_concurrence(reduce(ghz_state(), {0, 1})) - 0.0) < 1e-9);
  {
    std::vector<complex> amps = {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)};
    const DensityMatrix bell({{2, 2}}, PureState({{2, 2}}, amps).projector());
    CHECK(std::abs(wootters_concurrence(bell) - 1.0) < 1e-10);
  }
  {
    const DensityMatrix mixed({{2, 2}}, ComplexMatrix::identity(4) * complex(0.25));
    CHECK(wootters_concurrence(mixed) == 0.0);
  }
  CHECK(std::abs(wootters_concurrence(reduce(w_state(), {0, 1})) - 2.0 / 3.0) < 1e-9);

  SECTION("pure states match the purity formula") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PureState psi = haar_random_pure({{2, 2}}, 2000 + seed);
      const DensityMatrix rho({{2, 2}}, psi.projector());
      // sqrt of near-zero eigenvalues amplifies the 1e-14 eigensolver residue
      CHECK(std::abs(wootters_concurrence(rho) - concurrence_pure(psi, {0})) < 1e-7);
    }
  }

  CHECK_THROWS_AS(wootters_concurrence(DensityMatrix({{4}}, ComplexMatrix::identity(4) *
                                                                complex(0.25))),
                  contract_error);
}

TEST_CASE("entanglement entropy") {
  CHECK(std::abs(entanglement_entropy(bell_state(), {0}) - 1.0) < 1e-12);
  {
    std::vector<complex> amps(4, 0.0);
    amps[0] = 1.0;
    CHECK(entanglement_entropy(PureState({{2, 2}}, amps), {0}) == 0.0);
  }
  const double expect = -(2.0 / 3.0) * std::log2(2.0 / 3.0) - (1.0 / 3.0) * std::log2(1.0 / 3.0);
  CHECK(std::abs(entanglement_entropy(w_state(), {0}) - expect) < 1e-10);
}

TEST_CASE("closed-form assistance values for the Schmidt family") {
  SECTION("W-type saturating family") {
    SchmidtFamily p;
    p.lambda0 = p.lambda2 = p.lambda3 = 1 / std::sqrt(3.0);
    CHECK(std::abs(assistance_closed_schmidt(p, SchmidtCut::OneToGroup) -
                   2.0 * std::sqrt(2.0) / 3.0) < 1e-12);
    CHECK(std::abs(assistance_closed_schmidt(p, SchmidtCut::PairAB) - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(assistance_closed_schmidt(p, SchmidtCut::PairAC) - 2.0 / 3.0) < 1e-12);
  }
  SECTION("product state") {
    SchmidtFamily p;
    p.lambda0 = 1.0;
    CHECK(assistance_closed_schmidt(p, SchmidtCut::OneToGroup) == 0.0);
    CHECK(assistance_closed_schmidt(p, SchmidtCut::PairAB) == 0.0);
    CHECK(assistance_closed_schmidt(p, SchmidtCut::PairAC) == 0.0);
  }
  SECTION("lambda0 = lambda4 = 1/sqrt(2)") {
    SchmidtFamily p;
    p.lambda0 = p.lambda4 = 1 / std::sqrt(2.0);
    CHECK(std::abs(assistance_closed_schmidt(p, SchmidtCut::OneToGroup) - 1.0) < 1e-12);
    CHECK(std::abs(assistance_closed_schmidt(p, SchmidtCut::PairAB) - 1.0) < 1e-12);
    CHECK(std::abs(assistance_closed_schmidt(p, SchmidtCut::PairAC) - 1.0) < 1e-12);
  }
  SECTION("one-to-group closed form equals the pure concurrence") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const std::uint64_t s = rng::derive_seed(31337, seed);
      double l[5];
      double n2 = 0;
      for (int j = 0; j < 5; ++j) {
        l[j] = std::abs(rng::normal(s, j));
        n2 += l[j] * l[j];
      }
      SchmidtFamily p;
      p.lambda0 = l[0] / std::sqrt(n2);
      p.lambda1 = l[1] / std::sqrt(n2);
      p.lambda2 = l[2] / std::sqrt(n2);
      p.lambda3 = l[3] / std::sqrt(n2);
      p.lambda4 = l[4] / std::sqrt(n2);
      p.phi = 2 * std::numbers::pi * rng::uniform01(s, 99);
      CHECK(std::abs(assistance_closed_schmidt(p, SchmidtCut::OneToGroup) -
                     concurrence_pure(schmidt_state(p), {0})) < 1e-10);
    }
  }
}

TEST_CASE("assistance oracle") {
  OracleConfig cfg;
  cfg.seed = 7;

  SECTION("pure input reduces to the pure value") {
    const PureState psi = haar_random_pure({{2, 2}}, 5);
    const DensityMatrix rho({{2, 2}}, psi.projector());
    const OracleResult r = assistance_oracle(rho, MeasureKind::ConcurrenceOfAssistance, cfg);
    CHECK(std::abs(r.value - concurrence_pure(psi, {0})) < 1e-12);
  }

  SECTION("GHZ marginal reaches full concurrence of assistance") {
    const OracleResult r = assistance_oracle(reduce(ghz_state(), {0, 1}),
                                             MeasureKind::ConcurrenceOfAssistance, cfg);
    CHECK(std::abs(r.value - 1.0) < 1e-4);
  }

  SECTION("dominates the Wootters concurrence") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PureState psi = haar_random_pure({{2, 2, 2}}, 4000 + seed);
      const DensityMatrix rho = reduce(psi, {0, 1});
      const OracleResult r = assistance_oracle(rho, MeasureKind::ConcurrenceOfAssistance, cfg);
      CHECK(r.value >= wootters_concurrence(rho) - 1e-9);
    }
  }

  SECTION("rank cap enforced") {
    // Tracing three qubits of a six-qubit state leaves a rank-8 reduction.
    const PureState psi = haar_random_pure({{2, 2, 2, 2, 2, 2}}, 1);
    CHECK_THROWS_AS(
        assistance_oracle(reduce(psi, {0, 1, 2}), MeasureKind::ConcurrenceOfAssistance, cfg),
        contract_error);
  }
}

TEST_CASE("formation oracle") {
  OracleConfig cfg;
  cfg.seed = 8;

  {
    std::vector<complex> amps = {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)};
    const DensityMatrix bell({{2, 2}}, PureState({{2, 2}}, amps).projector());
    CHECK(std::abs(formation_oracle(bell, cfg).value - 1.0) < 1e-10);
  }
  {
    const DensityMatrix mixed({{2, 2}}, ComplexMatrix::identity(4) * complex(0.25));
    CHECK(formation_oracle(mixed, cfg).value < 1e-3);
  }

  SECTION("tracks Wootters on random rank-2 states") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PureState psi = haar_random_pure({{2, 2, 2}}, 8000 + seed);
      const DensityMatrix rho = reduce(psi, {0, 1});
      CHECK(std::abs(formation_oracle(rho, cfg).value - wootters_concurrence(rho)) < 5e-3);
    }
  }
}

TEST_CASE("local-unitary invariance") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState psi = haar_random_pure({{2, 2, 2}}, 12000 + seed);
    const PureState rotated = apply_local_unitaries(psi, 555 + seed);
    CHECK(std::abs(concurrence_pure(psi, {0}) - concurrence_pure(rotated, {0})) < 1e-9);
    CHECK(std::abs(entanglement_entropy(psi, {0}) - entanglement_entropy(rotated, {0})) < 1e-9);
    CHECK(std::abs(wootters_concurrence(reduce(psi, {0, 1})) -
                   wootters_concurrence(reduce(rotated, {0, 1}))) < 1e-8);
  }
}

TEST_CASE("one-to-group concurrence dominates the pair values") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const PureState psi = haar_random_pure({{2, 2, 2}}, 20000 + seed);
    const double group = concurrence_pure(psi, {0});
    const double ab = wootters_concurrence(reduce(psi, {0, 1}));
    const double ac = wootters_concurrence(reduce(psi, {0, 2}));
    CHECK(group >= std::max(ab, ac) - 1e-9);
  }
}
