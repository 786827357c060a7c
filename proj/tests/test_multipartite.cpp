#include <catch_amalgamated.hpp>

#include <cmath>

#include "polyweight/multipartite.hpp"

using namespace polyweight;

namespace {

OracleConfig fast_oracle() {
  OracleConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 7;
  return cfg;
}

PureState ghz4() {
  std::vector<complex> amps(16, 0.0);
  amps[0] = amps[15] = 1 / std::sqrt(2.0);
  return PureState({{2, 2, 2, 2}}, amps);
}

}  // namespace

TEST_CASE("chain weights on a product state") {
  std::vector<complex> amps(16, 0.0);
  amps[0] = 1.0;
  const ChainReport rep = chain_weights(PureState({{2, 2, 2, 2}}, amps),
                                        MeasureKind::ConcurrenceOfAssistance, fast_oracle());
  REQUIRE(rep.levels.size() == 2);
  CHECK(rep.one_to_group_total == 0.0);
  for (const ChainLevel& lv : rep.levels) {
    CHECK(lv.kind == WeightKind::Degenerate);
    CHECK(lv.weight == 0.0);
  }
  CHECK(rep.expansion_residual < 1e-12);
  const Theorem2Check chk = verify_theorem2(rep);
  CHECK(chk.applicable);
  CHECK(chk.holds);
}

TEST_CASE("chain weights on GHZ4 with concurrence of assistance") {
  const ChainReport rep =
      chain_weights(ghz4(), MeasureKind::ConcurrenceOfAssistance, fast_oracle());
  REQUIRE(rep.levels.size() == 2);
  // C_{A|B1B2B3} = 1, and every cut the chain takes also reaches 1: the
  // two-qubit marginals (|00><00| + |11><11|)/2 admit the Bell-basis
  // decomposition, so C_a = 1 for each of them.
  CHECK(std::abs(rep.one_to_group_total - 1.0) < 1e-12);
  CHECK(std::abs(rep.levels[0].pair_value - 1.0) < 5e-3);
  CHECK(std::abs(rep.levels[0].group_value - 1.0) < 5e-3);
  CHECK(std::abs(rep.levels[1].pair_value - 1.0) < 5e-3);
  CHECK(std::abs(rep.levels[1].group_value - 1.0) < 5e-3);
  CHECK(rep.levels[0].kind == WeightKind::Finite);
  CHECK(std::abs(rep.levels[0].weight) < 2e-2);
  // Each level equality is exact by construction, so the telescoped
  // reconstruction only accumulates roundoff.
  CHECK(rep.expansion_residual < 1e-9);
}

TEST_CASE("chain weights on Haar states telescope exactly") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const PureState psi = haar_random_pure({{2, 2, 2, 2}}, 8100 + s);
    for (MeasureKind m :
         {MeasureKind::ConcurrenceOfAssistance, MeasureKind::TangleOfAssistance}) {
      const ChainReport rep = chain_weights(psi, m, fast_oracle());
      REQUIRE(rep.levels.size() == 2);
      CHECK(rep.expansion_residual < 1e-9);
      CHECK(rep.cumulative.size() == 2);
      if (rep.levels[0].kind == WeightKind::Finite &&
          rep.levels[1].kind == WeightKind::Finite) {
        CHECK(std::abs(rep.cumulative[1] - rep.levels[0].weight * rep.levels[1].weight) < 1e-12);
      }
      const Theorem2Check chk = verify_theorem2(rep);
      if (chk.applicable) CHECK(chk.holds);
    }
  }
}

TEST_CASE("theorem 2 split-index bookkeeping") {
  ChainReport rep;
  ChainLevel a;
  a.total_value = 1.0;
  a.pair_value = 0.6;
  a.group_value = 0.5;
  a.kind = WeightKind::Finite;
  a.weight = 0.8;
  a.pair_dominates = true;
  ChainLevel b = a;
  b.pair_value = 0.3;
  b.group_value = 0.45;
  b.total_value = 0.5;
  b.weight = (0.5 - 0.45) / 0.3;
  b.pair_dominates = false;
  rep.one_to_group_total = 1.0;
  rep.hypothesis_consistent = true;
  rep.split_index = 1;

  SECTION("consistent ordering is applicable") {
    rep.levels = {a, b};
    const Theorem2Check chk = verify_theorem2(rep);
    CHECK(chk.applicable);
  }
  SECTION("interleaved comparisons are not applicable") {
    rep.levels = {b, a};  // group-dominant before pair-dominant
    rep.hypothesis_consistent = false;
    rep.split_index.reset();
    const Theorem2Check chk = verify_theorem2(rep);
    CHECK_FALSE(chk.applicable);
    CHECK_FALSE(chk.holds);
    CHECK(chk.note.find("not applicable") != std::string::npos);
  }
  SECTION("non-polygamous level is skipped") {
    b.kind = WeightKind::Infinite;
    rep.levels = {a, b};
    const Theorem2Check chk = verify_theorem2(rep);
    CHECK_FALSE(chk.applicable);
    CHECK(chk.note.find("skipped") != std::string::npos);
  }
}

TEST_CASE("chain weight contract errors") {
  const PureState three = haar_random_pure({{2, 2, 2}}, 5);
  CHECK_THROWS_AS(chain_weights(three, MeasureKind::ConcurrenceOfAssistance), contract_error);
  CHECK_THROWS_AS(chain_weights(ghz4(), MeasureKind::Concurrence), contract_error);
  CHECK_THROWS_AS(chain_weights(ghz4(), MeasureKind::EntanglementEntropy), contract_error);
}
