// Command-line front end: state ingestion, measure and weight evaluation,
// parameter sweeps, and sampling verification campaigns.
//
// Exit codes: 0 success, 1 verification violations, 2 usage/parse errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyweight/polyweight.hpp"

namespace {

using nlohmann::json;
using namespace polyweight;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Partition strings: "A|BC" (letters map A->0, B->1, ...), "0|12", or a bare
// side like "AB" / "0,1". Returns the indices of the left/only side.
std::vector<std::size_t> parse_partition(const std::string& text) {
  std::vector<std::size_t> side;
  for (char ch : text) {
    if (ch == '|') break;
    if (ch == ',' || ch == ' ') continue;
    if (ch >= 'A' && ch <= 'Z') {
      side.push_back(static_cast<std::size_t>(ch - 'A'));
    } else if (ch >= 'a' && ch <= 'z') {
      side.push_back(static_cast<std::size_t>(ch - 'a'));
    } else if (ch >= '0' && ch <= '9') {
      side.push_back(static_cast<std::size_t>(ch - '0'));
    } else {
      throw contract_error("unrecognized partition character");
    }
  }
  if (side.empty()) throw contract_error("empty partition");
  return side;
}

MeasureKind parse_measure(const std::string& name) {
  if (name == "concurrence") return MeasureKind::Concurrence;
  if (name == "tangle") return MeasureKind::Tangle;
  if (name == "entropy") return MeasureKind::EntanglementEntropy;
  if (name == "c-assist") return MeasureKind::ConcurrenceOfAssistance;
  if (name == "t-assist") return MeasureKind::TangleOfAssistance;
  throw contract_error("unknown measure: " + name);
}

PureState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw contract_error("cannot open state file: " + path);
  return load_state(in);
}

const char* weight_kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::Finite: return "finite";
    case WeightKind::Infinite: return "infinite";
    case WeightKind::Degenerate: return "degenerate";
  }
  return "?";
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Blue: return "blue";
    case Regime::Orange: return "orange";
    case Regime::Yellow: return "yellow";
    case Regime::White: return "white";
    case Regime::Axis: return "axis";
  }
  return "?";
}

json power_json(const CriticalPower& cp) {
  json j;
  switch (cp.kind) {
    case PowerKind::Finite:
      j["kind"] = "finite";
      j["value"] = cp.value;
      break;
    case PowerKind::Unbounded: j["kind"] = "unbounded"; break;
    case PowerKind::UnboundedAtCap: j["kind"] = "unbounded-at-cap"; break;
    case PowerKind::NonPolygamous: j["kind"] = "non-polygamous"; break;
  }
  return j;
}

json weight_report_json(const WeightReport& rep) {
  json j;
  j["kind"] = weight_kind_name(rep.kind);
  if (rep.kind == WeightKind::Finite) j["weight"] = rep.weight;
  if (rep.kind == WeightKind::Degenerate) {
    j["weight"] = 0.0;
    j["flags"] = json::array({"holds-for-any-weight"});
  }
  j["regime"] = regime_name(rep.regime);
  j["critical_power"] = power_json(rep.critical_power);
  if (rep.k_ratio_defined) j["k_ratio"] = rep.k_ratio;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
}

struct GlobalOpts {
  std::uint64_t seed = 20240915;
  long samples = 0;
  std::string out;
  std::string format = "json";
  std::vector<std::string> tol_specs;

  RunConfig run_config() const {
    RunConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    for (const std::string& spec : tol_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw contract_error("--tol expects name=value");
      cfg.tolerances[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
    }
    return cfg;
  }
};

// Pure one-to-group value of `measure` across side_a | rest.
double pure_group_value(const PureState& s, MeasureKind measure,
                        const std::vector<std::size_t>& side_a) {
  switch (measure) {
    case MeasureKind::Concurrence:
    case MeasureKind::ConcurrenceOfAssistance:  // C_a = C for pure states
      return concurrence_pure(s, side_a);
    case MeasureKind::Tangle:
    case MeasureKind::TangleOfAssistance:
      return tangle_pure(s, side_a);
    case MeasureKind::EntanglementEntropy:
      return entanglement_entropy(s, side_a);
  }
  throw contract_error("unknown measure");
}

// Pair value Q(rho_{xy}) for the mixed two-subsystem reduction.
double pair_value(const PureState& s, MeasureKind measure, std::size_t x, std::size_t y,
                  const OracleConfig& ocfg, bool& oracle_used, bool& warn) {
  const DensityMatrix rho = reduce(s, {x, y});
  switch (measure) {
    case MeasureKind::Concurrence:
      return wootters_concurrence(rho);
    case MeasureKind::Tangle: {
      const double c = wootters_concurrence(rho);
      return c * c;
    }
    case MeasureKind::ConcurrenceOfAssistance:
    case MeasureKind::TangleOfAssistance: {
      oracle_used = true;
      const OracleResult r = assistance_oracle(rho, measure, ocfg);
      warn = warn || !r.converged;
      return r.value;
    }
    case MeasureKind::EntanglementEntropy:
      throw contract_error("no mixed-state pair evaluation for entropy");
  }
  throw contract_error("unknown measure");
}

int cmd_measure(const GlobalOpts& g, const std::string& state_path, const std::string& measure_name,
                const std::string& partition) {
  const PureState s = load_state_file(state_path);
  const MeasureKind measure = parse_measure(measure_name);
  const std::vector<std::size_t> side = parse_partition(partition);

  json rec;
  rec["command"] = "measure";
  rec["state"] = state_path;
  rec["measure"] = measure_name;
  rec["partition"] = partition;
  json flags = json::array();

  double value = 0.0;
  if (measure == MeasureKind::ConcurrenceOfAssistance ||
      measure == MeasureKind::TangleOfAssistance) {
    if (side.size() != 2) throw contract_error("assistance measures need a two-subsystem pair");
    OracleConfig ocfg;
    ocfg.seed = g.seed;
    const OracleResult r = assistance_oracle(reduce(s, {side[0], side[1]}), measure, ocfg);
    value = r.value;
    flags.push_back("oracle-lower-bound");
    if (!r.converged) flags.push_back("oracle-not-converged");
  } else if (side.size() == 2 && side.size() == s.dims.size() - 1 && s.dims.size() == 3 &&
             measure == MeasureKind::Concurrence && partition.find('|') == std::string::npos) {
    // Bare pair like "AB": Wootters concurrence of the reduction.
    value = wootters_concurrence(reduce(s, {side[0], side[1]}));
  } else {
    value = pure_group_value(s, measure, side);
  }

  rec["value"] = value;
  rec["flags"] = flags;
  std::cout << fmt17(value) << "\n";
  if (!g.out.empty()) emit(rec, g.out);
  return 0;
}

int cmd_weight(const GlobalOpts& g, const std::string& state_path, const std::string& measure_name,
               const std::string& kind) {
  const PureState s = load_state_file(state_path);
  const MeasureKind measure = parse_measure(measure_name);
  if (s.dims.size() != 3) throw contract_error("weight commands expect a tripartite state");

  json rec;
  rec["command"] = "weight";
  rec["state"] = state_path;
  rec["measure"] = measure_name;
  rec["kind"] = kind;
  json flags = json::array();

  WeightReport rep;
  if (kind == "gamma") {
    OracleConfig ocfg;
    ocfg.seed = g.seed;
    bool oracle_used = false, warn = false;
    TripleValues v;
    v.one_to_group = pure_group_value(s, measure, {0});
    v.pair_ab = pair_value(s, measure, 0, 1, ocfg, oracle_used, warn);
    v.pair_ac = pair_value(s, measure, 0, 2, ocfg, oracle_used, warn);
    rep = gamma_weight(v);
    rec["values"] = {{"one_to_group", v.one_to_group},
                     {"pair_ab", v.pair_ab},
                     {"pair_ac", v.pair_ac}};
    if (oracle_used) flags.push_back("oracle-lower-bound");
    if (warn) flags.push_back("oracle-not-converged");
  } else if (kind == "delta") {
    OneToGroupValues v;
    v.e_a = pure_group_value(s, measure, {0});
    v.e_b = pure_group_value(s, measure, {1});
    v.e_c = pure_group_value(s, measure, {2});
    rep = delta_weight(v);
    rec["values"] = {{"e_a", v.e_a}, {"e_b", v.e_b}, {"e_c", v.e_c}};
  } else {
    throw contract_error("weight kind must be gamma or delta");
  }

  rec["report"] = weight_report_json(rep);
  rec["flags"] = flags;
  emit(rec, g.out);
  return 0;
}

int cmd_chain(const GlobalOpts& g, const std::string& state_path,
              const std::string& measure_name) {
  const PureState s = load_state_file(state_path);
  OracleConfig ocfg;
  ocfg.seed = g.seed;
  const ChainReport rep = chain_weights(s, parse_measure(measure_name), ocfg);
  const Theorem2Check chk = verify_theorem2(rep);

  json rec;
  rec["command"] = "chain";
  rec["state"] = state_path;
  rec["measure"] = measure_name;
  json levels = json::array();
  for (const ChainLevel& lv : rep.levels) {
    json j;
    j["pair"] = lv.pair_label;
    j["group"] = lv.group_label;
    j["total_value"] = lv.total_value;
    j["pair_value"] = lv.pair_value;
    j["group_value"] = lv.group_value;
    j["kind"] = weight_kind_name(lv.kind);
    if (lv.kind == WeightKind::Finite) j["weight"] = lv.weight;
    j["pair_dominates"] = lv.pair_dominates;
    if (lv.oracle_warning) j["flags"] = json::array({"oracle-not-converged"});
    levels.push_back(j);
  }
  rec["levels"] = levels;
  rec["cumulative"] = rep.cumulative;
  rec["one_to_group_total"] = rep.one_to_group_total;
  rec["expansion_residual"] = rep.expansion_residual;
  if (rep.split_index) rec["split_index"] = *rep.split_index;
  rec["hypothesis_consistent"] = rep.hypothesis_consistent;
  rec["theorem2"] = chk.applicable ? (chk.holds ? "holds" : "violated") : "not-applicable";
  if (!chk.note.empty()) rec["note"] = chk.note;
  rec["flags"] = json::array({"oracle-lower-bound"});
  emit(rec, g.out);
  return 0;
}

int cmd_sweep_fig3(const GlobalOpts& g, double xmin, double xmax, double ymin, double ymax,
                   long steps) {
  if (steps < 2) throw contract_error("steps must be >= 2");
  std::ostringstream os;
  os << "x,y,gamma\n";
  double max_g = 0.0;
  for (long i = 0; i < steps; ++i) {
    const double x = xmin + (xmax - xmin) * i / (steps - 1);
    for (long j = 0; j < steps; ++j) {
      const double y = ymin + (ymax - ymin) * j / (steps - 1);
      const double gam = gamma_surface(x, y);
      max_g = std::max(max_g, gam);
      os << fmt17(x) << "," << fmt17(y) << "," << fmt17(gam) << "\n";
    }
  }
  os << "# max = " << fmt17(max_g) << "\n";
  emit_text(os.str(), g.out);
  return 0;
}

int cmd_region_fig4(const GlobalOpts& g, long steps) {
  if (steps < 2) throw contract_error("steps must be >= 2");
  const double half_pi = std::numbers::pi / 2.0;
  std::ostringstream os;
  os << "# delta emitted only in-region; delta_sorted applies Definition 2 after descending sort\n";
  os << "theta,phi,in_region,delta_or_nan,delta_sorted\n";
  for (long i = 0; i < steps; ++i) {
    const double theta = half_pi * i / (steps - 1);
    for (long j = 0; j < steps; ++j) {
      const double phi = half_pi * j / (steps - 1);
      const AngleFamily fam{theta, phi};
      const bool in_region = angle_in_ordering_region(fam);
      const WeightReport rep = delta_weight(angle_concurrence_triple(fam));
      const double sorted_delta = rep.kind == WeightKind::Finite ? rep.weight : 1.0;
      os << fmt17(theta) << "," << fmt17(phi) << "," << (in_region ? 1 : 0) << ",";
      os << (in_region ? fmt17(delta_c_closed(fam)) : std::string("nan"));
      os << "," << fmt17(sorted_delta) << "\n";
    }
  }
  emit_text(os.str(), g.out);
  return 0;
}

int cmd_region_fig5(const GlobalOpts& g, long beta_steps, long gamma_steps, double gamma_max) {
  if (beta_steps < 2 || gamma_steps < 2) throw contract_error("steps must be >= 2");
  std::ostringstream os;
  os << "beta,gamma,feasible\n";
  for (long i = 1; i <= beta_steps; ++i) {
    const double beta = static_cast<double>(i) / beta_steps;  // (0, 1]
    for (long j = 0; j < gamma_steps; ++j) {
      const double gam = gamma_max * j / (gamma_steps - 1);
      os << fmt17(beta) << "," << fmt17(gam) << ","
         << (weight_power_feasible(beta, gam) ? 1 : 0) << "\n";
    }
  }
  emit_text(os.str(), g.out);
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& claim) {
  const RunConfig cfg = g.run_config();
  const VerificationSummary s = run_claim(claim, cfg);

  if (g.format == "csv") {
    std::ostringstream os;
    os << "claim,samples,violations,max_residual,supremum,wall_ms,passed\n";
    os << s.claim << "," << s.samples << "," << s.violations << "," << fmt17(s.max_residual)
       << "," << (s.supremum ? fmt17(*s.supremum) : std::string("nan")) << ","
       << fmt17(s.wall_ms) << "," << (s.passed ? 1 : 0) << "\n";
    emit_text(os.str(), g.out);
  } else {
    json rec;
    rec["claim"] = s.claim;
    rec["samples"] = s.samples;
    rec["violations"] = s.violations;
    rec["max_residual"] = s.max_residual;
    if (s.supremum) rec["supremum"] = *s.supremum;
    rec["wall_ms"] = s.wall_ms;
    rec["passed"] = s.passed;
    emit(rec, g.out);
  }
  std::cerr << s.claim << ": " << (s.passed ? "PASS" : "FAIL") << " (violations=" << s.violations
            << ", max_residual=" << s.max_residual << ")\n";
  return s.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite quantum-correlation measures and polygamy weights"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "deterministic base seed");
  app.add_option("--samples", g.samples, "sample/step count override");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol_specs, "tolerance override name=value (repeatable)");

  std::string state_path, measure_name = "concurrence", partition = "A|BC", weight_kind = "gamma";
  std::string claim;
  double xmin = 0, xmax = 10, ymin = 0, ymax = 10, gamma_max = 4;
  long steps = 200, beta_steps = 100, gamma_steps = 100;

  auto* measure_cmd = app.add_subcommand("measure", "evaluate a measure on a state file");
  measure_cmd->add_option("--state", state_path)->required();
  measure_cmd->add_option("--measure", measure_name);
  measure_cmd->add_option("--partition", partition);

  auto* weight_cmd = app.add_subcommand("weight", "polygamy weight report for a state file");
  weight_cmd->add_option("--state", state_path)->required();
  weight_cmd->add_option("--measure", measure_name);
  weight_cmd->add_option("--kind", weight_kind);

  auto* chain_cmd = app.add_subcommand("chain", "4-qubit weight chain report");
  chain_cmd->add_option("--state", state_path)->required();
  chain_cmd->add_option("--measure", measure_name);

  auto* fig3_cmd = app.add_subcommand("sweep-fig3", "weight surface g(x, y) sweep (CSV)");
  fig3_cmd->add_option("--xmin", xmin);
  fig3_cmd->add_option("--xmax", xmax);
  fig3_cmd->add_option("--ymin", ymin);
  fig3_cmd->add_option("--ymax", ymax);
  fig3_cmd->add_option("--steps", steps);

  auto* fig4_cmd = app.add_subcommand("region-fig4", "angle-family ordering region (CSV)");
  fig4_cmd->add_option("--steps", steps);

  auto* fig5_cmd = app.add_subcommand("region-fig5", "beta*gamma^beta <= 1 region (CSV)");
  fig5_cmd->add_option("--beta-steps", beta_steps);
  fig5_cmd->add_option("--gamma-steps", gamma_steps);
  fig5_cmd->add_option("--gamma-max", gamma_max);

  auto* verify_cmd = app.add_subcommand("verify", "run a verification campaign");
  verify_cmd->add_option("--claim", claim, "claim id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (measure_cmd->parsed()) return cmd_measure(g, state_path, measure_name, partition);
    if (weight_cmd->parsed()) return cmd_weight(g, state_path, measure_name, weight_kind);
    if (chain_cmd->parsed()) return cmd_chain(g, state_path, measure_name);
    if (fig3_cmd->parsed())
      return cmd_sweep_fig3(g, xmin, xmax, ymin, ymax, g.samples > 0 ? g.samples : steps);
    if (fig4_cmd->parsed()) return cmd_region_fig4(g, g.samples > 0 ? g.samples : steps);
    if (fig5_cmd->parsed()) return cmd_region_fig5(g, beta_steps, gamma_steps, gamma_max);
    if (verify_cmd->parsed()) return cmd_verify(g, claim);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const polyweight::contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const polyweight::dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
