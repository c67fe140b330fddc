// cpsblotto: scenario checks, effect dumps, equilibrium solves and the
// payoff sweeps, all as JSON or CSV.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpsblotto/cyber.hpp"
#include "cpsblotto/errors.hpp"
#include "cpsblotto/experiments.hpp"
#include "cpsblotto/json_io.hpp"
#include "cpsblotto/oracle.hpp"
#include "cpsblotto/sampling.hpp"
#include "cpsblotto/version.hpp"

namespace fs = std::filesystem;
using namespace cpsblotto;

namespace {

struct Common {
  std::string scenario;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<double> rd, ra, alpha, beta, t0;
};

void add_common(CLI::App* cmd, Common& c, bool with_scenario = true) {
  if (with_scenario) cmd->add_option("--scenario", c.scenario, "scenario JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output path (stdout when omitted)");
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--rd", c.rd, "defender budget R_D");
  cmd->add_option("--ra", c.ra, "attacker budget R_A");
  cmd->add_option("--alpha", c.alpha, "weight of physical effects");
  cmd->add_option("--beta", c.beta, "weight of cyber effects");
  cmd->add_option("--t0", c.t0, "baseline cyber effect");
}

void apply_overrides(GameParams& p, const Common& c) {
  if (c.rd) p.R_D = *c.rd;
  if (c.ra) p.R_A = *c.ra;
  if (c.alpha) {
    p.alpha = *c.alpha;
    if (!c.beta) p.beta = 1.0 - *c.alpha;
  }
  if (c.beta) {
    p.beta = *c.beta;
    if (!c.alpha) p.alpha = 1.0 - *c.beta;
  }
  if (c.t0) p.t0 = *c.t0;
  require_valid(p);
}

// Scenario from --scenario, or the generated nine-node layout at `fill`.
Scenario scenario_or_default(const Common& c, double fill) {
  Scenario s = c.scenario.empty() ? nine_node_scenario(fill) : load_scenario(c.scenario);
  apply_overrides(s.params, c);
  return s;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<LevelSpec> parse_levels(const std::string& text) {
  std::vector<LevelSpec> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("level '" + item + "' is not count:weight");
    try {
      levels.push_back({std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw ParseError("level '" + item + "' is not count:weight");
    }
  }
  return levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interdependent CPS security allocation as an asymmetric Colonel Blotto game"};
  // --h names the attacker values, so help is long-form only
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Common c;
  double fill = 0.5;
  std::vector<double> g, h, points;
  std::string levels_text = "1:4,3:2,5:1", table_path;
  int grid_units = 20, iterations = 50'000, samples = 1000;
  std::string samples_out;
  std::vector<int> nodes;
  double epsilon = 0.02;
  std::size_t band_samples = 100'000;

  auto* validate = app.add_subcommand("validate", "check a scenario file against the model invariants");
  validate->add_option("--scenario", c.scenario)->required()->check(CLI::ExistingFile);

  auto* generate = app.add_subcommand("generate", "write a layered concentric scenario");
  add_common(generate, c, false);
  generate->add_option("--levels", levels_text, "count:weight per ring, reference first");
  generate->add_option("--fill", fill, "flow / capacity on every edge");

  auto* effects = app.add_subcommand("effects", "dump E, T, V and g as CSV files into --out (a directory)");
  add_common(effects, c);
  effects->add_option("--fill", fill, "flow fill of the default scenario");

  auto* solve = app.add_subcommand("solve", "solve the equilibrium for a scenario or explicit g/h");
  add_common(solve, c);
  solve->add_option("--g", g, "defender values")->delimiter(',');
  solve->add_option("--h", h, "attacker values")->delimiter(',');
  solve->add_option("--fill", fill, "flow fill of the default scenario");
  solve->add_option("--samples-out", samples_out, "CSV of sampled defender allocations");
  solve->add_option("--samples", samples, "number of sampled allocations");

  auto* table = app.add_subcommand("table1", "payoffs for value columns at fixed budgets");
  add_common(table, c, false);
  table->add_option("--input", table_path, "value table JSON; built-in case study when omitted")
      ->check(CLI::ExistingFile);

  auto* sweep_flow = app.add_subcommand("sweep-flow", "payoff ratios over the flow/capacity ratio");
  add_common(sweep_flow, c);
  sweep_flow->add_option("--points", points, "ratios in (0, 1], increasing")->delimiter(',');

  auto* sweep_sym = app.add_subcommand("sweep-symmetry", "payoff ratios as g is pulled toward uniform");
  add_common(sweep_sym, c);
  sweep_sym->add_option("--points", points, "theta values in [0, 1], increasing")->delimiter(',');
  sweep_sym->add_option("--fill", fill, "flow fill of the default scenario");

  auto* fig4 = app.add_subcommand("fig4", "allocation band probabilities for three nodes");
  add_common(fig4, c);
  fig4->add_option("--nodes", nodes, "three node ids from three levels")->delimiter(',')->expected(3);
  fig4->add_option("--epsilon", epsilon, "band half-width");
  fig4->add_option("--samples", band_samples, "Monte Carlo samples per estimate");
  fig4->add_option("--points", points, "theta values in [0, 1], increasing")->delimiter(',');
  fig4->add_option("--fill", fill, "flow fill of the default scenario");

  auto* oracle = app.add_subcommand("oracle", "cross-check the solver against fictitious play");
  add_common(oracle, c);
  oracle->add_option("--g", g, "defender values")->delimiter(',');
  oracle->add_option("--h", h, "attacker values")->delimiter(',');
  oracle->add_option("--grid-units", grid_units, "integer units for the attacker budget");
  oracle->add_option("--iterations", iterations, "fictitious play rounds");
  oracle->add_option("--fill", fill, "flow fill of the default scenario");

  auto* theorem = app.add_subcommand("theorem", "special case where interdependency only lifts the top node");
  add_common(theorem, c, false);
  theorem->add_option("--h", h, "attacker values; the largest and smallest set h_m and h_l")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) {
      const std::string text = read_file(c.scenario);
      Scenario s;
      try {
        s = parse_scenario(text);
      } catch (const ValidationError& e) {
        std::cout << e.what() << "\n";
        return 1;
      }
      std::cout << "ok: " << s.topology.size() << " nodes\n";
      return 0;
    }

    if (*generate) {
      GameParams params;
      apply_overrides(params, c);
      emit(c, dump_scenario(concentric_scenario(parse_levels(levels_text), fill, params)));
      return 0;
    }

    // explicit --g/--h, else the pipeline on the scenario
    auto values = [&](const Scenario& s) {
      if (g.empty() != h.empty()) throw ValidationError("--g and --h go together");
      if (!g.empty()) return BattlefieldValues{normalize_weights(h), normalize_weights(g)};
      return battlefield_values(s.topology, s.params);
    };

    if (*effects) {
      const Scenario s = scenario_or_default(c, fill);
      const EffectsDump dump = effects_dump(s);
      const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
      fs::create_directories(dir);
      dump.physical.save(dir / "E.csv");
      dump.cyber.save(dir / "T.csv");
      dump.interdependency.save(dir / "V.csv");
      dump.values.save(dir / "values.csv");
      return 0;
    }

    if (*solve) {
      Scenario s;
      if (g.empty()) s = scenario_or_default(c, fill);
      else apply_overrides(s.params, c);
      const BattlefieldValues v = values(s);
      const EquilibriumSolution sol = solve_equilibrium(v.g, v.h, s.params.R_D, s.params.R_A);
      emit(c, solution_json(sol));
      if (!samples_out.empty()) {
        std::vector<std::string> header{"sample"};
        for (std::size_t i = 0; i < v.g.size(); ++i) header.push_back("r" + std::to_string(i));
        CsvTable csv(header);
        std::mt19937_64 rng(c.seed);
        for (int k = 0; k < samples; ++k) {
          const AllocationSample a = sample_allocation(sol.marginals_D, s.params.R_D, rng);
          std::vector<std::string> row{std::to_string(k)};
          for (double x : a.r) row.push_back(format_number(x));
          csv.add_row(std::move(row));
        }
        csv.save(samples_out);
      }
      return 0;
    }

    if (*table) {
      GameParams params;
      apply_overrides(params, c);
      const ValueTable t = table_path.empty() ? reference_value_table() : parse_value_table(read_file(table_path));
      emit(c, value_table_csv(value_table_payoffs(t, params.R_D, params.R_A)).str());
      return 0;
    }

    if (*sweep_flow) {
      const Scenario s = scenario_or_default(c, 1.0);
      if (points.empty()) points = linspace(0.1, 1.0, 10);
      emit(c, flow_sweep_csv(sweep_flow_capacity(s, points)).str());
      return 0;
    }

    if (*sweep_sym) {
      const Scenario s = scenario_or_default(c, fill);
      const BattlefieldValues v = battlefield_values(s.topology, s.params);
      if (points.empty()) points = linspace(0.0, 1.0, 10);
      emit(c, symmetry_sweep_csv(sweep_symmetry(v.h, v.g, s.params.R_D, s.params.R_A, points)).str());
      return 0;
    }

    if (*fig4) {
      const Scenario s = scenario_or_default(c, fill);
      if (nodes.empty()) nodes = {0, 1, s.topology.size() - 1};
      require_distinct_levels(s.topology, nodes);
      const BattlefieldValues v = battlefield_values(s.topology, s.params);
      BandSweepSpec spec;
      std::copy(nodes.begin(), nodes.end(), spec.nodes.begin());
      spec.epsilon = epsilon;
      spec.samples = band_samples;
      spec.seed = c.seed;
      spec.thetas = points.empty() ? linspace(0.0, 1.0, 5) : points;
      emit(c, band_sweep_csv(band_probability_sweep(v.h, v.g, s.params.R_D, s.params.R_A, spec)).str());
      return 0;
    }

    if (*theorem) {
      GameParams params;
      apply_overrides(params, c);
      const auto hn = normalize_weights(h);
      const double h_m = *std::max_element(hn.begin(), hn.end());
      double h_l = h_m;
      bool skipped_max = false;
      for (double x : hn) {
        if (x == h_m && !skipped_max) {
          skipped_max = true;
          continue;
        }
        h_l = std::min(h_l, x);
      }
      const TheoremCaseReport r = theorem1_case(h_m, h_l, hn, params.R_D, params.R_A);
      std::ostringstream out;
      out.precision(17);
      out << "{\n  \"regime_bound\": " << r.regime_bound << ",\n  \"mu\": " << r.solution.mu
          << ",\n  \"mu_closed_form\": " << r.mu_closed_form << ",\n  \"lambda_A\": " << r.solution.lambda_A
          << ",\n  \"lambda_A_closed_form\": " << r.lambda_A_closed_form << ",\n  \"lambda_D\": "
          << r.solution.lambda_D << ",\n  \"lambda_D_closed_form\": " << r.lambda_D_closed_form
          << ",\n  \"payoff_D\": " << r.solution.payoff_D << ",\n  \"payoff_D_closed_form\": "
          << r.payoff_D_closed_form << ",\n  \"payoff_A\": " << r.solution.payoff_A
          << ",\n  \"complete_info_payoff_D\": " << r.complete_info.defender << "\n}\n";
      emit(c, out.str());
      return 0;
    }

    if (*oracle) {
      Scenario s;
      if (g.empty()) s = scenario_or_default(c, fill);
      else apply_overrides(s.params, c);
      const BattlefieldValues v = values(s);
      const CrossValidationReport r =
          cross_validate(v.g, v.h, s.params.R_D, s.params.R_A, grid_units, iterations);
      emit(c, cross_validation_json(r));
      return 0;
    }
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
