#include "cpsblotto/experiments.hpp"

#include <cmath>
#include <future>
#include <numeric>

#include <json.hpp>

#include "cpsblotto/cyber.hpp"
#include "cpsblotto/errors.hpp"
#include "cpsblotto/sampling.hpp"

namespace cpsblotto {

ValueTable reference_value_table() {
  ValueTable t;
  t.h = {0.2667, 0.1333, 0.1333, 0.1333, 0.0667, 0.0667, 0.0667, 0.0667, 0.0667};
  t.columns = {
      {"h", t.h},
      {"case1", {0.3282, 0.1221, 0.1221, 0.1221, 0.0611, 0.0611, 0.0611, 0.0611, 0.0611}},
      {"case2", {0.2406, 0.2180, 0.1203, 0.1203, 0.0602, 0.0602, 0.0602, 0.0602, 0.0602}},
      {"case3", {0.2388, 0.1194, 0.1194, 0.1194, 0.0597, 0.0597, 0.0597, 0.0597, 0.1641}},
  };
  return t;
}

namespace {

std::vector<double> number_array(const nlohmann::json& value, const std::string& what) {
  if (!value.is_array() || value.empty()) throw ParseError(what + " must be a non-empty array");
  std::vector<double> out;
  for (const auto& x : value) {
    if (!x.is_number()) throw ParseError(what + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<double> checked_column(std::span<const double> column, const std::string& name) {
  for (double x : column)
    if (!(x > 0.0)) throw ValidationError("column '" + name + "' has a non-positive entry");
  const double sum = std::accumulate(column.begin(), column.end(), 0.0);
  if (std::abs(sum - 1.0) > kColumnSumTolerance)
    throw ValidationError("column '" + name + "' sums to " + format_number(sum));
  return normalize_weights(column);
}

}  // namespace

ValueTable parse_value_table(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed value table JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("value table must be an object");
  for (const auto& item : doc.items())
    if (item.key() != "h" && item.key() != "columns") throw ParseError("unknown key '" + item.key() + "'");
  if (!doc.contains("h") || !doc.contains("columns")) throw ParseError("value table needs 'h' and 'columns'");
  ValueTable t;
  t.h = number_array(doc["h"], "h");
  const auto& cols = doc["columns"];
  if (!cols.is_array() || cols.empty()) throw ParseError("'columns' must be a non-empty array");
  for (const auto& c : cols) {
    if (!c.is_object() || !c.contains("name") || !c.contains("g") || c.size() != 2 || !c["name"].is_string())
      throw ParseError("each column needs exactly 'name' (string) and 'g'");
    ValueColumn col{c["name"].get<std::string>(), number_array(c["g"], "g")};
    if (col.g.size() != t.h.size()) throw ParseError("column '" + col.name + "' length differs from h");
    t.columns.push_back(std::move(col));
  }
  return t;
}

std::vector<ColumnPayoffs> value_table_payoffs(const ValueTable& table, double R_D, double R_A) {
  const auto h = checked_column(table.h, "h");
  std::vector<ColumnPayoffs> out;
  for (const auto& col : table.columns) {
    if (col.g.size() != h.size()) throw ValidationError("column '" + col.name + "' length differs from h");
    const auto g = checked_column(col.g, col.name);
    const auto s = solve_equilibrium(g, h, R_D, R_A);
    out.push_back({col.name, s.payoff_D, s.payoff_A});
  }
  return out;
}

CsvTable value_table_csv(const std::vector<ColumnPayoffs>& rows) {
  CsvTable csv({"column", "payoff_D", "payoff_A"});
  for (const auto& r : rows) csv.add_row({r.name, format_number(r.payoff_D), format_number(r.payoff_A)});
  return csv;
}

double population_stddev(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

void require_sweep_points(std::span<const double> points, bool allow_zero) {
  if (points.empty()) throw ValidationError("sweep needs at least one point");
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double p = points[k];
    if (!(p <= 1.0) || (allow_zero ? !(p >= 0.0) : !(p > 0.0)))
      throw ValidationError("sweep point " + format_number(p) + (allow_zero ? " outside [0, 1]" : " outside (0, 1]"));
    if (k > 0 && !(p > points[k - 1])) throw ValidationError("sweep points must be strictly increasing");
  }
}

namespace {

SweepPoint solve_point(double parameter, std::span<const double> h, std::vector<double> g, double R_D, double R_A) {
  SweepPoint p;
  p.parameter = parameter;
  p.g_stddev = population_stddev(g);
  const auto s = solve_equilibrium(g, h, R_D, R_A);
  const auto full = complete_info_payoffs(R_D, R_A);
  p.g = std::move(g);
  p.payoff_D = s.payoff_D;
  p.payoff_A = s.payoff_A;
  p.payoff_D_ratio = s.payoff_D / full.defender;
  p.payoff_A_ratio = s.payoff_A / full.attacker;
  return p;
}

template <typename F>
auto run_concurrently(std::size_t count, F work) {
  using R = decltype(work(std::size_t{0}));
  std::vector<std::future<R>> futures;
  futures.reserve(count);
  for (std::size_t k = 0; k < count; ++k) futures.push_back(std::async(std::launch::async, work, k));
  std::vector<R> out;
  out.reserve(count);
  for (auto& f : futures) out.push_back(f.get());  // rethrows the first failure in input order
  return out;
}

}  // namespace

std::vector<SweepPoint> sweep_flow_capacity(const Scenario& base, std::span<const double> points) {
  require_sweep_points(points, false);
  require_valid(base.topology);
  require_valid(base.params);
  return run_concurrently(points.size(), [&](std::size_t k) {
    const double rho = points[k];
    CpsTopology topo = base.topology;
    for (Eigen::Index i = 0; i < topo.flow.rows(); ++i)
      for (Eigen::Index j = 0; j < topo.flow.cols(); ++j)
        if (base.topology.flow(i, j) > 0.0) topo.flow(i, j) = rho * topo.capacity(i, j);
    require_valid(topo);
    const auto values = battlefield_values(topo, base.params);
    return solve_point(rho, values.h, values.g, base.params.R_D, base.params.R_A);
  });
}

std::vector<double> interpolate_to_uniform(std::span<const double> g_base, double theta) {
  const double uniform = 1.0 / static_cast<double>(g_base.size());
  std::vector<double> g(g_base.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (1.0 - theta) * g_base[i] + theta * uniform;
  return g;
}

std::vector<SweepPoint> sweep_symmetry(std::span<const double> h, std::span<const double> g_base, double R_D,
                                       double R_A, std::span<const double> thetas) {
  require_sweep_points(thetas, true);
  require_valid_game(g_base, h, R_D, R_A);
  return run_concurrently(thetas.size(), [&](std::size_t k) {
    return solve_point(thetas[k], h, interpolate_to_uniform(g_base, thetas[k]), R_D, R_A);
  });
}

namespace {

CsvTable sweep_csv(const std::vector<SweepPoint>& points, const std::string& parameter, const std::string& units) {
  CsvTable csv({parameter, "g_stddev", "payoff_D", "payoff_A", "payoff_D_ratio", "payoff_A_ratio"});
  csv.add_comment(provenance_line(units));
  for (const auto& p : points)
    csv.add_row({format_number(p.parameter), format_number(p.g_stddev), format_number(p.payoff_D),
                 format_number(p.payoff_A), format_number(p.payoff_D_ratio), format_number(p.payoff_A_ratio)});
  return csv;
}

}  // namespace

CsvTable flow_sweep_csv(const std::vector<SweepPoint>& points) {
  return sweep_csv(points, "ratio",
                   "ratio = flow/capacity (dimensionless); payoffs in value units; ratios over complete-information "
                   "payoffs");
}

CsvTable symmetry_sweep_csv(const std::vector<SweepPoint>& points) {
  return sweep_csv(points, "theta",
                   "theta = weight of the uniform vector in g; g_stddev = population standard deviation of g; "
                   "ratios over complete-information payoffs");
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<BandRow> band_probability_sweep(std::span<const double> h, std::span<const double> g_base, double R_D,
                                            double R_A, const BandSweepSpec& spec) {
  require_sweep_points(spec.thetas, true);
  require_valid_game(g_base, h, R_D, R_A);
  const int n = static_cast<int>(h.size());
  for (int node : spec.nodes)
    if (node < 0 || node >= n) throw ValidationError("band sweep node " + std::to_string(node) + " out of range");

  struct Task {
    std::size_t theta_index;
    Player player;
    int node;
  };
  std::vector<Task> tasks;
  for (std::size_t t = 0; t < spec.thetas.size(); ++t)
    for (Player player : {Player::defender, Player::attacker})
      for (int node : spec.nodes) tasks.push_back({t, player, node});

  std::vector<EquilibriumSolution> solutions;
  std::vector<std::vector<double>> gs;
  for (double theta : spec.thetas) {
    gs.push_back(interpolate_to_uniform(g_base, theta));
    solutions.push_back(solve_equilibrium(gs.back(), h, R_D, R_A));
  }

  return run_concurrently(tasks.size(), [&](std::size_t k) {
    const Task& task = tasks[k];
    const auto& s = solutions[task.theta_index];
    const auto& g = gs[task.theta_index];
    const bool defender = task.player == Player::defender;
    BandRow row;
    row.theta = spec.thetas[task.theta_index];
    row.g_stddev = population_stddev(g);
    row.player = task.player;
    row.node = task.node;
    row.share = defender ? g[static_cast<std::size_t>(task.node)] : h[static_cast<std::size_t>(task.node)];
    const auto est = allocation_band_probability(defender ? s.marginals_D : s.marginals_A, defender ? R_D : R_A,
                                                 task.node, row.share, spec.epsilon, spec.samples,
                                                 derive_seed(spec.seed, k));
    row.probability = est.probability;
    row.standard_error = est.standard_error;
    return row;
  });
}

CsvTable band_sweep_csv(const std::vector<BandRow>& rows) {
  CsvTable csv({"theta", "g_stddev", "player", "node", "share", "probability", "standard_error"});
  csv.add_comment(provenance_line(
      "probability that allocation/budget lies within epsilon of share; share = g_i (defender) or h_i (attacker)"));
  for (const auto& r : rows)
    csv.add_row({format_number(r.theta), format_number(r.g_stddev), to_string(r.player), std::to_string(r.node),
                 format_number(r.share), format_number(r.probability), format_number(r.standard_error)});
  return csv;
}

void require_distinct_levels(const CpsTopology& topology, std::span<const int> nodes) {
  std::vector<NodeLevel> levels;
  for (int node : nodes) {
    if (node < 0 || node >= topology.size()) throw ValidationError("node " + std::to_string(node) + " out of range");
    const NodeLevel level = topology.nodes[static_cast<std::size_t>(node)].level;
    for (NodeLevel seen : levels)
      if (seen == level) throw ValidationError("band sweep nodes must come from three different levels");
    levels.push_back(level);
  }
}

EffectsDump effects_dump(const Scenario& scenario) {
  const auto m = effect_matrices(scenario.topology, scenario.params);
  const auto h = scenario.topology.human_weights();
  const auto g = effective_values(h, m.interdependency);
  CsvTable values({"i", "level", "h", "g"});
  for (std::size_t i = 0; i < h.size(); ++i)
    values.add_row({std::to_string(i), std::string(to_string(scenario.topology.nodes[i].level)), format_number(h[i]),
                    format_number(g[i])});
  return {matrix_csv(m.physical, "j", "i"), matrix_csv(m.cyber, "j", "i"), matrix_csv(m.interdependency, "j", "i"),
          std::move(values)};
}

Scenario nine_node_scenario(double flow_fill) {
  const auto levels = nine_node_levels();
  return concentric_scenario(levels, flow_fill, GameParams{});
}

std::vector<double> linspace(double first, double last, int count) {
  if (count < 1) throw ValidationError("linspace needs at least one point");
  if (count == 1) return {first};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = first + (last - first) * k / (count - 1);
  out.back() = last;
  return out;
}

}  // namespace cpsblotto
