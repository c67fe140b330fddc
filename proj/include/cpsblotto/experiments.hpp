#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpsblotto/blotto.hpp"
#include "cpsblotto/concentric.hpp"
#include "cpsblotto/csv.hpp"
#include "cpsblotto/scenario.hpp"

namespace cpsblotto {

struct ValueColumn {
  std::string name;
  std::vector<double> g;
};

/// h plus one or more defender value columns, solved at fixed budgets
/// without running the cascade.
struct ValueTable {
  std::vector<double> h;
  std::vector<ValueColumn> columns;
};

/// Nine-node case study: the h column and the three interdependency cases,
/// to four decimals. The first column repeats h (independent nodes).
ValueTable reference_value_table();

/// {"h": [...], "columns": [{"name": "...", "g": [...]}, ...]}
ValueTable parse_value_table(std::string_view json_text);

inline constexpr double kColumnSumTolerance = 0.002;

struct ColumnPayoffs {
  std::string name;
  double payoff_D = 0.0;
  double payoff_A = 0.0;
};

/// Columns (and h) whose sum is off by more than kColumnSumTolerance are
/// rejected with ValidationError; the rest are renormalized before solving.
std::vector<ColumnPayoffs> value_table_payoffs(const ValueTable& table, double R_D = 2.5, double R_A = 1.0);
CsvTable value_table_csv(const std::vector<ColumnPayoffs>& rows);

double population_stddev(std::span<const double> values);

struct SweepPoint {
  double parameter = 0.0;  // flow/capacity ratio or interpolation weight theta
  double g_stddev = 0.0;
  std::vector<double> g;
  double payoff_D = 0.0;
  double payoff_A = 0.0;
  double payoff_D_ratio = 0.0;  // over the complete-information payoff
  double payoff_A_ratio = 0.0;
};

/// Requires points strictly increasing; throws ValidationError otherwise.
void require_sweep_points(std::span<const double> points, bool allow_zero);

/// Sets every active edge (positive base flow) to rho times its capacity,
/// runs the full pipeline and solves the game, for each rho in (0, 1].
/// Points are evaluated concurrently; the result is in input order.
std::vector<SweepPoint> sweep_flow_capacity(const Scenario& base, std::span<const double> points);

/// g(theta) = (1 - theta) g_base + theta / n for theta in [0, 1].
std::vector<double> interpolate_to_uniform(std::span<const double> g_base, double theta);

std::vector<SweepPoint> sweep_symmetry(std::span<const double> h, std::span<const double> g_base, double R_D,
                                       double R_A, std::span<const double> thetas);

CsvTable flow_sweep_csv(const std::vector<SweepPoint>& points);
CsvTable symmetry_sweep_csv(const std::vector<SweepPoint>& points);

struct BandRow {
  double theta = 0.0;
  double g_stddev = 0.0;
  Player player = Player::defender;
  int node = 0;
  double share = 0.0;  // g_i for the defender, h_i for the attacker
  double probability = 0.0;
  double standard_error = 0.0;
};

struct BandSweepSpec {
  std::array<int, 3> nodes{};
  double epsilon = 0.02;
  std::size_t samples = 100'000;
  std::uint64_t seed = 1;
  std::vector<double> thetas;
};

/// For each theta, solves the game at g(theta) and estimates, for each of
/// the three nodes and both players, the probability that the player's
/// allocation share lands within epsilon of its value share. Every estimate
/// gets its own seed derived from spec.seed, so output does not depend on
/// evaluation order.
std::vector<BandRow> band_probability_sweep(std::span<const double> h, std::span<const double> g_base, double R_D,
                                            double R_A, const BandSweepSpec& spec);
CsvTable band_sweep_csv(const std::vector<BandRow>& rows);

/// Requires the three nodes to sit on three different levels.
void require_distinct_levels(const CpsTopology& topology, std::span<const int> nodes);

/// E, T, V and the value vectors for a scenario.
struct EffectsDump {
  CsvTable physical;
  CsvTable cyber;
  CsvTable interdependency;
  CsvTable values;
};
EffectsDump effects_dump(const Scenario& scenario);

/// Nine-node concentric scenario at the given flow fill, with default
/// parameters (alpha = beta = 0.5, default t0, R_D = 2.5, R_A = 1).
Scenario nine_node_scenario(double flow_fill = 0.5);

/// evenly spaced points first, first + step, ..., last.
std::vector<double> linspace(double first, double last, int count);

}  // namespace cpsblotto
