#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cpsblotto/blotto.hpp"

namespace cpsblotto {

/// Integer-resource version of the game: each player splits an integer
/// budget over n battlefields; a battlefield goes to whoever puts strictly
/// more on it, and a tie pays neither side.
struct DiscreteGame {
  int n = 0;
  int units_A = 0;
  int units_D = 0;
  std::vector<double> values_A;  // h
  std::vector<double> values_D;  // g
};

inline constexpr std::size_t kMaxStrategies = 1'000'000;

/// C(units + n - 1, n - 1), saturating at kMaxStrategies + 1.
std::size_t composition_count(int units, int n);

/// All non-negative integer n-vectors summing to `units`, lexicographic.
/// Throws ValidationError past kMaxStrategies.
std::vector<std::vector<int>> enumerate_strategies(int units, int n);

struct FictitiousPlayResult {
  Payoffs payoffs;                 // at the time-averaged strategies
  std::vector<double> mixed_D;     // empirical frequencies over enumerate_strategies(units_D, n)
  std::vector<double> mixed_A;
  double convergence_metric = 0.0; // largest payoff swing over the last 10% of rounds
  bool converged = false;          // metric <= 0.01
  int iterations = 0;
  double min_payoff_seen = 0.0;    // range of the averaged payoffs over all rounds
  double max_payoff_seen = 0.0;
};

/// Simultaneous fictitious play from uniform beliefs; best-response ties go
/// to the lexicographically lowest strategy, so a run is fully determined by
/// the game and the iteration count. Throws ValidationError below 10^4
/// iterations.
FictitiousPlayResult fictitious_play(const DiscreteGame& game, int iterations);

struct CrossValidationReport {
  int grid_units = 0;
  int units_A = 0;
  int units_D = 0;
  bool analytic_ok = false;
  std::string analytic_error;
  Payoffs analytic;
  FictitiousPlayResult oracle;
  Payoffs abs_diff;
  double tolerance = 0.03;
  bool pass = false;
};

/// Discretizes the game with `grid_units` units for the attacker (the
/// smaller budget) and the defender's budget scaled to the same grid, solves
/// it analytically at the discretized budget ratio and by fictitious play,
/// and compares the payoffs. Solver failures are captured in the report.
CrossValidationReport cross_validate(std::span<const double> g, std::span<const double> h, double R_D, double R_A,
                                     int grid_units, int iterations = 50'000);

}  // namespace cpsblotto
