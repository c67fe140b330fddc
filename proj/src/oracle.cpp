#include "cpsblotto/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "cpsblotto/errors.hpp"

namespace cpsblotto {

std::size_t composition_count(int units, int n) {
  if (units < 0 || n <= 0) return 0;
  // C(units + n - 1, n - 1) built up incrementally; each partial product is
  // itself a binomial coefficient, so the division is exact.
  std::size_t count = 1;
  for (int k = 1; k < n; ++k) {
    count = count * static_cast<std::size_t>(units + k) / static_cast<std::size_t>(k);
    if (count > kMaxStrategies) return kMaxStrategies + 1;
  }
  return count;
}

std::vector<std::vector<int>> enumerate_strategies(int units, int n) {
  if (units < 0 || n <= 0) throw ValidationError("strategy enumeration needs units >= 0 and n >= 1");
  if (composition_count(units, n) > kMaxStrategies) throw ValidationError("strategy space too large to enumerate");
  std::vector<std::vector<int>> out;
  out.reserve(composition_count(units, n));
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  auto fill = [&](auto&& self, int position, int left) -> void {
    if (position == n - 1) {
      current[static_cast<std::size_t>(position)] = left;
      out.push_back(current);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      current[static_cast<std::size_t>(position)] = x;
      self(self, position + 1, left - x);
    }
  };
  fill(fill, 0, units);
  return out;
}

namespace {

class PayoffTable {
 public:
  PayoffTable(const DiscreteGame& game, std::vector<std::vector<int>> defender,
              std::vector<std::vector<int>> attacker)
      : game_(game), defender_(std::move(defender)), attacker_(std::move(attacker)) {
    const std::size_t cells = defender_.size() * attacker_.size();
    if (cells <= kCacheLimit) {
      cached_ = true;
      to_defender_.resize(cells);
      to_attacker_.resize(cells);
      for (std::size_t d = 0; d < defender_.size(); ++d) {
        for (std::size_t a = 0; a < attacker_.size(); ++a) {
          const auto [pd, pa] = compute(d, a);
          to_defender_[d * attacker_.size() + a] = pd;
          to_attacker_[d * attacker_.size() + a] = pa;
        }
      }
    }
  }

  std::size_t defenders() const { return defender_.size(); }
  std::size_t attackers() const { return attacker_.size(); }

  std::pair<double, double> operator()(std::size_t d, std::size_t a) const {
    if (cached_) {
      const std::size_t cell = d * attacker_.size() + a;
      return {to_defender_[cell], to_attacker_[cell]};
    }
    return compute(d, a);
  }

 private:
  static constexpr std::size_t kCacheLimit = 4'000'000;

  std::pair<double, double> compute(std::size_t d, std::size_t a) const {
    double pd = 0.0, pa = 0.0;
    const auto& rd = defender_[d];
    const auto& ra = attacker_[a];
    for (int i = 0; i < game_.n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (rd[k] > ra[k]) pd += game_.values_D[k];
      else if (ra[k] > rd[k]) pa += game_.values_A[k];
    }
    return {pd, pa};
  }

  const DiscreteGame& game_;
  std::vector<std::vector<int>> defender_;
  std::vector<std::vector<int>> attacker_;
  bool cached_ = false;
  std::vector<double> to_defender_;
  std::vector<double> to_attacker_;
};

std::size_t argmax(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] > values[best]) best = k;
  return best;
}

}  // namespace

FictitiousPlayResult fictitious_play(const DiscreteGame& game, int iterations) {
  if (game.n <= 0 || game.values_A.size() != static_cast<std::size_t>(game.n) ||
      game.values_D.size() != static_cast<std::size_t>(game.n))
    throw ValidationError("discrete game values must have n entries");
  if (iterations < 10'000) throw ValidationError("fictitious play needs at least 10^4 iterations");

  const PayoffTable table(game, enumerate_strategies(game.units_D, game.n), enumerate_strategies(game.units_A, game.n));
  const std::size_t nd = table.defenders(), na = table.attackers();

  // Beliefs start as one round of uniform play by the opponent.
  std::vector<double> belief_D(nd, 0.0), belief_A(na, 0.0);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t a = 0; a < na; ++a) {
      const auto [pd, pa] = table(d, a);
      belief_D[d] += pd / static_cast<double>(na);
      belief_A[a] += pa / static_cast<double>(nd);
    }
  }

  // For the averaged payoffs: cross_X = sum over played pairs (s, t) of u_X(d_s, a_t),
  // built from the row sums against past attacker moves (cum_*) and the
  // column sums against past defender moves (col_*).
  std::vector<double> cum_D(nd, 0.0), col_D(na, 0.0), cum_A(na, 0.0), row_A(nd, 0.0);
  std::vector<double> count_D(nd, 0.0), count_A(na, 0.0);
  double cross_D = 0.0, cross_A = 0.0;

  FictitiousPlayResult result;
  result.iterations = iterations;
  result.min_payoff_seen = 1.0;
  result.max_payoff_seen = 0.0;
  const int window_start = iterations - std::max(1, iterations / 10);
  double window_min_D = 1e300, window_max_D = -1e300, window_min_A = 1e300, window_max_A = -1e300;

  for (int t = 0; t < iterations; ++t) {
    const std::size_t d = argmax(belief_D);
    const std::size_t a = argmax(belief_A);

    const auto [pd_now, pa_now] = table(d, a);
    cross_D += cum_D[d] + col_D[a] + pd_now;
    cross_A += cum_A[a] + row_A[d] + pa_now;
    for (std::size_t k = 0; k < nd; ++k) {
      const auto [pd, pa] = table(k, a);
      belief_D[k] += pd;
      cum_D[k] += pd;
      row_A[k] += pa;
    }
    for (std::size_t k = 0; k < na; ++k) {
      const auto [pd, pa] = table(d, k);
      belief_A[k] += pa;
      cum_A[k] += pa;
      col_D[k] += pd;
    }
    count_D[d] += 1.0;
    count_A[a] += 1.0;

    const double rounds = static_cast<double>(t + 1);
    const double avg_D = cross_D / (rounds * rounds);
    const double avg_A = cross_A / (rounds * rounds);
    result.min_payoff_seen = std::min({result.min_payoff_seen, avg_D, avg_A});
    result.max_payoff_seen = std::max({result.max_payoff_seen, avg_D, avg_A});
    if (t >= window_start) {
      window_min_D = std::min(window_min_D, avg_D);
      window_max_D = std::max(window_max_D, avg_D);
      window_min_A = std::min(window_min_A, avg_A);
      window_max_A = std::max(window_max_A, avg_A);
    }
  }

  const double rounds = static_cast<double>(iterations);
  result.payoffs = Payoffs{cross_D / (rounds * rounds), cross_A / (rounds * rounds)};
  result.mixed_D.resize(nd);
  result.mixed_A.resize(na);
  for (std::size_t k = 0; k < nd; ++k) result.mixed_D[k] = count_D[k] / rounds;
  for (std::size_t k = 0; k < na; ++k) result.mixed_A[k] = count_A[k] / rounds;
  result.convergence_metric = std::max(window_max_D - window_min_D, window_max_A - window_min_A);
  result.converged = result.convergence_metric <= 0.01;
  return result;
}

CrossValidationReport cross_validate(std::span<const double> g, std::span<const double> h, double R_D, double R_A,
                                     int grid_units, int iterations) {
  if (grid_units < 1) throw ValidationError("grid_units must be positive");
  require_valid_game(g, h, R_D, R_A);
  CrossValidationReport report;
  report.grid_units = grid_units;
  report.units_A = grid_units;
  report.units_D = static_cast<int>(std::lround(grid_units * R_D / R_A));

  try {
    const EquilibriumSolution s = solve_equilibrium(g, h, report.units_D, report.units_A);
    report.analytic = Payoffs{s.payoff_D, s.payoff_A};
    report.analytic_ok = true;
  } catch (const Error& e) {
    report.analytic_error = e.what();
  }

  DiscreteGame game;
  game.n = static_cast<int>(g.size());
  game.units_A = report.units_A;
  game.units_D = report.units_D;
  game.values_A.assign(h.begin(), h.end());
  game.values_D.assign(g.begin(), g.end());
  report.oracle = fictitious_play(game, iterations);

  if (report.analytic_ok) {
    report.abs_diff = Payoffs{std::abs(report.analytic.defender - report.oracle.payoffs.defender),
                              std::abs(report.analytic.attacker - report.oracle.payoffs.attacker)};
    report.pass = report.abs_diff.defender <= report.tolerance && report.abs_diff.attacker <= report.tolerance;
  }
  return report;
}

}  // namespace cpsblotto
