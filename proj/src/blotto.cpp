#include "cpsblotto/blotto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpsblotto/errors.hpp"

namespace cpsblotto {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kAtomSlack = 1e-12;

std::vector<char> membership(std::size_t n, std::span<const int> omega_A) {
  std::vector<char> in(n, 0);
  for (int i : omega_A) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw ValidationError("battlefield id out of range in omega_A");
    in[static_cast<std::size_t>(i)] = 1;
  }
  return in;
}

std::vector<int> omega_for(std::span<const double> g, std::span<const double> h, double mu) {
  std::vector<int> omega;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (h[i] / g[i] > mu) omega.push_back(static_cast<int>(i));
  return omega;
}

// P(X > Y) for independent atom-plus-uniform allocations.
double beats(const MarginalDistribution& x, const MarginalDistribution& y) {
  const double ux = x.support_upper, uy = y.support_upper;
  double continuous;
  if (ux <= uy) continuous = ux / (2.0 * uy);
  else continuous = 1.0 - uy / (2.0 * ux);
  return (1.0 - x.atom_at_zero) * (y.atom_at_zero + (1.0 - y.atom_at_zero) * continuous);
}

}  // namespace

const char* to_string(Player player) { return player == Player::attacker ? "attacker" : "defender"; }

double MarginalDistribution::cdf(double r) const {
  if (r < 0.0) return 0.0;
  if (r >= support_upper) return 1.0;
  return atom_at_zero + (1.0 - atom_at_zero) * r / support_upper;
}

double MarginalDistribution::quantile(double u) const {
  if (u <= atom_at_zero) return 0.0;
  return std::min(support_upper, (u - atom_at_zero) / (1.0 - atom_at_zero) * support_upper);
}

void require_valid_game(std::span<const double> g, std::span<const double> h, double R_D, double R_A) {
  if (g.empty() || g.size() != h.size()) throw ValidationError("g and h must be non-empty and of equal length");
  double sg = 0.0, sh = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0) || !(h[i] > 0.0) || !std::isfinite(g[i]) || !std::isfinite(h[i]))
      throw ValidationError("battlefield values must be positive and finite");
    sg += g[i];
    sh += h[i];
  }
  if (std::abs(sg - 1.0) > 1e-9 || std::abs(sh - 1.0) > 1e-9)
    throw ValidationError("battlefield values must each sum to 1");
  if (!(R_A > 0.0) || !(R_D >= R_A) || !std::isfinite(R_D))
    throw ValidationError("budgets must satisfy R_D >= R_A > 0");
}

Cubic budget_cubic(std::span<const double> g, std::span<const double> h, double R_D, double R_A,
                   std::span<const int> omega_A) {
  const auto in = membership(g.size(), omega_A);
  const double rho = R_D / R_A;
  double s_g2_over_h = 0.0, s_g = 0.0, s_h = 0.0, s_h2_over_g = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (in[i]) {
      s_g2_over_h += g[i] * g[i] / h[i];
      s_g += g[i];
    } else {
      s_h += h[i];
      s_h2_over_g += h[i] * h[i] / g[i];
    }
  }
  return Cubic{s_g2_over_h, -rho * s_g, s_h, -rho * s_h2_over_g};
}

std::vector<MuSolution> consistent_mu_roots(std::span<const double> g, std::span<const double> h, double R_D,
                                            double R_A) {
  require_valid_game(g, h, R_D, R_A);
  const std::size_t n = g.size();
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) ratio[i] = h[i] / g[i];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ratio[a] < ratio[b]; });

  std::vector<MuSolution> found;
  for (std::size_t k = 0; k <= n; ++k) {
    const double lo = k > 0 ? ratio[order[k - 1]] : 0.0;
    const double hi = k < n ? ratio[order[k]] : std::numeric_limits<double>::infinity();
    if (k > 0 && k < n && lo == hi) continue;  // would split tied ratios

    std::vector<int> omega(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    std::sort(omega.begin(), omega.end());
    const Cubic p = budget_cubic(g, h, R_D, R_A, omega);

    auto inside = [&](double x) {
      return x > 0.0 && x >= lo * (1.0 - 4 * kRootTolerance) && (k == n || x < hi * (1.0 + 4 * kRootTolerance));
    };
    std::vector<double> roots;
    if (k == 0) {
      // Every battlefield attacker-favoured: p = mu^2 (a mu + b), and the
      // double root at zero is not admissible.
      const double x = -p.b / p.a;
      if (inside(x)) roots.push_back(x);
    } else {
      for (double x : real_roots(p))
        if (inside(x)) roots.push_back(x);
    }

    if (roots.empty() && k > 0 && k < n) {
      // Closed form missed a root hugging the interval ends; bracket it.
      const double at_lo = p(lo), at_hi = p(hi);
      if (at_lo == 0.0) roots.push_back(lo);
      else if (at_hi == 0.0) roots.push_back(hi);
      else if ((at_lo < 0.0) != (at_hi < 0.0)) roots.push_back(bracketed_root(p, lo, hi));
    }
    for (double x : roots) {
      if (std::abs(p(x)) > kRootTolerance * std::max(1.0, p.scale(x))) {
        const double a = std::max(std::numeric_limits<double>::min(), x * (1.0 - 1e-9));
        const double b = x * (1.0 + 1e-9);
        if ((p(a) < 0.0) != (p(b) < 0.0)) x = bracketed_root(p, a, b, kRootTolerance);
      }
      MuSolution candidate{x, omega_for(g, h, x)};
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const MuSolution& s) {
        return std::abs(s.mu - x) <= 1e-10 * x;
      });
      if (!duplicate) found.push_back(std::move(candidate));
    }
  }
  return found;
}

MuSolution solve_mu(std::span<const double> g, std::span<const double> h, double R_D, double R_A) {
  auto roots = consistent_mu_roots(g, h, R_D, R_A);
  if (roots.empty()) throw RegimeError("no equilibrium in solver's regime: no partition-consistent root");
  // Values differ between players, so the game is not constant-sum and a few
  // instances admit several consistent roots; take the smallest mu.
  return *std::min_element(roots.begin(), roots.end(),
                           [](const MuSolution& a, const MuSolution& b) { return a.mu < b.mu; });
}

Multipliers solve_lambdas(double mu, std::span<const double> g, std::span<const double> h, double R_D,
                          double /*R_A*/, std::span<const int> omega_A) {
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  const auto in = membership(g.size(), omega_A);
  // Defender budget: sum_O g_i^2 mu^2 / (2 h_i lambda_A) + sum_~O h_i / (2 lambda_A) = R_D.
  double weight = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) weight += in[i] ? g[i] * g[i] * mu * mu / h[i] : h[i];
  Multipliers out;
  out.lambda_A = weight / (2.0 * R_D);
  out.lambda_D = out.lambda_A / mu;
  return out;
}

std::pair<std::vector<MarginalDistribution>, std::vector<MarginalDistribution>> equilibrium_marginals(
    double /*mu*/, double lambda_A, double lambda_D, std::span<const double> g, std::span<const double> h,
    std::span<const int> omega_A) {
  const auto in = membership(g.size(), omega_A);
  std::vector<MarginalDistribution> attacker, defender;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int id = static_cast<int>(i);
    const double attacker_reach = h[i] / lambda_A;  // h_i / lambda_A
    const double defender_reach = g[i] / lambda_D;  // g_i / lambda_D
    double atom;
    if (!in[i]) {
      atom = (defender_reach - attacker_reach) / defender_reach;
      if (atom < -kAtomSlack) throw RegimeError("negative attacker atom at battlefield " + std::to_string(i));
      atom = std::clamp(atom, 0.0, 1.0);
      attacker.push_back({id, Player::attacker, atom, attacker_reach});
      defender.push_back({id, Player::defender, 0.0, attacker_reach});
    } else {
      atom = (attacker_reach - defender_reach) / attacker_reach;
      if (atom < -kAtomSlack) throw RegimeError("negative defender atom at battlefield " + std::to_string(i));
      atom = std::clamp(atom, 0.0, 1.0);
      attacker.push_back({id, Player::attacker, 0.0, defender_reach});
      defender.push_back({id, Player::defender, atom, defender_reach});
    }
  }
  return {std::move(attacker), std::move(defender)};
}

Payoffs win_probabilities(const EquilibriumSolution& solution, int battlefield) {
  const auto& a = solution.marginals_A.at(static_cast<std::size_t>(battlefield));
  const auto& d = solution.marginals_D.at(static_cast<std::size_t>(battlefield));
  return Payoffs{beats(d, a), beats(a, d)};
}

Payoffs expected_payoffs(const EquilibriumSolution& solution, std::span<const double> g,
                         std::span<const double> h) {
  Payoffs total;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Payoffs p = win_probabilities(solution, static_cast<int>(i));
    total.defender += g[i] * p.defender;
    total.attacker += h[i] * p.attacker;
  }
  return total;
}

Payoffs complete_info_payoffs(double R_D, double R_A) {
  if (!(R_A > 0.0) || !(R_D >= R_A)) throw ValidationError("budgets must satisfy R_D >= R_A > 0");
  const double attacker = R_A / (2.0 * R_D);
  return Payoffs{1.0 - attacker, attacker};
}

EquilibriumSolution solve_equilibrium(std::span<const double> g, std::span<const double> h, double R_D,
                                      double R_A) {
  MuSolution root = solve_mu(g, h, R_D, R_A);
  const Multipliers lambdas = solve_lambdas(root.mu, g, h, R_D, R_A, root.omega_A);
  EquilibriumSolution s;
  s.mu = root.mu;
  s.lambda_A = lambdas.lambda_A;
  s.lambda_D = lambdas.lambda_D;
  s.omega_A = std::move(root.omega_A);
  std::tie(s.marginals_A, s.marginals_D) = equilibrium_marginals(s.mu, s.lambda_A, s.lambda_D, g, h, s.omega_A);
  const Payoffs p = expected_payoffs(s, g, h);
  s.payoff_D = p.defender;
  s.payoff_A = p.attacker;
  return s;
}

Expenditure expected_expenditure(const EquilibriumSolution& solution, std::span<const double> g,
                                 std::span<const double> h) {
  const auto in = membership(g.size(), solution.omega_A);
  Expenditure e;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double attacker_reach = h[i] / solution.lambda_A;
    const double defender_reach = g[i] / solution.lambda_D;
    if (in[i]) {
      e.attacker += defender_reach / 2.0;
      e.defender += defender_reach * defender_reach / (2.0 * attacker_reach);
    } else {
      e.attacker += attacker_reach * attacker_reach / (2.0 * defender_reach);
      e.defender += attacker_reach / 2.0;
    }
  }
  return e;
}

double relative_cubic_residual(const EquilibriumSolution& solution, std::span<const double> g,
                               std::span<const double> h, double R_D, double R_A) {
  const Cubic p = budget_cubic(g, h, R_D, R_A, solution.omega_A);
  const double scale = p.scale(solution.mu);
  return scale > 0.0 ? std::abs(p(solution.mu)) / scale : 0.0;
}

TheoremCaseReport theorem1_case(double h_m, double h_l, std::span<const double> h, double R_D, double R_A) {
  if (h.size() < 2) throw ValidationError("special case needs at least two battlefields");
  const auto max_it = std::max_element(h.begin(), h.end());
  int m = static_cast<int>(max_it - h.begin());
  int l = -1;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (static_cast<int>(i) != m && (l < 0 || h[i] < h[static_cast<std::size_t>(l)])) l = static_cast<int>(i);
  if (std::abs(h[static_cast<std::size_t>(m)] - h_m) > 1e-12 || std::abs(h[static_cast<std::size_t>(l)] - h_l) > 1e-12)
    throw ValidationError("h_m and h_l must be the largest and smallest entries of h");

  TheoremCaseReport r;
  r.node_max = m;
  r.node_min = l;
  const double rho = R_D / R_A;
  const double spread = h_m + h_l - h_m * h_l;
  r.regime_bound = (h_m + h_l) / spread;
  if (rho < r.regime_bound)
    throw RegimeError("outside theorem regime: R_D/R_A = " + std::to_string(rho) + " < " +
                      std::to_string(r.regime_bound));

  r.g.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) r.g[i] = h[i] / (1.0 + h_l);
  r.g[static_cast<std::size_t>(m)] = (h_m + h_l) / (1.0 + h_l);

  const double k = (h_m + h_l) / ((1.0 + h_l) * spread);
  r.mu_closed_form = rho * (1.0 + h_l) * spread / (h_m + h_l);
  r.lambda_A_closed_form = 1.0 / (2.0 * R_D);
  r.lambda_D_closed_form = k / (2.0 * R_A);
  r.payoff_D_closed_form = 1.0 + (R_D - 2.0 * R_A) / (2.0 * R_D) * k;
  r.complete_info = complete_info_payoffs(R_D, R_A);

  r.solution = solve_equilibrium(r.g, h, R_D, R_A);
  if (std::abs(r.solution.payoff_A - r.complete_info.attacker) > 1e-9)
    throw Error("special case: attacker payoff differs from R_A/(2R_D)");
  if (r.solution.payoff_D < r.complete_info.defender - 1e-12)
    throw Error("special case: defender payoff below the complete-information payoff");
  return r;
}

}  // namespace cpsblotto
