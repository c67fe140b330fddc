#include <doctest.h>

#include <cmath>
#include <random>

#include "cpsblotto/blotto.hpp"
#include "cpsblotto/errors.hpp"
#include "cpsblotto/topology.hpp"

using namespace cpsblotto;

namespace {

struct Instance {
  std::vector<double> g, h;
  double R_D, R_A;
};

Instance random_instance(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> value(0.05, 1.0), ratio(1.0, 4.0);
  Instance x;
  for (int i = 0; i < n; ++i) {
    x.g.push_back(value(rng));
    x.h.push_back(value(rng));
  }
  x.g = normalize_weights(x.g);
  x.h = normalize_weights(x.h);
  x.R_A = 1.0;
  x.R_D = ratio(rng);
  return x;
}

// P(first allocates strictly more than second), midpoint rule over the
// continuous part of `first`; the atoms never sit on the same battlefield.
double beats_by_quadrature(const MarginalDistribution& first, const MarginalDistribution& second) {
  const int steps = 20000;
  const double width = first.support_upper / steps;
  const double density = (1.0 - first.atom_at_zero) / steps;
  double total = 0.0;
  for (int k = 0; k < steps; ++k) total += density * second.cdf((k + 0.5) * width);
  return total;
}

}  // namespace

TEST_SUITE("blotto") {
  TEST_CASE("marginal distribution") {
    MarginalDistribution m{0, Player::attacker, 0.25, 2.0};
    CHECK(m.cdf(-1) == 0.0);
    CHECK(m.cdf(0) == doctest::Approx(0.25));
    CHECK(m.cdf(1) == doctest::Approx(0.625));
    CHECK(m.cdf(5) == 1.0);
    CHECK(m.mean() == doctest::Approx(0.75));
    CHECK(m.quantile(0.1) == 0.0);
    CHECK(m.quantile(0.625) == doctest::Approx(1.0));
  }

  TEST_CASE("identical values") {
    const std::vector<double> h{0.5, 0.3, 0.2};
    const auto s = solve_equilibrium(h, h, 2.5, 1.0);
    CHECK(s.mu == doctest::Approx(2.5));
    CHECK(s.omega_A.empty());
    CHECK(s.lambda_A == doctest::Approx(0.2));
    CHECK(s.lambda_D == doctest::Approx(0.08));
    for (const auto& m : s.marginals_A) CHECK(m.atom_at_zero == doctest::Approx(0.6));
    for (const auto& m : s.marginals_D) CHECK(m.atom_at_zero == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.payoff_A == doctest::Approx(0.2));
    CHECK(s.payoff_D == doctest::Approx(0.8));
  }

  TEST_CASE("mu for a set-free partition") {
    const std::vector<double> h{0.2667, 0.1333, 0.1333, 0.1333, 0.0667, 0.0667, 0.0667, 0.0667, 0.0667};
    const std::vector<double> g{0.3282, 0.1221, 0.1221, 0.1221, 0.0611, 0.0611, 0.0611, 0.0611, 0.0611};
    const auto gn = normalize_weights(g), hn = normalize_weights(h);
    const auto s = solve_mu(gn, hn, 2.5, 1.0);
    double expected = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) expected += hn[i] * hn[i] / gn[i];
    CHECK(s.omega_A.empty());
    CHECK(s.mu == doctest::Approx(2.5 * expected).epsilon(1e-12));
    CHECK(s.mu == doctest::Approx(2.5435).epsilon(1e-3));
  }

  TEST_CASE("random instances satisfy the budget identities") {
    std::mt19937_64 rng(21);
    int with_attacker_set = 0, multiple = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto x = random_instance(rng, 2 + trial % 8);
      const auto s = solve_equilibrium(x.g, x.h, x.R_D, x.R_A);
      if (!s.omega_A.empty()) ++with_attacker_set;
      const auto spent = expected_expenditure(s, x.g, x.h);
      CHECK(spent.attacker == doctest::Approx(x.R_A).epsilon(1e-9));
      CHECK(spent.defender == doctest::Approx(x.R_D).epsilon(1e-9));
      CHECK(relative_cubic_residual(s, x.g, x.h, x.R_D, x.R_A) <= 1e-12);
      CHECK(s.payoff_D >= 0.0);
      CHECK(s.payoff_D <= 1.0);
      CHECK(s.payoff_A >= 0.0);
      CHECK(s.payoff_A <= 1.0);
      for (std::size_t i = 0; i < x.g.size(); ++i) {
        CHECK(s.marginals_A[i].atom_at_zero >= 0.0);
        CHECK(s.marginals_D[i].atom_at_zero >= 0.0);
        const bool in_omega = std::find(s.omega_A.begin(), s.omega_A.end(), static_cast<int>(i)) != s.omega_A.end();
        CHECK(in_omega == (x.h[i] / x.g[i] > s.mu));
      }
      if (s.omega_A.empty()) CHECK(s.payoff_A == doctest::Approx(x.R_A / (2 * x.R_D)).epsilon(1e-12));
      const auto roots = consistent_mu_roots(x.g, x.h, x.R_D, x.R_A);
      REQUIRE_FALSE(roots.empty());
      if (roots.size() > 1) ++multiple;
      for (const auto& r : roots) CHECK(r.mu >= s.mu);
    }
    CHECK(with_attacker_set > 0);
    CHECK(multiple < 10);
  }

  TEST_CASE("several consistent roots") {
    // general-sum instance with three consistent partitions
    std::vector<double> g{0.5510, 0.8726, 0.0792, 0.4265, 0.6050, 0.3727};
    std::vector<double> h{0.6369, 0.1365, 0.9835, 0.1185, 0.8712, 0.3013};
    g = normalize_weights(g);
    h = normalize_weights(h);
    const auto roots = consistent_mu_roots(g, h, 2.6258, 1.0);
    CHECK(roots.size() == 3);
    const auto s = solve_equilibrium(g, h, 2.6258, 1.0);
    for (const auto& r : roots) {
      CHECK(r.mu >= s.mu);
      EquilibriumSolution alt;
      alt.mu = r.mu;
      alt.omega_A = r.omega_A;
      const auto l = solve_lambdas(r.mu, g, h, 2.6258, 1.0, r.omega_A);
      alt.lambda_A = l.lambda_A;
      alt.lambda_D = l.lambda_D;
      std::tie(alt.marginals_A, alt.marginals_D) = equilibrium_marginals(alt.mu, alt.lambda_A, alt.lambda_D, g, h, alt.omega_A);
      const auto spent = expected_expenditure(alt, g, h);
      CHECK(spent.attacker == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(spent.defender == doctest::Approx(2.6258).epsilon(1e-9));
    }
  }

  TEST_CASE("payoffs agree with quadrature") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_instance(rng, 3 + trial % 4);
      const auto s = solve_equilibrium(x.g, x.h, x.R_D, x.R_A);
      double defender = 0.0, attacker = 0.0;
      for (std::size_t i = 0; i < x.g.size(); ++i) {
        defender += x.g[i] * beats_by_quadrature(s.marginals_D[i], s.marginals_A[i]);
        attacker += x.h[i] * beats_by_quadrature(s.marginals_A[i], s.marginals_D[i]);
      }
      CHECK(s.payoff_D == doctest::Approx(defender).epsilon(1e-6));
      CHECK(s.payoff_A == doctest::Approx(attacker).epsilon(1e-6));
      for (std::size_t i = 0; i < x.g.size(); ++i) {
        const auto p = win_probabilities(s, static_cast<int>(i));
        CHECK(p.defender + p.attacker == doctest::Approx(1.0));
      }
    }
  }

  TEST_CASE("complete information") {
    const auto p = complete_info_payoffs(2.5, 1.0);
    CHECK(p.defender == doctest::Approx(0.8));
    CHECK(p.attacker == doctest::Approx(0.2));
    CHECK_THROWS_AS(complete_info_payoffs(1.0, 2.0), ValidationError);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_instance(rng, 2 + trial % 6);
      const auto s = solve_equilibrium(x.g, x.g, x.R_D, x.R_A);
      const auto closed = complete_info_payoffs(x.R_D, x.R_A);
      CHECK(std::abs(s.payoff_D - closed.defender) <= 1e-12);
      CHECK(std::abs(s.payoff_A - closed.attacker) <= 1e-12);
    }
  }

  TEST_CASE("invalid games") {
    const std::vector<double> h{0.5, 0.5};
    CHECK_THROWS_AS(solve_equilibrium(h, h, 0.5, 1.0), ValidationError);
    CHECK_THROWS_AS(solve_equilibrium(std::vector<double>{1.0}, h, 2, 1), ValidationError);
    CHECK_THROWS_AS(solve_equilibrium(std::vector<double>{1.2, -0.2}, h, 2, 1), ValidationError);
  }

  TEST_CASE("special case closed forms") {
    const std::vector<double> h{0.5, 0.3, 0.2};
    const auto r = theorem1_case(0.5, 0.2, h, 2.5, 1.0);
    CHECK(r.node_max == 0);
    CHECK(r.node_min == 2);
    CHECK(r.g[0] == doctest::Approx(0.7 / 1.2));
    CHECK(r.g[1] == doctest::Approx(0.3 / 1.2));
    CHECK(r.g[2] == doctest::Approx(0.2 / 1.2));
    CHECK(r.regime_bound == doctest::Approx(0.7 / 0.6));
    CHECK(std::abs(r.solution.mu - r.mu_closed_form) <= 1e-10);
    CHECK(std::abs(r.solution.lambda_A - r.lambda_A_closed_form) <= 1e-10);
    CHECK(std::abs(r.solution.payoff_A - 0.2) <= 1e-12);
    CHECK(r.solution.payoff_D > 0.8);
    // the multiplier ratio fixes lambda_D at R_A K / (2 R_D^2)
    const double K = (0.7) / (1.2 * 0.6);
    CHECK(r.solution.lambda_D == doctest::Approx(K / (2 * 2.5 * 2.5)).epsilon(1e-10));
  }

  TEST_CASE("special case regime and inputs") {
    const std::vector<double> h{0.4, 0.3, 0.3};
    CHECK_THROWS_AS(theorem1_case(0.4, 0.3, h, 1.0, 1.0), RegimeError);
    CHECK_NOTHROW(theorem1_case(0.4, 0.3, h, 1.3, 1.0));
    CHECK_THROWS_AS(theorem1_case(0.3, 0.3, h, 2.5, 1.0), ValidationError);
    const auto nine = normalize_weights(
        std::vector<double>{0.2667, 0.1333, 0.1333, 0.1333, 0.0667, 0.0667, 0.0667, 0.0667, 0.0667});
    const auto r = theorem1_case(nine[0], nine[8], nine, 2.5, 1.0);
    CHECK(r.regime_bound == doctest::Approx(1.056).epsilon(1e-3));
  }
}
