#include <doctest.h>

#include "cpsblotto/errors.hpp"
#include "cpsblotto/oracle.hpp"

using namespace cpsblotto;

TEST_SUITE("oracle") {
  TEST_CASE("strategy enumeration") {
    CHECK(composition_count(3, 3) == 10);
    CHECK(composition_count(0, 4) == 1);
    CHECK(composition_count(5, 1) == 1);
    const auto s = enumerate_strategies(2, 3);
    const std::vector<std::vector<int>> expected{{0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
    CHECK(s == expected);
    CHECK(enumerate_strategies(3, 3).size() == 10);
    for (const auto& v : enumerate_strategies(7, 4)) {
      int sum = 0;
      for (int x : v) sum += x;
      CHECK(sum == 7);
    }
    CHECK(composition_count(200, 8) == kMaxStrategies + 1);
    CHECK_THROWS_AS(enumerate_strategies(200, 8), ValidationError);
  }

  TEST_CASE("single battlefield goes to the richer player") {
    DiscreteGame game{1, 2, 3, {1.0}, {1.0}};
    const auto r = fictitious_play(game, 10000);
    CHECK(r.payoffs.defender == 1.0);
    CHECK(r.payoffs.attacker == 0.0);
    CHECK(r.converged);
    DiscreteGame tie{1, 3, 3, {1.0}, {1.0}};
    const auto t = fictitious_play(tie, 10000);
    CHECK(t.payoffs.defender == 0.0);
    CHECK(t.payoffs.attacker == 0.0);
  }

  TEST_CASE("too few iterations") {
    DiscreteGame game{2, 2, 3, {0.5, 0.5}, {0.5, 0.5}};
    CHECK_THROWS_AS(fictitious_play(game, 9999), ValidationError);
  }

  TEST_CASE("fictitious play is deterministic and bounded") {
    DiscreteGame game{3, 6, 9, {0.5, 0.3, 0.2}, {0.4, 0.4, 0.2}};
    const auto a = fictitious_play(game, 20000);
    const auto b = fictitious_play(game, 20000);
    CHECK(a.payoffs.defender == b.payoffs.defender);
    CHECK(a.mixed_D == b.mixed_D);
    CHECK(a.mixed_A == b.mixed_A);
    CHECK(a.iterations == 20000);
    for (double p : {a.payoffs.defender, a.payoffs.attacker, a.min_payoff_seen, a.max_payoff_seen}) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
    double total = 0.0;
    for (double p : a.mixed_D) total += p;
    CHECK(total == doctest::Approx(1.0));
    CHECK(a.mixed_D.size() == enumerate_strategies(9, 3).size());
  }

  TEST_CASE("uniform values agree with the analytic payoffs") {
    const std::vector<double> h{1.0 / 3, 1.0 / 3, 1.0 / 3};
    // R_A/R_D >= 1/(n-1): the marginals fit together on the budget simplex
    const auto r = cross_validate(h, h, 1.5, 1.0, 20);
    CHECK(r.analytic_ok);
    CHECK(r.units_A == 20);
    CHECK(r.units_D == 30);
    CHECK(r.analytic.attacker == doctest::Approx(1.0 / 3));
    CHECK(r.pass);
  }

  TEST_CASE("cross validation input errors") {
    const std::vector<double> h{0.5, 0.5};
    CHECK_THROWS_AS(cross_validate(h, h, 2.5, 1.0, 0), ValidationError);
    CHECK_THROWS_AS(cross_validate(h, std::vector<double>{0.7, 0.7}, 2.5, 1.0, 10), ValidationError);
  }
}
