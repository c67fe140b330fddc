#include <doctest.h>

#include <cmath>

#include "cpsblotto/blotto.hpp"
#include "cpsblotto/errors.hpp"
#include "cpsblotto/sampling.hpp"

using namespace cpsblotto;

namespace {

EquilibriumSolution symmetric_solution() {
  const std::vector<double> h{0.4, 0.35, 0.25};
  return solve_equilibrium(h, h, 2.5, 1.0);
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("allocations land on the budget") {
    const auto s = symmetric_solution();
    std::mt19937_64 rng(1);
    for (int k = 0; k < 1000; ++k) {
      const auto a = sample_allocation(s.marginals_A, 1.0, rng);
      const auto d = sample_allocation(s.marginals_D, 2.5, rng);
      double sa = 0, sd = 0;
      for (double x : a.r) sa += x;
      for (double x : d.r) sd += x;
      CHECK(sa == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sd == doctest::Approx(2.5).epsilon(1e-12));
      CHECK(a.owner == Player::attacker);
      CHECK(d.owner == Player::defender);
    }
  }

  TEST_CASE("same seed, same sample") {
    const auto s = symmetric_solution();
    CHECK(sample_allocation(s.marginals_D, 2.5, 42).r == sample_allocation(s.marginals_D, 2.5, 42).r);
    CHECK(sample_allocation(s.marginals_D, 2.5, 42).r != sample_allocation(s.marginals_D, 2.5, 43).r);
    const auto a = allocation_band_probability(s.marginals_D, 2.5, 0, 0.4, 0.05, 5000, 9);
    const auto b = allocation_band_probability(s.marginals_D, 2.5, 0, 0.4, 0.05, 5000, 9);
    CHECK(a.probability == b.probability);
  }

  TEST_CASE("independent draws match the marginal means") {
    const auto s = symmetric_solution();
    std::mt19937_64 rng(3);
    const int samples = 100000;
    for (const auto* side : {&s.marginals_A, &s.marginals_D}) {
      std::vector<double> sum(3, 0.0), sq(3, 0.0);
      for (int k = 0; k < samples; ++k) {
        const auto r = draw_independent(*side, rng);
        for (int i = 0; i < 3; ++i) {
          sum[i] += r[i];
          sq[i] += r[i] * r[i];
        }
      }
      for (int i = 0; i < 3; ++i) {
        const double mean = sum[i] / samples;
        const double se = std::sqrt((sq[i] / samples - mean * mean) / samples);
        CHECK(std::abs(mean - (*side)[i].mean()) <= 3 * se);
      }
    }
  }

  TEST_CASE("band probabilities") {
    const std::vector<MarginalDistribution> uniform{{0, Player::defender, 0.0, 2.0}, {1, Player::defender, 0.0, 2.0}};
    const auto band = allocation_band_probability(uniform, 2.0, 0, 0.5, 0.05, 100000, 5, false);
    CHECK(std::abs(band.probability - 0.10) <= 3 * band.standard_error);
    CHECK(band.samples == 100000);

    const auto s = symmetric_solution();
    CHECK(allocation_band_probability(s.marginals_D, 2.5, 1, 0.5, 0.5, 2000, 1).probability == 1.0);
  }

  TEST_CASE("band argument errors") {
    const auto s = symmetric_solution();
    CHECK_THROWS_AS(allocation_band_probability(s.marginals_D, 2.5, 0, 0.5, 0.05, 999, 1), ValidationError);
    CHECK_THROWS_AS(allocation_band_probability(s.marginals_D, 2.5, 0, 0.0, 0.05, 1000, 1), ValidationError);
    CHECK_THROWS_AS(allocation_band_probability(s.marginals_D, 2.5, 0, 0.5, 1.0, 1000, 1), ValidationError);
    CHECK_THROWS(allocation_band_probability(s.marginals_D, 2.5, 7, 0.5, 0.1, 1000, 1));
  }

  TEST_CASE("all mass at zero cannot be projected") {
    const std::vector<MarginalDistribution> zero{{0, Player::attacker, 1.0, 1.0}};
    CHECK_THROWS_AS(sample_allocation(zero, 1.0, 1), Error);
  }
}
