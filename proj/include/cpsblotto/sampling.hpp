#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cpsblotto/blotto.hpp"

namespace cpsblotto {

struct AllocationSample {
  std::vector<double> r;
  Player owner = Player::defender;
};

/// One independent draw per battlefield, by inverse CDF.
std::vector<double> draw_independent(std::span<const MarginalDistribution> marginals, std::mt19937_64& rng);

/// Draws every battlefield independently from its marginal and rescales the
/// vector onto the budget simplex sum r_i = budget. All-zero draws are
/// redrawn. The joint law is an approximation: only the marginals are known.
AllocationSample sample_allocation(std::span<const MarginalDistribution> marginals, double budget,
                                   std::mt19937_64& rng);
AllocationSample sample_allocation(std::span<const MarginalDistribution> marginals, double budget,
                                   std::uint64_t seed);

struct BandEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of P(|r_i / budget - share| <= epsilon). With
/// `project` false the raw independent draw is used instead of the
/// simplex-projected allocation. Throws ValidationError for fewer than 1000
/// samples or share/epsilon outside (0, 1).
BandEstimate allocation_band_probability(std::span<const MarginalDistribution> marginals, double budget,
                                         int battlefield, double share, double epsilon, std::size_t samples,
                                         std::uint64_t seed, bool project = true);

}  // namespace cpsblotto
