#include "cpsblotto/sampling.hpp"

#include <cmath>

#include "cpsblotto/errors.hpp"

namespace cpsblotto {

std::vector<double> draw_independent(std::span<const MarginalDistribution> marginals, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> r;
  r.reserve(marginals.size());
  for (const auto& m : marginals) r.push_back(m.quantile(unit(rng)));
  return r;
}

AllocationSample sample_allocation(std::span<const MarginalDistribution> marginals, double budget,
                                   std::mt19937_64& rng) {
  if (marginals.empty()) throw ValidationError("no marginals to sample");
  AllocationSample sample;
  sample.owner = marginals.front().owner;
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    sample.r = draw_independent(marginals, rng);
    double total = 0.0;
    for (double x : sample.r) total += x;
    if (!(total > 0.0)) continue;
    for (double& x : sample.r) x *= budget / total;
    return sample;
  }
  throw Error("marginals put all mass at zero; cannot reach the budget");
}

AllocationSample sample_allocation(std::span<const MarginalDistribution> marginals, double budget,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_allocation(marginals, budget, rng);
}

BandEstimate allocation_band_probability(std::span<const MarginalDistribution> marginals, double budget,
                                         int battlefield, double share, double epsilon, std::size_t samples,
                                         std::uint64_t seed, bool project) {
  if (samples < 1000) throw ValidationError("band probability needs at least 1000 samples");
  if (!(share > 0.0 && share < 1.0) || !(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("share and epsilon must lie in (0, 1)");
  if (battlefield < 0 || static_cast<std::size_t>(battlefield) >= marginals.size())
    throw ValidationError("battlefield id out of range");

  std::mt19937_64 rng(seed);
  const auto index = static_cast<std::size_t>(battlefield);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double r = project ? sample_allocation(marginals, budget, rng).r[index]
                             : draw_independent(marginals, rng)[index];
    if (std::abs(r / budget - share) <= epsilon) ++hits;
  }
  BandEstimate out;
  out.samples = samples;
  out.probability = static_cast<double>(hits) / static_cast<double>(samples);
  out.standard_error = std::sqrt(out.probability * (1.0 - out.probability) / static_cast<double>(samples));
  return out;
}

}  // namespace cpsblotto
