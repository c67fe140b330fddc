#include "cpsblotto/cyber.hpp"

#include <cmath>
#include <limits>

#include "cpsblotto/cascade.hpp"
#include "cpsblotto/errors.hpp"

namespace cpsblotto {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ShortestPathTable all_pairs_shortest_paths(const Matrix& adjacency, std::optional<int> removed) {
  const Eigen::Index n = adjacency.rows();
  Matrix dist = Matrix::Constant(n, n, kInf);
  for (Eigen::Index a = 0; a < n; ++a) {
    dist(a, a) = 0.0;
    for (Eigen::Index b = 0; b < n; ++b)
      if (a != b && adjacency(a, b) > 0.0) dist(a, b) = adjacency(a, b);
  }
  if (removed) {
    dist.row(*removed).setConstant(kInf);
    dist.col(*removed).setConstant(kInf);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (removed && k == *removed) continue;
    for (Eigen::Index a = 0; a < n; ++a) {
      const double via = dist(a, k);
      if (via == kInf) continue;
      for (Eigen::Index b = 0; b < n; ++b) {
        const double candidate = via + dist(k, b);
        if (candidate < dist(a, b)) dist(a, b) = candidate;
      }
    }
  }
  ShortestPathTable table{dist, BoolMatrix(n, n)};
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) table.reachable(a, b) = dist(a, b) < kInf;
  return table;
}

Matrix cyber_effect_matrix(const CpsTopology& topology, double t0, const CyberEffectOptions& options) {
  const int n = topology.size();
  const ShortestPathTable base = all_pairs_shortest_paths(topology.cyber);
  if (!base.reachable.all()) throw ValidationError("cyber graph is disconnected; cyber effects are undefined");

  const double penalty = options.disconnection_penalty ? *options.disconnection_penalty
                                                       : static_cast<double>(n) * base.length.maxCoeff();
  Matrix effects = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const ShortestPathTable without = all_pairs_shortest_paths(topology.cyber, i);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double after = 0.0;
      double before = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        after += without.reachable(j, k) ? without.length(j, k) : penalty;
        before += base.length(j, k);
      }
      effects(j, i) = (before > 0.0 ? after / before : 1.0) - 1.0 + t0;
    }
  }
  return effects;
}

Matrix interdependency_matrix(const Matrix& physical, const Matrix& cyber, double alpha, double beta) {
  const Eigen::Index n = physical.rows();
  auto normalized = [](const Matrix& m) -> Matrix {
    const double top = m.size() ? m.maxCoeff() : 0.0;
    return top > 0.0 ? Matrix(m / top) : Matrix(Matrix::Zero(m.rows(), m.cols()));
  };
  Matrix v = alpha * normalized(physical) + beta * normalized(cyber);
  for (Eigen::Index i = 0; i < n; ++i) v(i, i) = 0.0;
  return v;
}

std::vector<double> effective_values(std::span<const double> h, const Matrix& interdependency) {
  const std::size_t n = h.size();
  if (static_cast<std::size_t>(interdependency.rows()) != n || static_cast<std::size_t>(interdependency.cols()) != n)
    throw ValidationError("interdependency matrix does not match the value vector");
  std::vector<double> gains(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double gain = h[i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) gain += interdependency(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * h[j];
    gains[i] = gain;
  }
  return normalize_weights(gains);
}

EffectMatrices effect_matrices(const CpsTopology& topology, const GameParams& params,
                               const CyberEffectOptions& options) {
  require_valid(topology);
  require_valid(params);
  EffectMatrices out;
  out.physical = physical_effect_matrix(topology);
  out.cyber = cyber_effect_matrix(topology, params.t0_or_default(topology.size()), options);
  out.interdependency = interdependency_matrix(out.physical, out.cyber, params.alpha, params.beta);
  return out;
}

BattlefieldValues battlefield_values(const CpsTopology& topology, const GameParams& params,
                                     const CyberEffectOptions& options) {
  const EffectMatrices effects = effect_matrices(topology, params, options);
  BattlefieldValues values;
  values.h = topology.human_weights();
  values.g = effective_values(values.h, effects.interdependency);
  return values;
}

}  // namespace cpsblotto
