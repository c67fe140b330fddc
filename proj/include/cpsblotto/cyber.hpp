#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cpsblotto/topology.hpp"

namespace cpsblotto {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct ShortestPathTable {
  Matrix length;       // exact shortest-path lengths; +inf where unreachable
  BoolMatrix reachable;
};

/// Floyd-Warshall over a symmetric non-negative weight matrix (0 = no link).
/// With `removed` set, that node is deleted first: its row and column come
/// back unreachable, including the diagonal entry.
ShortestPathTable all_pairs_shortest_paths(const Matrix& adjacency, std::optional<int> removed = std::nullopt);

struct CyberEffectOptions {
  /// Path length used for pairs a removal disconnects. Unset means n times
  /// the longest finite shortest path of the intact graph.
  std::optional<double> disconnection_penalty;
};

/// t(j, i) = sum_{k != i} p^i(j,k) / sum_{k != i} p(j,k) - 1 + t0 for j != i,
/// where p^i are path lengths with cyber node i removed. Zero diagonal.
/// Throws ValidationError when the intact cyber graph is disconnected.
Matrix cyber_effect_matrix(const CpsTopology& topology, double t0, const CyberEffectOptions& options = {});

/// v = alpha * E / max(E) + beta * T / max(T), zero diagonal. An all-zero
/// matrix normalizes to zero.
Matrix interdependency_matrix(const Matrix& physical, const Matrix& cyber, double alpha, double beta);

/// g_i = (h_i + sum_{j != i} v(j,i) h_j) / sum over all i of the same.
std::vector<double> effective_values(std::span<const double> h, const Matrix& interdependency);

struct EffectMatrices {
  Matrix physical;
  Matrix cyber;
  Matrix interdependency;
};

struct BattlefieldValues {
  std::vector<double> h;  // attacker values
  std::vector<double> g;  // defender effective values
};

EffectMatrices effect_matrices(const CpsTopology& topology, const GameParams& params,
                               const CyberEffectOptions& options = {});

/// Full pipeline: cascade effects, cyber effects, interdependency, values.
BattlefieldValues battlefield_values(const CpsTopology& topology, const GameParams& params,
                                     const CyberEffectOptions& options = {});

}  // namespace cpsblotto
