#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cpsblotto {

using Matrix = Eigen::MatrixXd;

enum class NodeLevel { reference, main, ordinary };

std::string_view to_string(NodeLevel level);
std::optional<NodeLevel> parse_level(std::string_view text);

struct NodeSpec {
  int id = 0;
  NodeLevel level = NodeLevel::ordinary;
  double h = 0.0;  // fraction of human interaction at the node
};

/// Physical flow network plus its cyber control graph.
///
/// flow(i, j) is the flow carried from node i to node j and capacity(i, j)
/// the limit of that directed edge. A positive capacity with zero flow is a
/// standby edge that can absorb redistributed flow after a failure. The cyber
/// graph is undirected: cyber(a, b) == cyber(b, a) is the link weight, zero
/// meaning no link.
struct CpsTopology {
  std::vector<NodeSpec> nodes;
  Matrix flow;
  Matrix capacity;
  Matrix cyber;

  int size() const { return static_cast<int>(nodes.size()); }
  std::vector<double> human_weights() const;
  /// Index of the reference node, or -1 when there is none.
  int reference() const;
  double inflow(int node) const { return flow.col(node).sum(); }
  double outflow(int node) const { return flow.row(node).sum(); }
};

struct GameParams {
  double alpha = 0.5;
  double beta = 0.5;
  /// Baseline cyber effect; unset means default_t0(n).
  std::optional<double> t0;
  double R_D = 2.5;
  double R_A = 1.0;

  double t0_or_default(int n) const;
};

/// 1/(n-1): relative growth of per-node computational load when one of n
/// cyber nodes is removed. Zero for n < 3, where that ratio is not below 1.
double default_t0(int n);

/// One finding from validate(); `invariant` is a stable short phrase that
/// tests and callers can match on, `detail` names the node or edge.
struct Violation {
  std::string invariant;
  std::string detail;

  std::string message() const;
};

std::vector<Violation> validate(const CpsTopology& topology);
std::vector<Violation> validate(const GameParams& params);

/// Throws ValidationError listing every violation, if any.
void require_valid(const CpsTopology& topology);
void require_valid(const GameParams& params);

/// Scales a positive vector to sum to one. Idempotent: a vector whose sum is
/// already within rounding of one is returned unchanged, bit for bit.
std::vector<double> normalize_weights(std::span<const double> weights);

/// Undirected unit-weight skeleton of the flow graph.
Matrix flow_skeleton(const Matrix& flow);

}  // namespace cpsblotto
