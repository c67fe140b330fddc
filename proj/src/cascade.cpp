#include "cpsblotto/cascade.hpp"

#include <algorithm>
#include <functional>

#include "cpsblotto/errors.hpp"

namespace cpsblotto {

namespace {

// Shortfalls below this (relative) are rounding residue, not lost flow.
constexpr double kLossTolerance = 1e-12;

}  // namespace

double served_flow(const Matrix& flow, const Matrix& original, int node) {
  const bool had_out = original.row(node).sum() > 0.0;
  const bool had_in = original.col(node).sum() > 0.0;
  const double in = flow.col(node).sum();
  const double out = flow.row(node).sum();
  if (!had_out) return in;
  if (!had_in) return out;
  return std::min(in, out);
}

double node_deficit(const Matrix& flow, const Matrix& original_flow, int node) {
  if (!(original_flow.col(node).sum() > 0.0)) return 0.0;  // sources generate their own flow
  const double required = original_flow.row(node).sum() > 0.0 ? flow.row(node).sum()
                                                               : original_flow.col(node).sum();
  return required - flow.col(node).sum();
}

RebalanceRecord rebalance_node(Matrix& flow, const Matrix& original_flow, const Matrix& capacity,
                               int failed, int node, std::span<const char> blocked, Matrix* increments) {
  const int n = static_cast<int>(flow.rows());
  RebalanceRecord record;
  record.node = node;
  const double deficit = node_deficit(flow, original_flow, node);
  if (!(deficit > 0.0)) return record;
  record.deficit = deficit;

  auto eligible = [&](int k) {
    return k != failed && k != node && capacity(k, node) > 0.0 &&
           (blocked.empty() || !blocked[static_cast<std::size_t>(k)]);
  };

  const double before = flow.col(node).sum();
  double headroom = 0.0;
  for (int k = 0; k < n; ++k)
    if (eligible(k)) headroom += std::max(0.0, capacity(k, node) - flow(k, node));

  for (int k = 0; k < n; ++k) {
    if (!eligible(k)) continue;
    const double d = std::max(0.0, capacity(k, node) - flow(k, node));
    if (d == 0.0) continue;
    const double raised = headroom < deficit ? capacity(k, node)
                                             : std::min(capacity(k, node), flow(k, node) + d / headroom * deficit);
    if (increments) (*increments)(k, node) += raised - flow(k, node);
    flow(k, node) = raised;
  }
  record.absorbed = flow.col(node).sum() - before;
  record.lost = deficit - record.absorbed;
  if (record.lost <= kLossTolerance * std::max(1.0, deficit)) record.lost = 0.0;
  return record;
}

namespace {

// Cuts `amount` from a node's outgoing flow: extra flow granted during this
// cascade goes first, then the remaining edges shrink proportionally.
void shed_outflow(Matrix& flow, Matrix& increments, int node, double amount) {
  const double granted = increments.row(node).sum();
  if (granted > 0.0) {
    const double take = std::min(amount, granted);
    const double keep = 1.0 - take / granted;
    for (Eigen::Index j = 0; j < flow.cols(); ++j) {
      const double cut = increments(node, j) * (take / granted);
      flow(node, j) = std::max(0.0, flow(node, j) - cut);
      increments(node, j) *= keep;
    }
    amount -= take;
  }
  const double out = flow.row(node).sum();
  if (amount > 0.0 && out > 0.0) flow.row(node) *= std::max(0.0, 1.0 - amount / out);
}

template <typename Pick>
void drain(std::vector<int>& remaining, Pick pick, const std::function<void(int)>& process,
           std::vector<std::vector<int>>& order) {
  while (true) {
    std::vector<int> selected;
    for (int j : remaining)
      if (pick(j, remaining)) selected.push_back(j);
    if (selected.empty()) return;
    for (int j : selected) process(j);
    std::erase_if(remaining, [&](int j) { return std::find(selected.begin(), selected.end(), j) != selected.end(); });
    order.push_back(std::move(selected));
  }
}

}  // namespace

CascadeResult cascade_failure(const CpsTopology& topology, int failed) {
  const int n = topology.size();
  if (failed < 0 || failed >= n) throw ValidationError("failed node id " + std::to_string(failed) + " out of range");
  const Matrix& original = topology.flow;
  const Matrix& capacity = topology.capacity;

  CascadeResult result;
  result.failed_node = failed;
  Matrix flow = original;
  flow.row(failed).setZero();
  flow.col(failed).setZero();
  Matrix increments = Matrix::Zero(n, n);

  auto linked = [&](int a, int b) { return original(a, b) > 0.0 || original(b, a) > 0.0; };

  std::vector<char> first_order(n, 0), second_order(n, 0);
  std::vector<int> customers;
  for (int j = 0; j < n; ++j) {
    if (j == failed) continue;
    if (linked(failed, j)) first_order[j] = 1;
    if (original(failed, j) > 0.0) customers.push_back(j);
  }
  std::vector<int> outer;
  for (int k = 0; k < n; ++k) {
    if (k == failed || first_order[k]) continue;
    for (int j = 0; j < n; ++j) {
      if (first_order[j] && linked(j, k)) {
        second_order[k] = 1;
        outer.push_back(k);
        break;
      }
    }
  }

  std::vector<char> blocked(n, 0);
  blocked[failed] = 1;

  auto process_customer = [&](int j) {
    const RebalanceRecord record = rebalance_node(flow, original, capacity, failed, j, blocked, &increments);
    if (record.lost > 0.0) {
      shed_outflow(flow, increments, j, record.lost);
      blocked[j] = 1;
    }
    result.rebalances.push_back(record);
  };
  auto process_outer = [&](int j) {
    const RebalanceRecord record = rebalance_node(flow, original, capacity, failed, j, blocked, &increments);
    if (record.lost > 0.0) blocked[j] = 1;
    result.rebalances.push_back(record);
  };

  auto no_edge_out = [&](int j, const std::vector<int>& set) {
    return std::none_of(set.begin(), set.end(), [&](int k) { return original(j, k) > 0.0; });
  };
  auto no_edge_in = [&](int j, const std::vector<int>& set) {
    return std::none_of(set.begin(), set.end(), [&](int k) { return original(k, j) > 0.0; });
  };

  drain(customers, no_edge_out, process_customer, result.processing_order);
  drain(customers, no_edge_in, process_customer, result.processing_order);
  drain(outer, no_edge_in, process_outer, result.processing_order);

  result.per_node_loss.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double before = served_flow(original, original, j);
    result.per_node_loss[j] = j == failed ? before : std::max(0.0, before - served_flow(flow, original, j));
  }
  result.affected.assign(n, 0);
  for (int j = 0; j < n; ++j) result.affected[j] = first_order[j] || second_order[j];
  result.flow_after = std::move(flow);
  return result;
}

std::vector<double> effect_column(const CpsTopology& topology, const CascadeResult& result) {
  const int n = topology.size();
  std::vector<double> e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (j == result.failed_node || !result.affected[j]) continue;
    const double before = served_flow(topology.flow, topology.flow, j);
    if (!(before > 0.0)) continue;
    e[j] = std::clamp(result.per_node_loss[j] / before, 0.0, 1.0);
  }
  return e;
}

Matrix physical_effect_matrix(const CpsTopology& topology) {
  const int n = topology.size();
  Matrix effects = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto column = effect_column(topology, cascade_failure(topology, i));
    for (int j = 0; j < n; ++j) effects(j, i) = column[j];
  }
  return effects;
}

}  // namespace cpsblotto
