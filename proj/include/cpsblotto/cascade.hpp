#pragma once

#include <span>
#include <vector>

#include "cpsblotto/topology.hpp"

namespace cpsblotto {

/// Bookkeeping for one rebalanced node. `absorbed` is the rise in the node's
/// inflow and `lost` the part of the deficit no supplier could cover, so
/// absorbed + lost == deficit.
struct RebalanceRecord {
  int node = -1;
  double deficit = 0.0;
  double absorbed = 0.0;
  double lost = 0.0;
};

struct CascadeResult {
  int failed_node = -1;
  Matrix flow_after;                             // row and column of the failed node are zero
  std::vector<double> per_node_loss;             // drop in flow served by each node
  std::vector<std::vector<int>> processing_order;  // node sets in the order they were rebalanced
  std::vector<RebalanceRecord> rebalances;
  std::vector<char> affected;                    // within two hops of the failed node
};

/// Inflow the node still has to find after a failure: its current outflow
/// (which already includes extra flow requested by rebalanced children) for
/// transit nodes, its original inflow for sinks, minus what still reaches it.
/// Zero for sources (no original inflow).
double node_deficit(const Matrix& flow, const Matrix& original_flow, int node);

/// Covers the deficit of `node` from its surviving suppliers, proportionally
/// to their headroom c_kj - f_kj. If the total headroom is smaller than the
/// deficit every supplier edge is driven to capacity and the remainder is
/// recorded as lost. Suppliers flagged in `blocked` (and `failed`) are
/// skipped. `increments`, when non-empty, accumulates the raise applied to
/// each edge.
RebalanceRecord rebalance_node(Matrix& flow, const Matrix& original_flow, const Matrix& capacity,
                               int failed, int node, std::span<const char> blocked = {},
                               Matrix* increments = nullptr);

/// Redistributes flow after node `failed` goes down. Direct customers of the
/// failed node are handled first, innermost (no edge to another customer)
/// before outermost, then any left with no incoming edge from the rest; a
/// customer that cannot be fully resupplied cuts its own outflow, first the
/// extra it granted to other customers, then its base flows. Finally the
/// second-order neighbours are rebalanced upstream-first; the cascade stops
/// there. Ties are processed in ascending id. Throws ValidationError for an
/// out-of-range id.
CascadeResult cascade_failure(const CpsTopology& topology, int failed);

/// e(j, i) = fraction of node j's served flow lost when node i fails, with
/// a zero diagonal and zero for nodes that carried no flow.
Matrix physical_effect_matrix(const CpsTopology& topology);

/// Column of the effect matrix for one cascade.
std::vector<double> effect_column(const CpsTopology& topology, const CascadeResult& result);

/// Flow a node serves: inflow for sinks, outflow for sources, the smaller of
/// the two for transit nodes. Which case applies is decided on `original`.
double served_flow(const Matrix& flow, const Matrix& original, int node);

}  // namespace cpsblotto
