#pragma once

#include <span>
#include <vector>

#include "cpsblotto/scenario.hpp"
#include "cpsblotto/topology.hpp"

namespace cpsblotto {

struct LevelSpec {
  int count = 1;
  double weight = 1.0;  // relative human interaction of each node on the level
};

/// Layered city layout: one reference node feeding the first ring, each ring
/// feeding the next. A node on ring L+1 is supplied by two adjacent nodes of
/// ring L (one when ring L has a single node), so a single upstream failure
/// can be partly covered by the neighbour. Every node without children
/// consumes one unit of load; capacities equal the flows needed to serve that
/// demand and the actual flows are `flow_fill` times the capacities. The cyber
/// graph is the unit-weight skeleton of the flow graph.
///
/// Throws ValidationError for an empty level list, a first level with more
/// than one node, non-positive counts or weights, or flow_fill outside (0, 1].
CpsTopology generate_concentric(std::span<const LevelSpec> levels, double flow_fill);

/// The 9-node, three-level layout with weights 4:2:1 (reference, main,
/// ordinary), which reproduces the h column of the reference case study.
std::vector<LevelSpec> nine_node_levels();

Scenario concentric_scenario(std::span<const LevelSpec> levels, double flow_fill, const GameParams& params);

}  // namespace cpsblotto
