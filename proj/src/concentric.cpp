#include "cpsblotto/concentric.hpp"

#include <cmath>

#include "cpsblotto/errors.hpp"

namespace cpsblotto {

CpsTopology generate_concentric(std::span<const LevelSpec> levels, double flow_fill) {
  if (levels.empty()) throw ValidationError("concentric layout needs at least one level");
  if (levels.front().count != 1) throw ValidationError("first level must hold exactly the reference node");
  if (!(flow_fill > 0.0 && flow_fill <= 1.0)) throw ValidationError("flow_fill must lie in (0, 1]");

  std::vector<int> first;  // index of the first node on each level
  int n = 0;
  for (const auto& level : levels) {
    if (level.count <= 0) throw ValidationError("level node count must be positive");
    if (!(level.weight > 0.0) || !std::isfinite(level.weight))
      throw ValidationError("level weight must be positive");
    first.push_back(n);
    n += level.count;
  }

  CpsTopology topo;
  topo.nodes.resize(n);
  std::vector<double> h(n);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const NodeLevel kind = l == 0 ? NodeLevel::reference : (l == 1 ? NodeLevel::main : NodeLevel::ordinary);
    for (int k = 0; k < levels[l].count; ++k) {
      const int id = first[l] + k;
      topo.nodes[id] = NodeSpec{id, kind, 0.0};
      h[id] = levels[l].weight;
    }
  }
  h = normalize_weights(h);
  for (int i = 0; i < n; ++i) topo.nodes[i].h = h[i];

  // Demands are settled from the outermost ring inwards so that every
  // transit node forwards exactly what it receives.
  Matrix base = Matrix::Zero(n, n);
  std::vector<double> demand(n, 0.0);
  for (std::size_t l = levels.size(); l-- > 0;) {
    const bool has_next = l + 1 < levels.size();
    for (int k = 0; k < levels[l].count; ++k) {
      const int id = first[l] + k;
      demand[id] = has_next ? base.row(id).sum() : 0.0;
      if (demand[id] == 0.0) demand[id] = 1.0;
    }
    if (l == 0) break;
    const int parents = levels[l - 1].count;
    for (int k = 0; k < levels[l].count; ++k) {
      const int id = first[l] + k;
      if (parents == 1) {
        base(first[l - 1], id) = demand[id];
      } else {
        base(first[l - 1] + k % parents, id) = demand[id] / 2.0;
        base(first[l - 1] + (k + 1) % parents, id) = demand[id] / 2.0;
      }
    }
  }
  topo.capacity = base;
  topo.flow = flow_fill == 1.0 ? base : Matrix(base * flow_fill);
  topo.cyber = flow_skeleton(topo.flow);
  return topo;
}

std::vector<LevelSpec> nine_node_levels() { return {{1, 4.0}, {3, 2.0}, {5, 1.0}}; }

Scenario concentric_scenario(std::span<const LevelSpec> levels, double flow_fill, const GameParams& params) {
  Scenario s{generate_concentric(levels, flow_fill), params};
  require_valid(s.topology);
  require_valid(s.params);
  return s;
}

}  // namespace cpsblotto
