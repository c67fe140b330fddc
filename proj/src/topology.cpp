#include "cpsblotto/topology.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "cpsblotto/errors.hpp"

namespace cpsblotto {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kConservationTolerance = 1e-6;

std::string edge_name(int from, int to) {
  return "edge (" + std::to_string(from) + "," + std::to_string(to) + ")";
}

std::string node_name(int node) { return "node " + std::to_string(node); }

bool square_of(const Matrix& m, int n) { return m.rows() == n && m.cols() == n; }

}  // namespace

std::string_view to_string(NodeLevel level) {
  switch (level) {
    case NodeLevel::reference: return "reference";
    case NodeLevel::main: return "main";
    case NodeLevel::ordinary: return "ordinary";
  }
  return "ordinary";
}

std::optional<NodeLevel> parse_level(std::string_view text) {
  if (text == "reference") return NodeLevel::reference;
  if (text == "main") return NodeLevel::main;
  if (text == "ordinary") return NodeLevel::ordinary;
  return std::nullopt;
}

std::vector<double> CpsTopology::human_weights() const {
  std::vector<double> h;
  h.reserve(nodes.size());
  for (const auto& node : nodes) h.push_back(node.h);
  return h;
}

int CpsTopology::reference() const {
  for (const auto& node : nodes)
    if (node.level == NodeLevel::reference) return node.id;
  return -1;
}

double default_t0(int n) { return n >= 3 ? 1.0 / (n - 1) : 0.0; }

double GameParams::t0_or_default(int n) const { return t0 ? *t0 : default_t0(n); }

std::string Violation::message() const {
  return detail.empty() ? invariant : invariant + ": " + detail;
}

std::vector<Violation> validate(const CpsTopology& topology) {
  std::vector<Violation> out;
  const int n = topology.size();
  if (n == 0) {
    out.push_back({"empty topology", ""});
    return out;
  }
  if (!square_of(topology.flow, n) || !square_of(topology.capacity, n) ||
      !square_of(topology.cyber, n)) {
    out.push_back({"matrix shape mismatch", "expected " + std::to_string(n) + "x" + std::to_string(n)});
    return out;
  }

  int references = 0;
  double h_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& node = topology.nodes[i];
    if (node.id != i) out.push_back({"node ids not contiguous", node_name(node.id) + " at position " + std::to_string(i)});
    if (node.level == NodeLevel::reference) ++references;
    if (!(node.h > 0.0) || !std::isfinite(node.h))
      out.push_back({"non-positive human interaction", node_name(i)});
    h_sum += node.h;
  }
  if (references != 1)
    out.push_back({"exactly one reference node required", "found " + std::to_string(references)});
  if (std::abs(h_sum - 1.0) > kSumTolerance)
    out.push_back({"human interaction not normalized", "sum " + std::to_string(h_sum)});

  const Matrix& f = topology.flow;
  const Matrix& c = topology.capacity;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(f(i, j)) || f(i, j) < 0.0)
        out.push_back({"negative flow", edge_name(i, j)});
      if (!std::isfinite(c(i, j)) || c(i, j) < 0.0)
        out.push_back({"negative capacity", edge_name(i, j)});
      if (f(i, j) > 0.0 && c(i, j) < f(i, j))
        out.push_back({"flow exceeds capacity", edge_name(i, j)});
      if (i < j && f(i, j) > 0.0 && f(j, i) > 0.0)
        out.push_back({"flow in both directions", edge_name(i, j)});
    }
  }

  // Kahn's algorithm over positive-flow edges.
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f(i, j) > 0.0) ++indegree[j];
  std::queue<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  int visited = 0;
  while (!ready.empty()) {
    const int u = ready.front();
    ready.pop();
    ++visited;
    for (int v = 0; v < n; ++v)
      if (f(u, v) > 0.0 && --indegree[v] == 0) ready.push(v);
  }
  if (visited != n) {
    std::ostringstream nodes;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if (indegree[i] > 0) {
        nodes << (first ? "" : ",") << i;
        first = false;
      }
    }
    out.push_back({"cycle in flow graph", "nodes {" + nodes.str() + "}"});
  }

  const int ref = topology.reference();
  if (references == 1) {
    std::vector<char> reached(n, 0);
    std::queue<int> frontier;
    frontier.push(ref);
    reached[ref] = 1;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v = 0; v < n; ++v) {
        if (f(u, v) > 0.0 && !reached[v]) {
          reached[v] = 1;
          frontier.push(v);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      const bool carries_flow = topology.inflow(i) > 0.0 || topology.outflow(i) > 0.0;
      if (carries_flow && !reached[i])
        out.push_back({"node unreachable from reference", node_name(i)});
    }
    if (topology.inflow(ref) > 0.0)
      out.push_back({"reference node has inflow", node_name(ref)});
  }

  for (int i = 0; i < n; ++i) {
    const double in = topology.inflow(i);
    const double outf = topology.outflow(i);
    if (in > 0.0 && outf > 0.0 && std::abs(in - outf) > kConservationTolerance)
      out.push_back({"conservation violated at node",
                     node_name(i) + " inflow " + std::to_string(in) + " outflow " + std::to_string(outf)});
  }

  const Matrix& w = topology.cyber;
  for (int a = 0; a < n; ++a) {
    if (w(a, a) != 0.0) out.push_back({"cyber self-loop", node_name(a)});
    for (int b = a + 1; b < n; ++b) {
      if (!std::isfinite(w(a, b)) || w(a, b) < 0.0 || !std::isfinite(w(b, a)) || w(b, a) < 0.0)
        out.push_back({"negative cyber weight", edge_name(a, b)});
      else if (w(a, b) != w(b, a))
        out.push_back({"cyber adjacency not symmetric", edge_name(a, b)});
    }
  }
  return out;
}

std::vector<Violation> validate(const GameParams& params) {
  std::vector<Violation> out;
  if (!(params.alpha >= 0.0)) out.push_back({"alpha must be non-negative", ""});
  if (!(params.beta >= 0.0)) out.push_back({"beta must be non-negative", ""});
  if (!(std::abs(params.alpha + params.beta - 1.0) <= kSumTolerance))
    out.push_back({"alpha + beta must equal 1", ""});
  if (!(params.R_A > 0.0)) out.push_back({"R_A must be positive", ""});
  if (!(params.R_D >= params.R_A)) out.push_back({"R_D must be at least R_A", ""});
  if (params.t0 && !(*params.t0 >= 0.0 && *params.t0 < 1.0))
    out.push_back({"t0 must lie in [0, 1)", ""});
  return out;
}

namespace {

template <typename T>
void throw_if_invalid(const T& value, const char* what) {
  const auto violations = validate(value);
  if (violations.empty()) return;
  std::string text = std::string("invalid ") + what + ": ";
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) text += "; ";
    text += violations[k].message();
  }
  throw ValidationError(text);
}

}  // namespace

void require_valid(const CpsTopology& topology) { throw_if_invalid(topology, "topology"); }
void require_valid(const GameParams& params) { throw_if_invalid(params, "game parameters"); }

std::vector<double> normalize_weights(std::span<const double> weights) {
  std::vector<double> out(weights.begin(), weights.end());
  if (out.empty()) return out;
  double sum = 0.0;
  for (double w : out) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("weights must be positive and finite");
    sum += w;
  }
  const double tolerance = 8.0 * static_cast<double>(out.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(sum - 1.0) <= tolerance) return out;
  for (double& w : out) w /= sum;
  return out;
}

Matrix flow_skeleton(const Matrix& flow) {
  const Eigen::Index n = flow.rows();
  Matrix skeleton = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && (flow(i, j) > 0.0 || flow(j, i) > 0.0)) skeleton(i, j) = 1.0;
  return skeleton;
}

}  // namespace cpsblotto
