#include "cpsblotto/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cpsblotto/errors.hpp"

namespace cpsblotto {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  if (!object.is_object()) throw ParseError(std::string(where) + " must be an object");
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ParseError("unknown key '" + item.key() + "' in " + std::string(where));
  }
}

const json& required(const json& object, const char* key, std::string_view where) {
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError("missing key '" + std::string(key) + "' in " + std::string(where));
  return *it;
}

double number(const json& value, std::string_view what) {
  if (!value.is_number()) throw ParseError(std::string(what) + " must be a number");
  return value.get<double>();
}

int index(const json& value, std::string_view what) {
  if (!value.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return value.get<int>();
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario JSON: ") + e.what());
  }
  reject_unknown_keys(doc, {"nodes", "edges", "cyber_edges", "params"}, "scenario");

  const json& nodes = required(doc, "nodes", "scenario");
  if (!nodes.is_array() || nodes.empty()) throw ParseError("'nodes' must be a non-empty array");
  const int n = static_cast<int>(nodes.size());

  Scenario scenario;
  auto& topo = scenario.topology;
  topo.nodes.resize(n);
  std::vector<char> seen(n, 0);
  for (const auto& node : nodes) {
    reject_unknown_keys(node, {"id", "level", "h"}, "node");
    const int id = index(required(node, "id", "node"), "node id");
    if (id < 0 || id >= n) throw ParseError("node id " + std::to_string(id) + " outside 0.." + std::to_string(n - 1));
    if (seen[id]) throw ParseError("duplicate node id " + std::to_string(id));
    seen[id] = 1;
    const json& level = required(node, "level", "node");
    if (!level.is_string()) throw ParseError("node level must be a string");
    const auto parsed = parse_level(level.get<std::string>());
    if (!parsed) throw ParseError("unknown node level '" + level.get<std::string>() + "'");
    topo.nodes[id] = NodeSpec{id, *parsed, number(required(node, "h", "node"), "node h")};
  }

  std::vector<double> h = topo.human_weights();
  for (double value : h)
    if (!(value > 0.0)) throw ValidationError("invalid topology: non-positive human interaction");
  h = normalize_weights(h);
  for (int i = 0; i < n; ++i) topo.nodes[i].h = h[i];

  topo.flow = Matrix::Zero(n, n);
  topo.capacity = Matrix::Zero(n, n);
  std::set<std::pair<int, int>> edge_keys;
  if (const auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("'edges' must be an array");
    for (const auto& edge : *it) {
      reject_unknown_keys(edge, {"from", "to", "flow", "capacity"}, "edge");
      const int from = index(required(edge, "from", "edge"), "edge from");
      const int to = index(required(edge, "to", "edge"), "edge to");
      if (from < 0 || from >= n || to < 0 || to >= n) throw ParseError("edge endpoint out of range");
      if (from == to) throw ParseError("self-loop edge at node " + std::to_string(from));
      if (!edge_keys.emplace(from, to).second)
        throw ParseError("duplicate edge (" + std::to_string(from) + "," + std::to_string(to) + ")");
      topo.flow(from, to) = number(required(edge, "flow", "edge"), "edge flow");
      topo.capacity(from, to) = number(required(edge, "capacity", "edge"), "edge capacity");
    }
  } else {
    throw ParseError("missing key 'edges' in scenario");
  }

  if (const auto it = doc.find("cyber_edges"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("'cyber_edges' must be an array");
    topo.cyber = Matrix::Zero(n, n);
    std::set<std::pair<int, int>> links;
    for (const auto& link : *it) {
      reject_unknown_keys(link, {"a", "b", "weight"}, "cyber edge");
      const int a = index(required(link, "a", "cyber edge"), "cyber edge a");
      const int b = index(required(link, "b", "cyber edge"), "cyber edge b");
      if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError("cyber edge endpoint out of range");
      if (a == b) throw ParseError("cyber self-loop at node " + std::to_string(a));
      if (!links.emplace(std::min(a, b), std::max(a, b)).second)
        throw ParseError("duplicate cyber edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
      const double weight = number(required(link, "weight", "cyber edge"), "cyber edge weight");
      if (!(weight > 0.0)) throw ValidationError("invalid topology: cyber edge weight must be positive");
      topo.cyber(a, b) = weight;
      topo.cyber(b, a) = weight;
    }
  } else {
    topo.cyber = flow_skeleton(topo.flow);
  }

  const json& params = required(doc, "params", "scenario");
  reject_unknown_keys(params, {"alpha", "beta", "t0", "R_D", "R_A"}, "params");
  auto& p = scenario.params;
  p.alpha = number(required(params, "alpha", "params"), "alpha");
  p.beta = number(required(params, "beta", "params"), "beta");
  p.R_D = number(required(params, "R_D", "params"), "R_D");
  p.R_A = number(required(params, "R_A", "params"), "R_A");
  if (const auto it = params.find("t0"); it != params.end() && !it->is_null()) p.t0 = number(*it, "t0");

  require_valid(topo);
  require_valid(p);
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::string dump_scenario(const Scenario& scenario) {
  const auto& topo = scenario.topology;
  const int n = topo.size();
  json doc;
  doc["nodes"] = json::array();
  for (const auto& node : topo.nodes)
    doc["nodes"].push_back({{"id", node.id}, {"level", std::string(to_string(node.level))}, {"h", node.h}});
  doc["edges"] = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (topo.flow(i, j) != 0.0 || topo.capacity(i, j) != 0.0)
        doc["edges"].push_back({{"from", i}, {"to", j}, {"flow", topo.flow(i, j)}, {"capacity", topo.capacity(i, j)}});
  doc["cyber_edges"] = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (topo.cyber(a, b) != 0.0) doc["cyber_edges"].push_back({{"a", a}, {"b", b}, {"weight", topo.cyber(a, b)}});
  const auto& p = scenario.params;
  doc["params"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"R_D", p.R_D}, {"R_A", p.R_A}};
  if (p.t0) doc["params"]["t0"] = *p.t0;
  return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write scenario file " + path.string());
  out << dump_scenario(scenario);
}

}  // namespace cpsblotto
