#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cpsblotto/topology.hpp"

namespace cpsblotto {

struct Scenario {
  CpsTopology topology;
  GameParams params;
};

/// Parses a scenario JSON document:
///
///   {
///     "nodes":       [{"id": 0, "level": "reference", "h": 4}, ...],
///     "edges":       [{"from": 0, "to": 1, "flow": 1.0, "capacity": 2.0}, ...],
///     "cyber_edges": [{"a": 0, "b": 1, "weight": 1.0}, ...],      (optional)
///     "params":      {"alpha": 0.5, "beta": 0.5, "t0": 0.125, "R_D": 2.5, "R_A": 1}
///   }
///
/// Unknown keys are rejected, ids must cover 0..n-1, h is normalized to sum
/// to one and t0 may be omitted. Without cyber_edges the cyber graph is the
/// unit-weight skeleton of the flow graph. Throws ParseError for malformed
/// documents and ValidationError when the result breaks an invariant.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes with round-trip precision; parse_scenario(dump_scenario(s))
/// reproduces s exactly.
std::string dump_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace cpsblotto
