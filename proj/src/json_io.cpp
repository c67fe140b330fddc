#include "cpsblotto/json_io.hpp"

#include <json.hpp>

namespace cpsblotto {

namespace {

using nlohmann::json;

json payoffs_json(double payoff_D, double payoff_A) { return {{"payoff_D", payoff_D}, {"payoff_A", payoff_A}}; }

}  // namespace

std::string solution_json(const EquilibriumSolution& s) {
  json marginals = json::array();
  for (const auto* side : {&s.marginals_D, &s.marginals_A})
    for (const auto& m : *side)
      marginals.push_back(
          {{"i", m.battlefield}, {"owner", to_string(m.owner)}, {"atom", m.atom_at_zero}, {"upper", m.support_upper}});
  json doc = {{"mu", s.mu},
              {"lambda_A", s.lambda_A},
              {"lambda_D", s.lambda_D},
              {"omega_A", s.omega_A},
              {"marginals", marginals},
              {"payoff_D", s.payoff_D},
              {"payoff_A", s.payoff_A}};
  return doc.dump(2) + "\n";
}

std::string cross_validation_json(const CrossValidationReport& r) {
  json doc;
  doc["analytic"] = r.analytic_ok ? payoffs_json(r.analytic.defender, r.analytic.attacker) : json(nullptr);
  if (!r.analytic_ok) doc["analytic_error"] = r.analytic_error;
  doc["oracle"] = payoffs_json(r.oracle.payoffs.defender, r.oracle.payoffs.attacker);
  doc["oracle"]["iterations"] = r.oracle.iterations;
  doc["oracle"]["convergence_metric"] = r.oracle.convergence_metric;
  doc["abs_diff"] = r.analytic_ok ? payoffs_json(r.abs_diff.defender, r.abs_diff.attacker) : json(nullptr);
  doc["converged"] = r.oracle.converged;
  doc["grid_units"] = r.grid_units;
  doc["units_A"] = r.units_A;
  doc["units_D"] = r.units_D;
  doc["tolerance"] = r.tolerance;
  doc["pass"] = r.pass;
  return doc.dump(2) + "\n";
}

}  // namespace cpsblotto
