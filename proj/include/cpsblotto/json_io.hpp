#pragma once

#include <string>

#include "cpsblotto/blotto.hpp"
#include "cpsblotto/oracle.hpp"

namespace cpsblotto {

/// {mu, lambda_A, lambda_D, omega_A, marginals: [{i, owner, atom, upper}], payoff_D, payoff_A}
std::string solution_json(const EquilibriumSolution& solution);

/// {analytic: {payoff_D, payoff_A} | null, analytic_error, oracle: {...}, abs_diff, converged, grid_units, pass}
std::string cross_validation_json(const CrossValidationReport& report);

}  // namespace cpsblotto
