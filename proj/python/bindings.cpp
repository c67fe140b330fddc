#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpsblotto/cascade.hpp"
#include "cpsblotto/cyber.hpp"
#include "cpsblotto/errors.hpp"
#include "cpsblotto/experiments.hpp"
#include "cpsblotto/json_io.hpp"
#include "cpsblotto/oracle.hpp"
#include "cpsblotto/sampling.hpp"
#include "cpsblotto/version.hpp"

namespace py = pybind11;
using namespace cpsblotto;

namespace {

std::vector<std::string> violation_messages(const CpsTopology& t) {
  std::vector<std::string> out;
  for (const auto& v : validate(t)) out.push_back(v.message());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interdependent CPS security allocation as an asymmetric Colonel Blotto game";
  m.attr("__version__") = version();

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<RegimeError>(m, "RegimeError", error.ptr());

  py::enum_<NodeLevel>(m, "NodeLevel")
      .value("reference", NodeLevel::reference)
      .value("main", NodeLevel::main)
      .value("ordinary", NodeLevel::ordinary);
  py::enum_<Player>(m, "Player").value("attacker", Player::attacker).value("defender", Player::defender);

  py::class_<NodeSpec>(m, "NodeSpec")
      .def_readonly("id", &NodeSpec::id)
      .def_readonly("level", &NodeSpec::level)
      .def_readonly("h", &NodeSpec::h);

  py::class_<CpsTopology>(m, "CpsTopology")
      .def_readonly("nodes", &CpsTopology::nodes)
      .def_readonly("flow", &CpsTopology::flow)
      .def_readonly("capacity", &CpsTopology::capacity)
      .def_readonly("cyber", &CpsTopology::cyber)
      .def("size", &CpsTopology::size)
      .def("human_weights", &CpsTopology::human_weights);

  py::class_<GameParams>(m, "GameParams")
      .def(py::init<>())
      .def_readwrite("alpha", &GameParams::alpha)
      .def_readwrite("beta", &GameParams::beta)
      .def_readwrite("t0", &GameParams::t0)
      .def_readwrite("R_D", &GameParams::R_D)
      .def_readwrite("R_A", &GameParams::R_A);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("topology", &Scenario::topology)
      .def_readwrite("params", &Scenario::params)
      .def("dump", &dump_scenario);

  m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
  m.def("load_scenario", [](const std::string& path) { return load_scenario(path); }, py::arg("path"));
  m.def(
      "generate_concentric",
      [](const std::vector<std::pair<int, double>>& levels, double fill) {
        std::vector<LevelSpec> specs;
        for (auto [count, weight] : levels) specs.push_back({count, weight});
        return concentric_scenario(specs, fill, GameParams{});
      },
      py::arg("levels"), py::arg("flow_fill"));
  m.def("nine_node_scenario", &nine_node_scenario, py::arg("flow_fill") = 0.5);
  m.def("validate", &violation_messages, py::arg("topology"));

  m.def("physical_effect_matrix", &physical_effect_matrix, py::arg("topology"));
  m.def(
      "cyber_effect_matrix", [](const CpsTopology& t, double t0) { return cyber_effect_matrix(t, t0); },
      py::arg("topology"), py::arg("t0"));
  m.def("interdependency_matrix", &interdependency_matrix, py::arg("E"), py::arg("T"), py::arg("alpha"),
        py::arg("beta"));
  m.def(
      "effective_values", [](const std::vector<double>& h, const Matrix& V) { return effective_values(h, V); },
      py::arg("h"), py::arg("V"));
  m.def(
      "battlefield_values",
      [](const Scenario& s) {
        const auto v = battlefield_values(s.topology, s.params);
        return py::make_tuple(v.h, v.g);
      },
      py::arg("scenario"), "(h, g) from the full pipeline");

  py::class_<MarginalDistribution>(m, "MarginalDistribution")
      .def_readonly("battlefield", &MarginalDistribution::battlefield)
      .def_readonly("owner", &MarginalDistribution::owner)
      .def_readonly("atom_at_zero", &MarginalDistribution::atom_at_zero)
      .def_readonly("support_upper", &MarginalDistribution::support_upper)
      .def("cdf", &MarginalDistribution::cdf)
      .def("mean", &MarginalDistribution::mean);

  py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
      .def_readonly("mu", &EquilibriumSolution::mu)
      .def_readonly("lambda_A", &EquilibriumSolution::lambda_A)
      .def_readonly("lambda_D", &EquilibriumSolution::lambda_D)
      .def_readonly("omega_A", &EquilibriumSolution::omega_A)
      .def_readonly("marginals_A", &EquilibriumSolution::marginals_A)
      .def_readonly("marginals_D", &EquilibriumSolution::marginals_D)
      .def_readonly("payoff_D", &EquilibriumSolution::payoff_D)
      .def_readonly("payoff_A", &EquilibriumSolution::payoff_A)
      .def("to_json", &solution_json);

  m.def(
      "solve_equilibrium",
      [](const std::vector<double>& g, const std::vector<double>& h, double R_D, double R_A) {
        return solve_equilibrium(g, h, R_D, R_A);
      },
      py::arg("g"), py::arg("h"), py::arg("R_D"), py::arg("R_A"));
  m.def(
      "complete_info_payoffs",
      [](double R_D, double R_A) {
        const auto p = complete_info_payoffs(R_D, R_A);
        return py::make_tuple(p.defender, p.attacker);
      },
      py::arg("R_D"), py::arg("R_A"));
  m.def(
      "sample_allocation",
      [](const EquilibriumSolution& s, Player player, double budget, std::uint64_t seed) {
        return sample_allocation(player == Player::defender ? s.marginals_D : s.marginals_A, budget, seed).r;
      },
      py::arg("solution"), py::arg("player"), py::arg("budget"), py::arg("seed"));
  m.def(
      "allocation_band_probability",
      [](const EquilibriumSolution& s, Player player, double budget, int battlefield, double share, double epsilon,
         std::size_t samples, std::uint64_t seed) {
        const auto e = allocation_band_probability(player == Player::defender ? s.marginals_D : s.marginals_A,
                                                   budget, battlefield, share, epsilon, samples, seed);
        return py::make_tuple(e.probability, e.standard_error);
      },
      py::arg("solution"), py::arg("player"), py::arg("budget"), py::arg("battlefield"), py::arg("share"),
      py::arg("epsilon"), py::arg("samples"), py::arg("seed"));

  m.def("enumerate_strategies", &enumerate_strategies, py::arg("units"), py::arg("n"));
  m.def(
      "fictitious_play",
      [](const std::vector<double>& g, const std::vector<double>& h, int units_D, int units_A, int iterations) {
        DiscreteGame game{static_cast<int>(g.size()), units_A, units_D, h, g};
        const auto r = fictitious_play(game, iterations);
        py::dict d;
        d["payoff_D"] = r.payoffs.defender;
        d["payoff_A"] = r.payoffs.attacker;
        d["mixed_D"] = r.mixed_D;
        d["mixed_A"] = r.mixed_A;
        d["convergence_metric"] = r.convergence_metric;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("g"), py::arg("h"), py::arg("units_D"), py::arg("units_A"), py::arg("iterations") = 20000);
  m.def(
      "cross_validate",
      [](const std::vector<double>& g, const std::vector<double>& h, double R_D, double R_A, int grid_units,
         int iterations) { return cross_validation_json(cross_validate(g, h, R_D, R_A, grid_units, iterations)); },
      py::arg("g"), py::arg("h"), py::arg("R_D"), py::arg("R_A"), py::arg("grid_units") = 20,
      py::arg("iterations") = 50000, "report as a JSON string");

  m.def(
      "table1_payoffs",
      [](double R_D, double R_A) {
        std::vector<std::tuple<std::string, double, double>> out;
        for (const auto& r : value_table_payoffs(reference_value_table(), R_D, R_A))
          out.emplace_back(r.name, r.payoff_D, r.payoff_A);
        return out;
      },
      py::arg("R_D") = 2.5, py::arg("R_A") = 1.0);
  m.def(
      "sweep_flow_capacity",
      [](const Scenario& s, const std::vector<double>& points) { return flow_sweep_csv(sweep_flow_capacity(s, points)).str(); },
      py::arg("scenario"), py::arg("points"), "CSV text");
  m.def(
      "sweep_symmetry",
      [](const std::vector<double>& h, const std::vector<double>& g, double R_D, double R_A,
         const std::vector<double>& thetas) { return symmetry_sweep_csv(sweep_symmetry(h, g, R_D, R_A, thetas)).str(); },
      py::arg("h"), py::arg("g"), py::arg("R_D"), py::arg("R_A"), py::arg("thetas"), "CSV text");
}
