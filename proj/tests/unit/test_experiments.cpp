#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cpsblotto/csv.hpp"
#include "cpsblotto/cyber.hpp"
#include "cpsblotto/errors.hpp"
#include "cpsblotto/experiments.hpp"
#include "cpsblotto/json_io.hpp"
#include "cpsblotto/scenario.hpp"

using namespace cpsblotto;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(CPSBLOTTO_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("reference value table payoffs") {
    const auto rows = value_table_payoffs(reference_value_table());
    REQUIRE(rows.size() == 4);
    const double expected[] = {0.8, 0.8034, 0.8081, 0.8130};
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(rows[k].payoff_D - expected[k]) <= 1e-3);
      CHECK(std::abs(rows[k].payoff_A - 0.2) <= 1e-3);
    }
    CHECK(rows[0].payoff_D < rows[1].payoff_D);
    CHECK(rows[1].payoff_D < rows[2].payoff_D);
    CHECK(rows[2].payoff_D < rows[3].payoff_D);
    const auto csv = value_table_csv(rows).str();
    CHECK(csv.find("payoff_D") != std::string::npos);
  }

  TEST_CASE("value table parsing and column checks") {
    const auto t = parse_value_table(R"({"h": [0.5, 0.5], "columns": [{"name": "x", "g": [0.6, 0.4]}]})");
    CHECK(t.columns.size() == 1);
    CHECK(value_table_payoffs(t)[0].name == "x");

    CHECK_THROWS_AS(parse_value_table(R"({"h": [0.5, 0.5], "cols": []})"), ParseError);
    CHECK_THROWS_AS(parse_value_table("[1, 2]"), ParseError);

    const auto off = parse_value_table(R"({"h": [0.5, 0.5], "columns": [{"name": "x", "g": [0.6, 0.41]}]})");
    CHECK_THROWS_WITH_AS(value_table_payoffs(off), doctest::Contains("x"), ValidationError);
    const auto negative = parse_value_table(R"({"h": [0.5, 0.5], "columns": [{"name": "y", "g": [1.0, 0.0]}]})");
    CHECK_THROWS_AS(value_table_payoffs(negative), ValidationError);
    CHECK_THROWS_AS(value_table_payoffs(parse_value_table(read_data("bad_value_table.json"))), ValidationError);
  }

  TEST_CASE("sweep points") {
    const std::vector<double> ok{0.1, 0.5, 1.0};
    CHECK_NOTHROW(require_sweep_points(ok, false));
    const std::vector<double> zero{0.0, 1.0};
    CHECK_THROWS_AS(require_sweep_points(zero, false), ValidationError);
    CHECK_NOTHROW(require_sweep_points(zero, true));
    const std::vector<double> unsorted{0.5, 0.2};
    CHECK_THROWS_AS(require_sweep_points(unsorted, true), ValidationError);
    const std::vector<double> above{0.5, 1.5};
    CHECK_THROWS_AS(require_sweep_points(above, true), ValidationError);
    const auto pts = linspace(0.1, 1.0, 10);
    REQUIRE(pts.size() == 10);
    CHECK(pts.front() == 0.1);
    CHECK(pts.back() == 1.0);
    CHECK(pts[4] == doctest::Approx(0.5));
  }

  TEST_CASE("symmetry sweep") {
    const std::vector<double> h{0.5, 0.3, 0.2};
    const std::vector<double> g{0.6, 0.25, 0.15};
    CHECK(interpolate_to_uniform(g, 0.0) == g);
    for (double x : interpolate_to_uniform(g, 1.0)) CHECK(x == doctest::Approx(1.0 / 3));
    CHECK(population_stddev(std::vector<double>{1, 3}) == doctest::Approx(1.0));

    const auto points = sweep_symmetry(h, g, 2.5, 1.0, linspace(0.0, 1.0, 6));
    REQUIRE(points.size() == 6);
    for (std::size_t k = 0; k < points.size(); ++k) {
      CHECK(points[k].payoff_A_ratio == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(points[k].payoff_D_ratio >= 1.0 - 1e-12);
      if (k) CHECK(points[k].g_stddev < points[k - 1].g_stddev);
    }
    CHECK(points.back().g_stddev == doctest::Approx(0.0).epsilon(1e-12));
    const auto csv = symmetry_sweep_csv(points).str();
    CHECK(csv.rfind("# cpsblotto ", 0) == 0);
  }

  TEST_CASE("flow sweep keeps input order") {
    const auto base = nine_node_scenario(1.0);
    const std::vector<double> rho{0.2, 0.6, 1.0};
    const auto points = sweep_flow_capacity(base, rho);
    REQUIRE(points.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(points[k].parameter == rho[k]);
      CHECK(points[k].g.size() == 9);
      CHECK(points[k].payoff_A_ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
    const auto again = sweep_flow_capacity(base, rho);
    CHECK(again[1].g == points[1].g);
    CHECK(flow_sweep_csv(points).rows() == 3);
  }

  TEST_CASE("band sweep is reproducible") {
    const auto s = nine_node_scenario();
    const auto values = battlefield_values(s.topology, s.params);
    BandSweepSpec spec;
    spec.nodes = {0, 1, 8};
    spec.samples = 2000;
    spec.seed = 17;
    spec.thetas = {0.0, 1.0};
    const auto a = band_probability_sweep(values.h, values.g, 2.5, 1.0, spec);
    const auto b = band_probability_sweep(values.h, values.g, 2.5, 1.0, spec);
    REQUIRE(a.size() == 12);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].probability == b[k].probability);
    CHECK(band_sweep_csv(a).rows() == 12);

    CHECK_NOTHROW(require_distinct_levels(s.topology, spec.nodes));
    const std::array<int, 3> same{1, 2, 8};
    CHECK_THROWS_AS(require_distinct_levels(s.topology, same), ValidationError);
  }

  TEST_CASE("effects dump") {
    const auto dump = effects_dump(nine_node_scenario());
    CHECK(dump.physical.rows() == 81);
    CHECK(dump.cyber.rows() == 81);
    CHECK(dump.interdependency.rows() == 81);
    CHECK(dump.values.rows() == 9);
  }

  TEST_CASE("csv formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3) == "0.333333333");
    CsvTable t({"a", "b"});
    t.add_comment("note");
    t.add_row({"1", "2"});
    CHECK(t.str() == "# note\na,b\n1,2\n");
    CHECK_THROWS_AS(t.add_row({"1"}), Error);
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 0.5;
    CHECK(matrix_csv(m, "j", "i").str() == "j,i,value\n0,0,0\n0,1,0\n1,0,0.5\n1,1,0\n");
  }

  TEST_CASE("json output") {
    const std::vector<double> h{0.5, 0.3, 0.2};
    const auto doc = nlohmann::json::parse(solution_json(solve_equilibrium(h, h, 2.5, 1.0)));
    CHECK(doc.at("mu").get<double>() == doctest::Approx(2.5));
    CHECK(doc.at("marginals").size() == 6);
    CHECK(doc.at("omega_A").empty());
    CHECK(doc.at("payoff_A").get<double>() == doctest::Approx(0.2));
  }

  TEST_CASE("shipped scenarios load") {
    const auto s = parse_scenario(read_data("nine_node.json"));
    CHECK(s.topology.size() == 9);
    CHECK(s.topology.nodes[0].h == doctest::Approx(0.2667).epsilon(1e-3));
    CHECK_THROWS_WITH_AS(parse_scenario(read_data("invalid_overflow.json")), doctest::Contains("flow exceeds capacity"),
                         ValidationError);
    const auto iso = parse_scenario(read_data("isolated_nodes.json"));
    const auto values = battlefield_values(iso.topology, iso.params);
    CHECK(values.g == values.h);
  }
}
