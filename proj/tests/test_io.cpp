#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "finadapt/corpus.hpp"
#include "finadapt/instance_io.hpp"
#include "finadapt/render.hpp"
#include "finadapt/solvers.hpp"
#include "finadapt/verify.hpp"

using namespace finadapt;

namespace {

Eigen::VectorXd pt(std::initializer_list<double> coords) {
  Eigen::VectorXd v(static_cast<int>(coords.size()));
  int i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

}  // namespace

TEST_CASE("instance round trip preserves solver output bitwise") {
  for (const std::string& name : {"interval", "square", "triangle", "detb"}) {
    const Instance original = get_instance(name).instance;
    const Instance reparsed = parse_instance_json(instance_to_json(original));
    CHECK(reparsed.name == original.name);
    CHECK(reparsed.num_rows() == original.num_rows());

    const SolveReport a = solve_adapt2_enum(original);
    const SolveReport b = solve_adapt2_enum(reparsed);
    REQUIRE(a.status == b.status);
    if (a.status == SolveStatus::Optimal) {
      CHECK(std::memcmp(&a.solution->objective, &b.solution->objective, sizeof(double)) == 0);
    }
  }
}

TEST_CASE("round trip of P preserves the scenario bound bitwise") {
  const Instance p = get_instance("P").instance;
  const Instance reparsed = parse_instance_json(instance_to_json(p));
  const std::vector<Eigen::VectorXd> scenarios = {pt({0.0}), pt({0.5}), pt({1.0})};
  const SolveReport a = solve_scenario_lb(p, scenarios, 2);
  const SolveReport b = solve_scenario_lb(reparsed, scenarios, 2);
  REQUIRE(a.status == SolveStatus::Optimal);
  REQUIRE(b.status == SolveStatus::Optimal);
  CHECK(std::memcmp(&a.solution->objective, &b.solution->objective, sizeof(double)) == 0);
}

TEST_CASE("export and reparse keeps integrality and bounds") {
  const Instance r = get_instance("R").instance;
  const Instance reparsed = parse_instance_json(instance_to_json(r));
  CHECK(reparsed.y_integer == r.y_integer);
  REQUIRE(reparsed.y_bounds.size() == 1);
  CHECK(reparsed.y_bounds[0].first == 0.0);
  CHECK(reparsed.y_bounds[0].second == 1.0);
  CHECK_FALSE(is_deterministic_AB(reparsed));
}

TEST_CASE("parse diagnostics") {
  CHECK_THROWS_AS(parse_instance_json("{ not json"), ParseError);
  CHECK_THROWS_AS(parse_instance_json("{}"), ParseError);  // missing omega_vertices
  CHECK_THROWS_WITH_AS(
      parse_instance_json(R"({"omega_vertices": [[0],[1]], "c": "zero", "b": {"const": []}})"),
      doctest::Contains("field 'c'"), ParseError);
  // Mismatched matrix shape mentions the field.
  CHECK_THROWS_WITH_AS(parse_instance_json(R"({
    "omega_vertices": [[0],[1]],
    "c": [1], "d": [0],
    "A": {"const": [[1, 2]]},
    "B": {"const": [[0]]},
    "b": {"const": [0]}
  })"),
                       doctest::Contains("'A"), ParseError);
}

TEST_CASE("null bounds mean unbounded") {
  const Instance inst = parse_instance_json(R"({
    "omega_vertices": [[0],[1]],
    "c": [1], "d": [0],
    "A": {"const": [[1]]},
    "B": {"const": [[0]]},
    "b": {"const": [1]},
    "x_bounds": [[0, null]],
    "y_bounds": [[null, 5]]
  })");
  CHECK(inst.x_bounds[0].first == 0.0);
  CHECK(inst.x_bounds[0].second == kInf);
  CHECK(inst.y_bounds[0].first == -kInf);
  CHECK(inst.y_bounds[0].second == 5.0);
}

TEST_CASE("solution file round trip") {
  const Instance square = get_instance("square").instance;
  const SolveReport report = solve_adapt2_enum(square);
  REQUIRE(report.status == SolveStatus::Optimal);
  const CoverCertificate cert = verify_cover(square, *report.solution, 1e-6);
  const std::string text = solution_to_json(square, *report.solution, &cert);
  const SolutionFileData data = parse_solution_json(text);
  CHECK(data.k == 2);
  CHECK(data.method == "enum2");
  CHECK(data.objective == report.solution->objective);
  CHECK(data.solution.ys.size() == 2);
  CHECK(check_solution(square, data.solution, data.objective, 1e-6));
}

TEST_CASE("scenario file parsing") {
  const auto scenarios = parse_scenarios_json("[[0], [0.5], [1]]");
  REQUIRE(scenarios.size() == 3);
  CHECK(scenarios[1][0] == 0.5);
  CHECK_THROWS_AS(parse_scenarios_json("{\"a\": 1}"), ParseError);
}

TEST_CASE("polygon cycle orders the diamond boundary") {
  const Polytope diamond = get_instance("R").instance.omega;
  const auto cycle = polygon_cycle(diamond);
  REQUIRE(cycle.size() == 4);
  // Consecutive points must be adjacent vertices (edge length 2*sqrt(2)).
  for (std::size_t i = 0; i < 4; ++i) {
    const double len = (cycle[(i + 1) % 4] - cycle[i]).norm();
    CHECK(len == doctest::Approx(std::sqrt(8.0)));
  }
}

TEST_CASE("piece polygons of the R reference solution are the two hexagons") {
  const CorpusEntry entry = get_instance("R");
  const auto polygons = cover_piece_polygons(entry.instance, entry.reference_solutions[0]);
  REQUIRE(polygons.size() == 2);
  const std::vector<Eigen::Vector2d> hex1 = {{-1, 1}, {0, 2}, {1, 1}, {1, -1}, {0, -2}, {-1, -1}};
  const std::vector<Eigen::Vector2d> hex2 = {{-1, 1}, {1, 1}, {2, 0}, {1, -1}, {-1, -1}, {-2, 0}};
  auto matches = [](const std::vector<Eigen::Vector2d>& poly,
                    const std::vector<Eigen::Vector2d>& expected) {
    if (poly.size() != expected.size()) return false;
    for (const auto& e : expected) {
      bool found = false;
      for (const auto& p : poly)
        if ((p - e).norm() <= 1e-6) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  CHECK(matches(polygons[0], hex1));
  CHECK(matches(polygons[1], hex2));
}

TEST_CASE("square k=2 pieces clip to two slabs") {
  const Instance square = get_instance("square").instance;
  const SolveReport report = solve_adapt2_enum(square);
  REQUIRE(report.status == SolveStatus::Optimal);
  const auto polygons = cover_piece_polygons(square, *report.solution);
  REQUIRE(polygons.size() == 2);
  for (const auto& poly : polygons) CHECK(poly.size() >= 3);
}

TEST_CASE("svg output is deterministic and well formed") {
  const CorpusEntry entry = get_instance("R");
  const std::string svg1 = render_cover_svg(entry.instance, entry.reference_solutions[0]);
  const std::string svg2 = render_cover_svg(entry.instance, entry.reference_solutions[0]);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") == 0);
  CHECK(svg1.find("width=\"600\" height=\"600\"") != std::string::npos);
  // Omega outline plus two piece polygons.
  std::size_t polygons = 0, pos = 0;
  while ((pos = svg1.find("<polygon", pos)) != std::string::npos) {
    ++polygons;
    pos += 8;
  }
  CHECK(polygons == 3);
  CHECK(svg1.find("y1 = (0.000000)") != std::string::npos);
  CHECK(svg1.find("y2 = (1.000000)") != std::string::npos);
}

TEST_CASE("render rejects non-planar uncertainty") {
  const CorpusEntry entry = get_instance("interval");
  Solution sol;
  sol.x = Eigen::VectorXd(0);
  sol.ys = {pt({0.5}), pt({1.0})};
  CHECK_THROWS_AS(render_cover_svg(entry.instance, sol), NotTwoDimensional);
}
