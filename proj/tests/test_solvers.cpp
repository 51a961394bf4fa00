#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finadapt/corpus.hpp"
#include "finadapt/solvers.hpp"
#include "finadapt/verify.hpp"
#include "oracles.hpp"

using namespace finadapt;

namespace {

Eigen::VectorXd pt(std::initializer_list<double> coords) {
  Eigen::VectorXd v(static_cast<int>(coords.size()));
  int i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

Instance corpus(const char* name) { return get_instance(name).instance; }

}  // namespace

TEST_CASE("adapt1 on corpus instances") {
  CHECK(solve_adapt1(corpus("interval")).status == SolveStatus::Infeasible);
  CHECK(solve_adapt1(corpus("square")).status == SolveStatus::Infeasible);
  const SolveReport detb = solve_adapt1(corpus("detb"));
  REQUIRE(detb.status == SolveStatus::Optimal);
  CHECK(detb.solution->objective == doctest::Approx(3.0));
  CHECK_THROWS_AS(solve_adapt1(corpus("P")), RequiresDeterministicAB);
}

TEST_CASE("complete adaptability on corpus instances") {
  const SolveReport interval = solve_comp_adapt(corpus("interval"));
  REQUIRE(interval.status == SolveStatus::Optimal);
  CHECK(interval.solution->objective == doctest::Approx(1.0));

  const SolveReport square = solve_comp_adapt(corpus("square"));
  REQUIRE(square.status == SolveStatus::Optimal);
  CHECK(square.solution->objective == doctest::Approx(2.0));

  const SolveReport detb = solve_comp_adapt(corpus("detb"));
  REQUIRE(detb.status == SolveStatus::Optimal);
  CHECK(detb.solution->objective == doctest::Approx(3.0));
}

TEST_CASE("one-dimensional solver matches the grid oracle") {
  const Instance interval = corpus("interval");
  CHECK(solve_adapt_1d(interval, 1).status == SolveStatus::Infeasible);

  const SolveReport k2 = solve_adapt_1d(interval, 2);
  REQUIRE(k2.status == SolveStatus::Optimal);
  CHECK(k2.solution->objective == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(k2.breakpoints.size() == 1);
  CHECK(k2.breakpoints[0] == doctest::Approx(0.5).epsilon(1e-6));
  const double y1 = k2.solution->ys[0][0], y2 = k2.solution->ys[1][0];
  CHECK(std::min(y1, y2) == doctest::Approx(0.5));
  CHECK(std::max(y1, y2) == doctest::Approx(1.0));

  double grid_value = 0.0;
  REQUIRE(testing::grid_oracle_1d_k2(interval, 1e-3, &grid_value) == LpStatus::Optimal);
  CHECK(std::abs(k2.solution->objective - grid_value) <= 1e-6);

  for (int k = 1; k <= 3; ++k) {
    const SolveReport detb = solve_adapt_1d(corpus("detb"), k);
    REQUIRE(detb.status == SolveStatus::Optimal);
    CHECK(detb.solution->objective == doctest::Approx(3.0));
  }
  CHECK_THROWS_AS(solve_adapt_1d(corpus("square"), 2), NotOneDimensional);
  CHECK_THROWS_AS(solve_adapt_1d(corpus("P"), 2), RequiresDeterministicAB);
}

TEST_CASE("k=2 enumeration on the square") {
  EnumOptions raw;
  raw.symmetry_pruning = false;
  const SolveReport report = solve_adapt2_enum(corpus("square"), raw);
  REQUIRE(report.status == SolveStatus::Optimal);
  CHECK(report.candidates_explored == 81);
  CHECK(report.solution->objective == doctest::Approx(2.0).epsilon(1e-7));
  REQUIRE(report.winning_cover.has_value());
  // The winner must pass the oracle.
  CHECK(verify_cover(corpus("square"), *report.solution, 1e-6).verdict ==
        CoverVerdict::Covered);

  // Pruning changes the candidate count but not the value.
  const SolveReport pruned = solve_adapt2_enum(corpus("square"));
  REQUIRE(pruned.status == SolveStatus::Optimal);
  CHECK(pruned.candidates_explored < 81);
  CHECK(pruned.solution->objective == doctest::Approx(report.solution->objective));
}

TEST_CASE("k=2 enumeration equals the 1-D program on the interval") {
  const SolveReport enum2 = solve_adapt2_enum(corpus("interval"));
  REQUIRE(enum2.status == SolveStatus::Optimal);
  CHECK(enum2.solution->objective == doctest::Approx(1.0).epsilon(1e-9));
  const SolveReport detb = solve_adapt2_enum(corpus("detb"));
  REQUIRE(detb.status == SolveStatus::Optimal);
  CHECK(detb.solution->objective == doctest::Approx(3.0));
}

TEST_CASE("k=3 enumeration on the triangle") {
  const Instance tri = corpus("triangle");
  CHECK(solve_adapt1(tri).status == SolveStatus::Infeasible);
  CHECK(solve_adapt2_enum(tri).status == SolveStatus::Infeasible);

  const SolveReport report = solve_adapt3_enum(tri);
  REQUIRE(report.status == SolveStatus::Optimal);
  CHECK(report.solution->objective == doctest::Approx(1.6).epsilon(1e-7));
  CHECK(report.candidates_explored <= 117649);  // 7^(3+3)
  CHECK(verify_cover(tri, *report.solution, 1e-6).verdict == CoverVerdict::Covered);

  const SolveReport detb = solve_adapt3_enum(corpus("detb"));
  REQUIRE(detb.status == SolveStatus::Optimal);
  CHECK(detb.solution->objective == doctest::Approx(3.0));

  // The raw audit enumeration reaches the same value through many more
  // candidates.
  EnumOptions raw;
  raw.symmetry_pruning = false;
  const SolveReport audit = solve_adapt3_enum(tri, raw);
  REQUIRE(audit.status == SolveStatus::Optimal);
  CHECK(audit.solution->objective == doctest::Approx(report.solution->objective));
  CHECK(audit.candidates_explored > report.candidates_explored);
  CHECK(audit.candidates_explored <= 117649);
}

TEST_CASE("k=3 enumeration equals the 1-D program on segments") {
  const SolveReport via_1d = solve_adapt_1d(corpus("interval"), 3);
  const SolveReport via_enum = solve_adapt3_enum(corpus("interval"));
  REQUIRE(via_1d.status == SolveStatus::Optimal);
  REQUIRE(via_enum.status == SolveStatus::Optimal);
  CHECK(std::abs(via_1d.solution->objective - via_enum.solution->objective) <= 1e-6);
}

TEST_CASE("k=2 MILP agrees with enumeration") {
  for (const char* name : {"square", "interval", "detb"}) {
    const Instance inst = corpus(name);
    const SolveReport via_enum = solve_adapt2_enum(inst);
    const SolveReport via_milp = solve_adapt2_milp(inst);
    REQUIRE(via_enum.status == via_milp.status);
    if (via_enum.status == SolveStatus::Optimal) {
      CHECK(std::abs(via_enum.solution->objective - via_milp.solution->objective) <= 1e-5);
      CHECK(verify_cover(inst, *via_milp.solution, 1e-6).verdict == CoverVerdict::Covered);
    }
  }
  // The triangle is k=2-infeasible; the MILP must agree.
  CHECK(solve_adapt2_milp(corpus("triangle")).status == SolveStatus::Infeasible);

  // A user-supplied big-M that is far too small must not fake infeasibility:
  // the doubling fallback recovers the true value.
  EnumOptions tiny_m;
  tiny_m.big_m = 0.05;
  const SolveReport recovered = solve_adapt2_milp(corpus("square"), tiny_m);
  REQUIRE(recovered.status == SolveStatus::Optimal);
  CHECK(recovered.solution->objective == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(recovered.big_m_doubled);
}

TEST_CASE("scenario lower bound on problem P") {
  const Instance p = corpus("P");
  const std::vector<Eigen::VectorXd> scenarios = {pt({0.0}), pt({0.5}), pt({1.0})};
  const SolveReport report = solve_scenario_lb(p, scenarios, 2);
  REQUIRE(report.status == SolveStatus::Optimal);
  CHECK(report.solution->objective == doctest::Approx(2.0).epsilon(1e-9));

  double oracle_value = 0.0;
  REQUIRE(testing::scenario_oracle(p, scenarios, 2, &oracle_value) == LpStatus::Optimal);
  CHECK(oracle_value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(report.solution->objective - oracle_value) <= 1e-6);

  // A single scenario at omega = 0 with k = 1 is a plain LP: value 0.
  const SolveReport single = solve_scenario_lb(p, {pt({0.0})}, 1);
  REQUIRE(single.status == SolveStatus::Optimal);
  CHECK(single.solution->objective == doctest::Approx(0.0));
}

TEST_CASE("scenario lower bound certifies Q infeasible for k = 3") {
  const Instance q = corpus("Q");
  const std::vector<Eigen::VectorXd> scenarios = {pt({0.0}), pt({1.0 / 3.0}), pt({2.0 / 3.0}),
                                                  pt({1.0})};
  CHECK(solve_scenario_lb(q, scenarios, 3).status == SolveStatus::Infeasible);
  double unused = 0.0;
  CHECK(testing::scenario_oracle(q, scenarios, 3, &unused) == LpStatus::Infeasible);
}

TEST_CASE("scenario outside Omega is rejected") {
  CHECK_THROWS_AS(solve_scenario_lb(corpus("P"), {pt({2.0})}, 1), ScenarioOutsideOmega);
}

TEST_CASE("recover_cover on problem P") {
  const Instance p = corpus("P");
  Solution ref;
  ref.x = pt({2, 2, 0, 2});
  ref.ys = {pt({2})};
  const auto pieces = recover_cover(p, ref);
  REQUIRE(pieces.size() == 1);
  // Every row must hold on all of [0, 1]: check at a fine grid.
  for (double w = 0.0; w <= 1.0; w += 0.05) {
    const Eigen::VectorXd omega = pt({w});
    for (const auto& row : pieces[0]) {
      CHECK(row.normal.dot(omega) <= row.offset + 1e-9);
    }
  }

  // Infeasible second stage: y = 5 shrinks the piece to {0}.
  Solution bad;
  bad.x = pt({0, 0, 0, 0});
  bad.ys = {pt({5})};
  const auto bad_pieces = recover_cover(p, bad);
  // The equality row pair encodes 5(w + 2) = 10, i.e. w <= 0 and w >= 0.
  bool upper_found = false;
  for (const auto& row : bad_pieces[0]) {
    if (row.normal[0] > 1e-9 && std::abs(row.offset) < 1e-9) upper_found = true;
  }
  CHECK(upper_found);
}

TEST_CASE("monotonicity and oracle acceptance on random instances") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_random(seed, 1 + seed % 2, 2 + seed % 4);
    const double v1 = solve_adapt1(inst).value_or(kInf);
    const SolveReport r2 = solve_adapt2_enum(inst);
    const SolveReport r3 = solve_adapt3_enum(inst);
    const double v2 = r2.value_or(kInf);
    const double v3 = r3.value_or(kInf);
    const double vc = solve_comp_adapt(inst).value_or(kInf);
    CHECK(v1 >= v2 - 1e-6);
    CHECK(v2 >= v3 - 1e-6);
    CHECK(v3 >= vc - 1e-6);
    for (const SolveReport* r : {&r2, &r3}) {
      if (r->status == SolveStatus::Optimal) {
        CHECK(verify_cover(inst, *r->solution, 1e-6).verdict == CoverVerdict::Covered);
        CHECK(std::abs(objective_value(inst, *r->solution) - r->solution->objective) <= 1e-9);
      }
    }
  }
}

TEST_CASE("integral second stage yields integral reports") {
  // Square-style instance with integral y: the solvers must return integer
  // second-stage values.
  Instance inst = corpus("square");
  inst.y_integer = {0};
  inst.y_bounds = {{-8, 8}};
  for (const SolveReport& report :
       {solve_adapt2_enum(inst), solve_adapt2_milp(inst), solve_comp_adapt(inst)}) {
    REQUIRE(report.status == SolveStatus::Optimal);
    for (const auto& y : report.solution->ys)
      CHECK(std::abs(y[0] - std::round(y[0])) <= 1e-6);
  }
  const SolveReport enum2 = solve_adapt2_enum(inst);
  CHECK(enum2.solution->objective == doctest::Approx(2.0));
}

TEST_CASE("k=2 on a three-dimensional cube") {
  // y tracks the coordinate sum s in [0, 3] within a slack of 2: one piece
  // cannot hold the whole range, two can, and the piece containing s = 3
  // forces the value 3.
  std::vector<Eigen::VectorXd> corners;
  for (int i = 0; i < 8; ++i)
    corners.push_back(pt({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)}));
  Instance inst;
  inst.name = "cube";
  inst.c = Eigen::VectorXd(0);
  inst.d = pt({1});
  inst.omega = build_polytope(corners);
  inst.A = AffineMap::constant_map(Eigen::MatrixXd::Zero(2, 0), 3);
  Eigen::MatrixXd bconst(2, 1);
  bconst << -1, 1;
  inst.B = AffineMap::constant_map(bconst, 3);
  inst.b = AffineMap::constant_map((Eigen::MatrixXd(2, 1) << 0.0, 2.0).finished(), 3);
  for (int j = 0; j < 3; ++j) {
    inst.b.coefficients[j](0, 0) = -1.0;
    inst.b.coefficients[j](1, 0) = 1.0;
  }
  inst.validate();

  CHECK(solve_adapt1(inst).status == SolveStatus::Infeasible);
  const SolveReport comp = solve_comp_adapt(inst);
  REQUIRE(comp.status == SolveStatus::Optimal);
  CHECK(comp.solution->objective == doctest::Approx(3.0));

  const SolveReport via_enum = solve_adapt2_enum(inst);
  REQUIRE(via_enum.status == SolveStatus::Optimal);
  CHECK(via_enum.solution->objective == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(via_enum.candidates_explored <= 6561);  // 3^8
  CHECK(verify_cover(inst, *via_enum.solution, 1e-6).verdict == CoverVerdict::Covered);

  const SolveReport via_milp = solve_adapt2_milp(inst);
  REQUIRE(via_milp.status == SolveStatus::Optimal);
  CHECK(std::abs(via_milp.solution->objective - via_enum.solution->objective) <= 1e-5);
}

TEST_CASE("raw and pruned k=3 enumeration agree on segments") {
  EnumOptions raw;
  raw.symmetry_pruning = false;
  for (unsigned seed : {0u, 2u, 4u}) {
    const Instance inst = generate_random(seed, 1, 3);
    const SolveReport pruned = solve_adapt3_enum(inst);
    const SolveReport audit = solve_adapt3_enum(inst, raw);
    REQUIRE(pruned.status == audit.status);
    CHECK(audit.candidates_explored >= pruned.candidates_explored);
    if (pruned.status == SolveStatus::Optimal) {
      CHECK(std::abs(pruned.solution->objective - audit.solution->objective) <= 1e-9);
    }
  }
}

TEST_CASE("scenario bound never exceeds the enumerated value") {
  for (const char* name : {"interval", "square", "triangle", "detb"}) {
    const Instance inst = corpus(name);
    std::vector<Eigen::VectorXd> scenarios = inst.omega.vertices();
    for (const auto& e : inst.omega.edges()) scenarios.push_back(inst.omega.edge_point(e, 0.5));
    for (int k = 2; k <= 3; ++k) {
      const SolveReport exact =
          k == 2 ? solve_adapt2_enum(inst) : solve_adapt3_enum(inst);
      if (exact.status != SolveStatus::Optimal) continue;
      const SolveReport lb = solve_scenario_lb(inst, scenarios, k);
      REQUIRE(lb.status == SolveStatus::Optimal);
      CHECK(lb.solution->objective <= exact.solution->objective + 1e-6);
    }
  }
}

TEST_CASE("deterministic reports across thread counts") {
  const Instance inst = corpus("square");
  EnumOptions one;
  one.threads = 1;
  EnumOptions four;
  four.threads = 4;
  const SolveReport a = solve_adapt2_enum(inst, one);
  const SolveReport b = solve_adapt2_enum(inst, four);
  REQUIRE(a.status == b.status);
  CHECK(std::memcmp(&a.solution->objective, &b.solution->objective, sizeof(double)) == 0);
  CHECK(a.solution->x == b.solution->x);
  for (int i = 0; i < 2; ++i) CHECK(a.solution->ys[i] == b.solution->ys[i]);
  CHECK(a.candidates_explored == b.candidates_explored);
}
