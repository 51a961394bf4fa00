#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "finadapt/corpus.hpp"
#include "finadapt/model.hpp"
#include "oracles.hpp"

using namespace finadapt;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("residual of the equality row of P at omega = 0") {
  const Instance inst = get_instance("P").instance;
  const Eigen::VectorXd r =
      evaluate_constraints(inst, vec({2, 2, 0, 2}), vec({2}), vec({0}));
  // Row 3 encodes (w + 2) y + (3 - w) x4 <= 10: residual 2*2 + 3*2 - 10 = 0.
  CHECK(r[3] == doctest::Approx(0.0));
  // The solution is feasible at omega = 0: every residual nonpositive.
  CHECK(r.maxCoeff() <= 1e-9);
}

TEST_CASE("zero maps give zero residuals") {
  Instance inst;
  inst.c = vec({0});
  inst.d = vec({0});
  inst.omega = build_polytope({vec({0.0}), vec({1.0})});
  inst.A = AffineMap::constant_map(Eigen::MatrixXd::Zero(2, 1), 1);
  inst.B = AffineMap::constant_map(Eigen::MatrixXd::Zero(2, 1), 1);
  inst.b = AffineMap::constant_map(Eigen::MatrixXd::Zero(2, 1), 1);
  const Eigen::VectorXd r = evaluate_constraints(inst, vec({0}), vec({0}), vec({0.3}));
  CHECK(r.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("violated row of Q at omega = 1") {
  const Instance inst = get_instance("Q").instance;
  const Eigen::VectorXd r = evaluate_constraints(inst, vec({0, 0}), vec({0}), vec({1}));
  // Row 0 encodes w - x1 <= y: residual 1 at omega = 1.
  CHECK(r[0] == doctest::Approx(1.0));
}

TEST_CASE("is_deterministic_AB") {
  CHECK_FALSE(is_deterministic_AB(get_instance("R").instance));  // B depends on omega
  CHECK_FALSE(is_deterministic_AB(get_instance("Q").instance));  // A depends on omega
  CHECK_FALSE(is_deterministic_AB(get_instance("P").instance));
  CHECK(is_deterministic_AB(get_instance("interval").instance));
  CHECK(is_deterministic_AB(get_instance("square").instance));
  CHECK(is_deterministic_AB(get_instance("detb").instance));
}

TEST_CASE("objective_value") {
  const Instance p = get_instance("P").instance;
  Solution sol;
  sol.x = vec({2, 2, 0, 2});
  sol.ys = {vec({2})};
  CHECK(objective_value(p, sol) == doctest::Approx(2.0));

  Instance zero;
  zero.c = vec({0, 0});
  zero.d = vec({0});
  zero.omega = build_polytope({vec({0.0}), vec({1.0})});
  zero.A = AffineMap::constant_map(Eigen::MatrixXd::Zero(1, 2), 1);
  zero.B = AffineMap::constant_map(Eigen::MatrixXd::Zero(1, 1), 1);
  zero.b = AffineMap::constant_map(Eigen::MatrixXd::Zero(1, 1), 1);
  Solution any;
  any.x = vec({5, -3});
  any.ys = {vec({7})};
  CHECK(objective_value(zero, any) == 0.0);

  Instance maxy;
  maxy.c = Eigen::VectorXd(0);
  maxy.d = vec({1});
  maxy.omega = build_polytope({vec({0.0}), vec({1.0})});
  maxy.A = AffineMap::constant_map(Eigen::MatrixXd::Zero(1, 0), 1);
  maxy.B = AffineMap::constant_map(Eigen::MatrixXd::Zero(1, 1), 1);
  maxy.b = AffineMap::constant_map(Eigen::MatrixXd::Zero(1, 1), 1);
  Solution three;
  three.x = Eigen::VectorXd(0);
  three.ys = {vec({0.4}), vec({1.0}), vec({1.6})};
  CHECK(objective_value(maxy, three) == doctest::Approx(1.6));
}

TEST_CASE("objective_value is invariant under permuting ys") {
  const Instance inst = generate_random(3, 2, 4);
  Solution sol;
  sol.x = Eigen::VectorXd::Zero(inst.dim_x());
  sol.ys = {Eigen::VectorXd::Constant(inst.dim_y(), 1.0),
            Eigen::VectorXd::Constant(inst.dim_y(), -2.0),
            Eigen::VectorXd::Constant(inst.dim_y(), 0.5)};
  const double base = objective_value(inst, sol);
  std::swap(sol.ys[0], sol.ys[2]);
  CHECK(objective_value(inst, sol) == doctest::Approx(base).epsilon(1e-12));
  std::swap(sol.ys[1], sol.ys[2]);
  CHECK(objective_value(inst, sol) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("residuals are affine in omega") {
  std::mt19937 gen(17);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_random(seed, 2, 3);
    const int nx = inst.dim_x(), ny = inst.dim_y();
    Eigen::VectorXd x(nx), y(ny);
    for (int j = 0; j < nx; ++j) x[j] = testing::uniform(gen, -1, 1);
    for (int j = 0; j < ny; ++j) y[j] = testing::uniform(gen, -1, 1);
    const Eigen::VectorXd w1 = vec({testing::uniform(gen, 0, 1), testing::uniform(gen, 0, 1)});
    const Eigen::VectorXd w2 = vec({testing::uniform(gen, 0, 1), testing::uniform(gen, 0, 1)});
    const Eigen::VectorXd mid = 0.5 * (w1 + w2);
    const Eigen::VectorXd lhs = evaluate_constraints(inst, x, y, mid);
    const Eigen::VectorXd rhs = 0.5 * (evaluate_constraints(inst, x, y, w1) +
                                       evaluate_constraints(inst, x, y, w2));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const Instance inst = get_instance("P").instance;
  CHECK_THROWS_AS(evaluate_constraints(inst, vec({1, 2}), vec({2}), vec({0})),
                  DimensionMismatch);
  Solution bad;
  bad.x = vec({1});
  bad.ys = {vec({2})};
  CHECK_THROWS_AS(objective_value(inst, bad), DimensionMismatch);
}
