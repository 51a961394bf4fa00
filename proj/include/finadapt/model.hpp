#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "finadapt/common.hpp"
#include "finadapt/geometry.hpp"

namespace finadapt {

// Matrix- or vector-valued affine function of the uncertainty:
//   value(w) = constant + sum_j w_j * coefficients[j].
// Vectors are stored as single-column matrices.
struct AffineMap {
  Eigen::MatrixXd constant;
  std::vector<Eigen::MatrixXd> coefficients;  // one term per uncertainty coordinate

  static AffineMap constant_map(Eigen::MatrixXd value, int uncertainty_dim);

  Eigen::MatrixXd evaluate(const Eigen::VectorXd& omega) const;
  bool is_constant(double tol = 1e-12) const;
  void check_shape(int rows, int cols, int uncertainty_dim, const std::string& name) const;
};

using Bounds = std::vector<std::pair<double, double>>;  // +/-kInf allowed

// Two-stage robust instance:
//   min  c.x + max over pieces of d.y
//   s.t. A(w) x + B(w) y <= b(w)   for the w each piece is responsible for,
// with w ranging over the polytope omega.
struct Instance {
  std::string name;
  Eigen::VectorXd c;  // first-stage cost
  Eigen::VectorXd d;  // second-stage cost
  AffineMap A;        // m x dim_x
  AffineMap B;        // m x dim_y
  AffineMap b;        // m x 1
  Polytope omega;
  Bounds x_bounds;  // empty = all free
  Bounds y_bounds;
  std::vector<int> x_integer;
  std::vector<int> y_integer;

  int dim_x() const { return static_cast<int>(c.size()); }
  int dim_y() const { return static_cast<int>(d.size()); }
  int num_rows() const { return static_cast<int>(A.constant.rows()); }
  int uncertainty_dim() const { return omega.ambient_dimension(); }

  void validate() const;  // throws DimensionMismatch
};

// One inequality normal.w <= offset in uncertainty space.
struct HalfspaceRow {
  Eigen::VectorXd normal;
  double offset = 0.0;
};
using PiecePolyhedron = std::vector<HalfspaceRow>;

enum class SolveMethod {
  Adapt1,
  CompAdapt,
  OneDimensional,
  EnumerationK2,
  EnumerationK3,
  MilpK2,
  ScenarioLowerBound,
  External,
};

const char* to_string(SolveMethod m);

struct Solution {
  Eigen::VectorXd x;
  std::vector<Eigen::VectorXd> ys;  // k second-stage candidates
  double objective = 0.0;
  SolveMethod method = SolveMethod::External;
  std::optional<std::vector<PiecePolyhedron>> pieces;

  int k() const { return static_cast<int>(ys.size()); }
};

// A(w) x + B(w) y - b(w), componentwise; <= tol means feasible at w.
Eigen::VectorXd evaluate_constraints(const Instance& inst, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y, const Eigen::VectorXd& omega_point);

// True iff every uncertainty coefficient of A and B vanishes (|.| <= 1e-12).
bool is_deterministic_AB(const Instance& inst);

// c.x + max_i d.y_i.
double objective_value(const Instance& inst, const Solution& sol);

}  // namespace finadapt
