#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "finadapt/common.hpp"

namespace finadapt {

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class ObjectiveSense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Dense linear program
//
//   min/max  objective . x
//   s.t.     constraint_matrix x  {<=,=,>=}  rhs   (row-wise)
//            lower <= x <= upper               (+/-inf allowed)
//
// Rows are appended through add_row; variables are declared up front or
// through add_variable.
struct LinearProgram {
  ObjectiveSense sense = ObjectiveSense::Minimize;
  Eigen::VectorXd objective;          // length n
  Eigen::MatrixXd constraint_matrix;  // m x n
  std::vector<RowSense> row_senses;
  Eigen::VectorXd rhs;
  Eigen::VectorXd lower_bounds;  // length n
  Eigen::VectorXd upper_bounds;

  LinearProgram() : constraint_matrix(0, 0) {}
  explicit LinearProgram(int num_vars);

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  // Appends a free variable with zero objective coefficient; returns its index.
  int add_variable(double lower = -kInf, double upper = kInf, double obj_coeff = 0.0);

  void add_row(const Eigen::VectorXd& coeffs, RowSense sense, double rhs_value);
  // Sparse form: terms are (variable index, coefficient) pairs.
  void add_row_terms(const std::vector<std::pair<int, double>>& terms, RowSense sense,
                     double rhs_value);

  // Throws MalformedProgram on dimension mismatches or NaN entries.
  void validate() const;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd primal;         // length n when Optimal
  double objective = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd duals;          // one per row when Optimal (empty for MILP)
  double dual_objective = std::numeric_limits<double>::quiet_NaN();
  long iterations = 0;            // simplex pivots
  long bb_nodes = 0;              // branch-and-bound relaxations (MILP only)
};

// Indices of variables constrained to integer values. Flagged variables must
// carry finite bounds.
struct IntegralitySpec {
  std::vector<int> integer_indices;

  bool empty() const { return integer_indices.empty(); }
  void validate(const LinearProgram& lp) const;
};

struct MilpOptions {
  long node_limit = 200000;
};

// Two-phase dense simplex with a Bland's-rule fallback after a degenerate
// streak. Deterministic: identical input yields bitwise-identical output.
LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol = Tolerances::defaults());

// Branch and bound over solve_lp: best-bound node selection, most-fractional
// branching, depth-first tie-break. With an empty spec this is exactly
// solve_lp.
LpSolution solve_milp(const LinearProgram& lp, const IntegralitySpec& spec,
                      const Tolerances& tol = Tolerances::defaults(),
                      const MilpOptions& options = MilpOptions{});

}  // namespace finadapt
