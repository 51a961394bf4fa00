#include "finadapt/model.hpp"

#include <cmath>

namespace finadapt {

AffineMap AffineMap::constant_map(Eigen::MatrixXd value, int uncertainty_dim) {
  AffineMap m;
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(value.rows(), value.cols());
  m.constant = std::move(value);
  m.coefficients.assign(uncertainty_dim, zero);
  return m;
}

Eigen::MatrixXd AffineMap::evaluate(const Eigen::VectorXd& omega) const {
  if (static_cast<int>(coefficients.size()) != omega.size())
    throw DimensionMismatch("AffineMap::evaluate: omega dimension mismatch");
  Eigen::MatrixXd out = constant;
  for (int j = 0; j < omega.size(); ++j) out += omega[j] * coefficients[j];
  return out;
}

bool AffineMap::is_constant(double tol) const {
  for (const auto& m : coefficients) {
    if (m.size() > 0 && m.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

void AffineMap::check_shape(int rows, int cols, int uncertainty_dim,
                            const std::string& name) const {
  if (constant.rows() != rows || constant.cols() != cols)
    throw DimensionMismatch(name + ": constant term shape mismatch");
  if (static_cast<int>(coefficients.size()) != uncertainty_dim)
    throw DimensionMismatch(name + ": coefficient term count mismatch");
  for (const auto& m : coefficients) {
    if (m.rows() != rows || m.cols() != cols)
      throw DimensionMismatch(name + ": coefficient term shape mismatch");
  }
}

void Instance::validate() const {
  const int m = num_rows();
  const int n_omega = uncertainty_dim();
  A.check_shape(m, dim_x(), n_omega, "A");
  B.check_shape(m, dim_y(), n_omega, "B");
  b.check_shape(m, 1, n_omega, "b");
  if (!x_bounds.empty() && static_cast<int>(x_bounds.size()) != dim_x())
    throw DimensionMismatch("x_bounds length mismatch");
  if (!y_bounds.empty() && static_cast<int>(y_bounds.size()) != dim_y())
    throw DimensionMismatch("y_bounds length mismatch");
  for (int idx : x_integer)
    if (idx < 0 || idx >= dim_x()) throw DimensionMismatch("x_integer index out of range");
  for (int idx : y_integer)
    if (idx < 0 || idx >= dim_y()) throw DimensionMismatch("y_integer index out of range");
}

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Adapt1: return "adapt1";
    case SolveMethod::CompAdapt: return "comp";
    case SolveMethod::OneDimensional: return "1d";
    case SolveMethod::EnumerationK2: return "enum2";
    case SolveMethod::EnumerationK3: return "enum3";
    case SolveMethod::MilpK2: return "milp2";
    case SolveMethod::ScenarioLowerBound: return "scenario";
    case SolveMethod::External: return "external";
  }
  return "unknown";
}

Eigen::VectorXd evaluate_constraints(const Instance& inst, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& omega_point) {
  if (x.size() != inst.dim_x() || y.size() != inst.dim_y() ||
      omega_point.size() != inst.uncertainty_dim())
    throw DimensionMismatch("evaluate_constraints: dimension mismatch");
  Eigen::VectorXd out = -inst.b.evaluate(omega_point).col(0);
  if (inst.dim_x() > 0) out += inst.A.evaluate(omega_point) * x;
  if (inst.dim_y() > 0) out += inst.B.evaluate(omega_point) * y;
  return out;
}

bool is_deterministic_AB(const Instance& inst) {
  return inst.A.is_constant() && inst.B.is_constant();
}

double objective_value(const Instance& inst, const Solution& sol) {
  if (sol.x.size() != inst.dim_x()) throw DimensionMismatch("objective_value: x size mismatch");
  double worst = -kInf;
  if (sol.ys.empty()) worst = 0.0;
  for (const auto& y : sol.ys) {
    if (y.size() != inst.dim_y()) throw DimensionMismatch("objective_value: y size mismatch");
    worst = std::max(worst, inst.d.dot(y));
  }
  double first = 0.0;
  if (inst.dim_x() > 0) first = inst.c.dot(sol.x);
  return first + worst;
}

}  // namespace finadapt
