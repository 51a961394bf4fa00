#include "finadapt/verify.hpp"

#include <cmath>

#include "finadapt/lp.hpp"
#include "finadapt/solvers.hpp"

namespace finadapt {

namespace {

// Max over Omega of min over pieces of the violation of one chosen row per
// piece. Positive optimum above tol = a point every piece misses.
struct ComboLp {
  const Polytope& omega;
  // residual_r(w) = normal . w - offset per piece, prepared outside.
  std::vector<std::vector<double>> vertex_residuals;  // [piece][vertex] for the chosen rows

  double solve(Eigen::VectorXd* witness, long& lp_solves) const {
    const int nv = omega.num_vertices();
    const int k = static_cast<int>(vertex_residuals.size());
    LinearProgram lp(nv + 1);
    lp.sense = ObjectiveSense::Maximize;
    for (int v = 0; v < nv; ++v) lp.lower_bounds[v] = 0.0;
    lp.objective[nv] = 1.0;
    // Residuals are affine in w, hence linear in the vertex weights.
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(nv + 1);
      for (int v = 0; v < nv; ++v) row[v] = vertex_residuals[i][v];
      row[nv] = -1.0;
      lp.add_row(row, RowSense::GreaterEqual, 0.0);
    }
    Eigen::VectorXd simplex = Eigen::VectorXd::Zero(nv + 1);
    simplex.head(nv).setOnes();
    lp.add_row(simplex, RowSense::Equal, 1.0);
    const LpSolution sol = solve_lp(lp);
    ++lp_solves;
    if (sol.status != LpStatus::Optimal) return -kInf;  // cannot happen: always feasible
    if (witness) {
      witness->setZero(omega.ambient_dimension());
      for (int v = 0; v < nv; ++v) *witness += sol.primal[v] * omega.vertex(v);
    }
    return sol.objective;
  }
};

}  // namespace

CoverCertificate verify_cover(const Instance& inst, const Solution& sol, double tol,
                              const VerifyOptions& options) {
  inst.validate();
  if (tol <= 0) throw OutOfRange("verify_cover: tol must be positive");
  const int m = inst.num_rows();
  const int k = sol.k();
  if (k < 1) throw DimensionMismatch("verify_cover: solution has no pieces");

  double combos_estimate = 1.0;
  for (int i = 0; i < k; ++i) combos_estimate *= m;
  if (combos_estimate > static_cast<double>(options.combination_budget))
    throw CombinatorialBudgetExceeded("verify_cover: m^k exceeds the combination budget");

  const std::vector<PiecePolyhedron> pieces = recover_cover(inst, sol);
  const int nv = inst.omega.num_vertices();

  // Residual of every row of every piece at every vertex of Omega.
  std::vector<std::vector<std::vector<double>>> residuals(k);
  for (int i = 0; i < k; ++i) {
    residuals[i].resize(m);
    for (int r = 0; r < m; ++r) {
      residuals[i][r].resize(nv);
      for (int v = 0; v < nv; ++v)
        residuals[i][r][v] = pieces[i][r].normal.dot(inst.omega.vertex(v)) - pieces[i][r].offset;
    }
  }

  CoverCertificate cert;
  cert.max_uncovered_slack = -kInf;
  std::vector<int> combo(k, 0);
  Eigen::VectorXd witness;
  for (;;) {
    ComboLp lp_input{inst.omega, {}};
    lp_input.vertex_residuals.resize(k);
    // Skip combinations whose max-slack is trivially dominated: if some
    // chosen row is nonpositive on all vertices, its residual is nonpositive
    // on Omega, so the combination cannot produce a witness.
    bool hopeless = false;
    for (int i = 0; i < k; ++i) {
      const auto& rv = residuals[i][combo[i]];
      double best = -kInf;
      for (double r : rv) best = std::max(best, r);
      if (best <= tol) {
        hopeless = true;
        break;
      }
      lp_input.vertex_residuals[i] = rv;
    }
    if (!hopeless) {
      const double slack = lp_input.solve(&witness, cert.lp_solves);
      cert.max_uncovered_slack = std::max(cert.max_uncovered_slack, slack);
      if (slack > tol) {
        cert.verdict = CoverVerdict::NotCovered;
        cert.witness = witness;
        cert.violated_rows.assign(k, {});
        for (int i = 0; i < k; ++i) {
          const Eigen::VectorXd res = evaluate_constraints(inst, sol.x, sol.ys[i], witness);
          for (int r = 0; r < m; ++r)
            if (res[r] > tol / 2) cert.violated_rows[i].push_back(r);
        }
        return cert;
      }
    }
    // Next combination.
    int pos = k - 1;
    while (pos >= 0) {
      if (++combo[pos] < m) break;
      combo[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  cert.verdict = CoverVerdict::Covered;
  return cert;
}

bool check_solution(const Instance& inst, const Solution& sol, double claimed_objective,
                    double tol) {
  const CoverCertificate cert = verify_cover(inst, sol, tol);
  if (cert.verdict != CoverVerdict::Covered) return false;
  if (std::abs(objective_value(inst, sol) - claimed_objective) > tol) return false;
  const Tolerances tols;
  for (int idx : inst.x_integer) {
    if (std::abs(sol.x[idx] - std::round(sol.x[idx])) > tols.integrality) return false;
  }
  for (const auto& y : sol.ys) {
    for (int idx : inst.y_integer) {
      if (std::abs(y[idx] - std::round(y[idx])) > tols.integrality) return false;
    }
  }
  return true;
}

}  // namespace finadapt
