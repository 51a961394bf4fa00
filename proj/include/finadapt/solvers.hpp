#pragma once

#include <optional>
#include <vector>

#include "finadapt/covers.hpp"
#include "finadapt/lp.hpp"
#include "finadapt/model.hpp"

namespace finadapt {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct EnumOptions {
  bool symmetry_pruning = true;
  int threads = 1;
  std::optional<double> big_m;
  Tolerances tolerances = Tolerances::defaults();
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Solution> solution;
  long candidates_explored = 0;
  long lp_solves = 0;
  double wall_time_seconds = 0.0;
  std::optional<SkeletonCover> winning_cover;
  std::vector<double> breakpoints;  // 1-D solver only, in [0,1] edge coordinates
  double big_m_used = std::numeric_limits<double>::quiet_NaN();
  bool big_m_doubled = false;

  double value_or(double infeasible_value) const {
    return status == SolveStatus::Optimal ? solution->objective : infeasible_value;
  }
};

// k = 1: a single (x, y) feasible at every vertex of Omega.
SolveReport solve_adapt1(const Instance& inst, const EnumOptions& options = {});

// Complete adaptability for deterministic A, B: one second-stage copy per
// vertex of Omega.
SolveReport solve_comp_adapt(const Instance& inst, const EnumOptions& options = {});

// One-dimensional Omega: single LP with ordered breakpoints, any k >= 1.
SolveReport solve_adapt_1d(const Instance& inst, int k, const EnumOptions& options = {});

// k = 2 by enumeration of vertex covers (at most 3^|V| candidate programs).
SolveReport solve_adapt2_enum(const Instance& inst, const EnumOptions& options = {});

// k = 3 by enumeration of vertex covers and edge labelings (at most
// 7^(|V|+|E|) candidate programs).
SolveReport solve_adapt3_enum(const Instance& inst, const EnumOptions& options = {});

// k = 2 as a single big-M MILP with piece-membership and edge-crossing
// binaries. The default M is twice the largest |b| over the vertices of
// Omega; a failed certificate doubles it and re-solves.
SolveReport solve_adapt2_milp(const Instance& inst, const EnumOptions& options = {});

// Finite-scenario relaxation of the k-piece problem: a valid lower bound for
// any scenario subset of Omega, and an infeasibility certificate when
// infeasible. Accepts uncertainty-dependent A and B.
SolveReport solve_scenario_lb(const Instance& inst,
                              const std::vector<Eigen::VectorXd>& scenarios, int k,
                              const EnumOptions& options = {});

// H-representation of each piece { w in Omega : A(w) x + B(w) y_i <= b(w) }
// obtained by substituting the fixed (x, y_i).
std::vector<PiecePolyhedron> recover_cover(const Instance& inst, const Solution& sol);

}  // namespace finadapt
