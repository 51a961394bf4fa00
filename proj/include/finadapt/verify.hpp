#pragma once

#include <optional>
#include <vector>

#include "finadapt/model.hpp"

namespace finadapt {

enum class CoverVerdict { Covered, NotCovered };

struct CoverCertificate {
  CoverVerdict verdict = CoverVerdict::Covered;
  std::optional<Eigen::VectorXd> witness;  // a point of Omega missed by every piece
  std::vector<std::vector<int>> violated_rows;  // per piece, at the witness
  double max_uncovered_slack = -kInf;
  long lp_solves = 0;
};

struct VerifyOptions {
  long combination_budget = 1000000;  // cap on m^k row combinations
};

// Independent feasibility certification: recovers the pieces
// { w : A(w) x + B(w) y_i <= b(w) } and decides whether their union covers
// Omega. A point is uncovered iff some row is violated in every piece, so
// all m^k row combinations are examined with a max-slack LP each; the
// maximizer of the worst combination is returned as witness when its slack
// exceeds tol. Accepts uncertainty-dependent A and B.
CoverCertificate verify_cover(const Instance& inst, const Solution& sol, double tol = 1e-6,
                              const VerifyOptions& options = {});

// verify_cover + objective recomputation + integrality flags.
bool check_solution(const Instance& inst, const Solution& sol, double claimed_objective,
                    double tol = 1e-6);

}  // namespace finadapt
