#include "finadapt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace finadapt {

LinearProgram::LinearProgram(int num_vars)
    : objective(Eigen::VectorXd::Zero(num_vars)),
      constraint_matrix(0, num_vars),
      rhs(0),
      lower_bounds(Eigen::VectorXd::Constant(num_vars, -kInf)),
      upper_bounds(Eigen::VectorXd::Constant(num_vars, kInf)) {}

int LinearProgram::add_variable(double lower, double upper, double obj_coeff) {
  const int j = num_vars();
  objective.conservativeResize(j + 1);
  objective[j] = obj_coeff;
  lower_bounds.conservativeResize(j + 1);
  lower_bounds[j] = lower;
  upper_bounds.conservativeResize(j + 1);
  upper_bounds[j] = upper;
  constraint_matrix.conservativeResize(num_rows(), j + 1);
  if (num_rows() > 0) constraint_matrix.col(j).setZero();
  return j;
}

void LinearProgram::add_row(const Eigen::VectorXd& coeffs, RowSense sense, double rhs_value) {
  if (coeffs.size() != num_vars())
    throw MalformedProgram("add_row: coefficient length does not match variable count");
  const int m = num_rows();
  constraint_matrix.conservativeResize(m + 1, num_vars());
  constraint_matrix.row(m) = coeffs.transpose();
  row_senses.push_back(sense);
  rhs.conservativeResize(m + 1);
  rhs[m] = rhs_value;
}

void LinearProgram::add_row_terms(const std::vector<std::pair<int, double>>& terms, RowSense sense,
                                  double rhs_value) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(num_vars());
  for (const auto& [idx, val] : terms) {
    if (idx < 0 || idx >= num_vars()) throw MalformedProgram("add_row: variable index out of range");
    coeffs[idx] += val;
  }
  add_row(coeffs, sense, rhs_value);
}

void LinearProgram::validate() const {
  const int n = num_vars();
  const int m = num_rows();
  if (constraint_matrix.rows() != m || constraint_matrix.cols() != n)
    throw MalformedProgram("constraint matrix shape mismatch");
  if (static_cast<int>(row_senses.size()) != m) throw MalformedProgram("row sense count mismatch");
  if (lower_bounds.size() != n || upper_bounds.size() != n)
    throw MalformedProgram("bound vector length mismatch");
  if (objective.hasNaN() || (m > 0 && constraint_matrix.hasNaN()) || (m > 0 && rhs.hasNaN()))
    throw MalformedProgram("NaN entry in program data");
  for (int j = 0; j < n; ++j) {
    if (std::isnan(lower_bounds[j]) || std::isnan(upper_bounds[j]))
      throw MalformedProgram("NaN bound");
  }
}

void IntegralitySpec::validate(const LinearProgram& lp) const {
  for (int idx : integer_indices) {
    if (idx < 0 || idx >= lp.num_vars())
      throw MalformedProgram("integrality index out of range");
    if (!std::isfinite(lp.lower_bounds[idx]) || !std::isfinite(lp.upper_bounds[idx]))
      throw MalformedProgram("integer variable must have finite bounds");
  }
}

namespace {

constexpr double kPivotEps = 1e-9;

// Internal standard form: min c.z + c0, A z {<=,=,>=} b, z >= 0, b >= 0.
struct StandardForm {
  enum VarKind { Shift, Reflect, Split };
  struct VarMap {
    VarKind kind;
    int z1 = -1, z2 = -1;
    double shift = 0.0;
  };

  int num_z = 0;
  std::vector<VarMap> vmap;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> b;
  std::vector<RowSense> senses;
  std::vector<int> row_origin;  // user row index, -1 for bound rows
  std::vector<double> row_sign;
  Eigen::VectorXd c;
  double c0 = 0.0;
};

StandardForm build_standard_form(const LinearProgram& lp, bool maximize) {
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  StandardForm sf;
  sf.vmap.resize(n);

  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower_bounds[j], hi = lp.upper_bounds[j];
    auto& vm = sf.vmap[j];
    if (std::isfinite(lo)) {
      vm = {StandardForm::Shift, sf.num_z++, -1, lo};
    } else if (std::isfinite(hi)) {
      vm = {StandardForm::Reflect, sf.num_z++, -1, hi};
    } else {
      vm = {StandardForm::Split, sf.num_z, sf.num_z + 1, 0.0};
      sf.num_z += 2;
    }
  }

  auto substitute = [&](const Eigen::VectorXd& coeffs, double& constant) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(sf.num_z);
    for (int j = 0; j < n; ++j) {
      const double a = coeffs[j];
      if (a == 0.0) continue;
      const auto& vm = sf.vmap[j];
      switch (vm.kind) {
        case StandardForm::Shift:
          out[vm.z1] += a;
          constant += a * vm.shift;
          break;
        case StandardForm::Reflect:
          out[vm.z1] -= a;
          constant += a * vm.shift;
          break;
        case StandardForm::Split:
          out[vm.z1] += a;
          out[vm.z2] -= a;
          break;
      }
    }
    return out;
  };

  for (int r = 0; r < m; ++r) {
    double constant = 0.0;
    Eigen::VectorXd row = substitute(lp.constraint_matrix.row(r), constant);
    sf.rows.push_back(std::move(row));
    sf.b.push_back(lp.rhs[r] - constant);
    sf.senses.push_back(lp.row_senses[r]);
    sf.row_origin.push_back(r);
    sf.row_sign.push_back(1.0);
  }
  // Doubly-bounded variables contribute an upper-bound row on z.
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower_bounds[j], hi = lp.upper_bounds[j];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(sf.num_z);
      row[sf.vmap[j].z1] = 1.0;
      sf.rows.push_back(std::move(row));
      sf.b.push_back(hi - lo);
      sf.senses.push_back(RowSense::LessEqual);
      sf.row_origin.push_back(-1);
      sf.row_sign.push_back(1.0);
    }
  }

  double cconst = 0.0;
  Eigen::VectorXd cz = substitute(lp.objective, cconst);
  if (maximize) {
    cz = -cz;
    cconst = -cconst;
  }
  sf.c = std::move(cz);
  sf.c0 = cconst;

  for (std::size_t i = 0; i < sf.rows.size(); ++i) {
    if (sf.b[i] < 0.0) {
      sf.rows[i] = -sf.rows[i];
      sf.b[i] = -sf.b[i];
      sf.row_sign[i] = -1.0;
      if (sf.senses[i] == RowSense::LessEqual)
        sf.senses[i] = RowSense::GreaterEqual;
      else if (sf.senses[i] == RowSense::GreaterEqual)
        sf.senses[i] = RowSense::LessEqual;
    }
  }
  return sf;
}

// Dense tableau simplex over the standard form. Column layout:
// [z | slack/surplus | artificial], rhs kept as an extra column.
class Tableau {
 public:
  Tableau(const StandardForm& sf, const Tolerances& tol, bool bland_from_start)
      : sf_(sf), tol_(tol), bland_(bland_from_start) {
    m_ = static_cast<int>(sf.rows.size());
    nz_ = sf.num_z;
    slack_col_.assign(m_, -1);
    art_col_.assign(m_, -1);
    int col = nz_;
    for (int i = 0; i < m_; ++i)
      if (sf.senses[i] != RowSense::Equal) slack_col_[i] = col++;
    first_art_ = col;
    for (int i = 0; i < m_; ++i)
      if (sf.senses[i] != RowSense::LessEqual) art_col_[i] = col++;
    ncols_ = col;

    T_.setZero(m_ + 1, ncols_ + 1);
    basis_.assign(m_, -1);
    dead_.assign(m_, false);
    for (int i = 0; i < m_; ++i) {
      T_.row(i).head(nz_) = sf.rows[i].transpose();
      T_(i, ncols_) = sf.b[i];
      if (slack_col_[i] >= 0)
        T_(i, slack_col_[i]) = (sf.senses[i] == RowSense::LessEqual) ? 1.0 : -1.0;
      if (art_col_[i] >= 0) T_(i, art_col_[i]) = 1.0;
      basis_[i] = (sf.senses[i] == RowSense::LessEqual) ? slack_col_[i] : art_col_[i];
    }
  }

  // Returns false on infeasibility (phase 1) / true otherwise; sets
  // unbounded_ in phase 2.
  bool run(long& iterations) {
    const bool need_phase1 = first_art_ < ncols_;
    if (need_phase1) {
      set_phase1_objective();
      iterate(/*phase=*/1, iterations);
      const double phase1_obj = -T_(m_, ncols_);
      const double scale = std::max(1.0, max_abs_b());
      if (phase1_obj > tol_.feasibility * scale) return false;
      purge_artificials();
    }
    set_phase2_objective();
    iterate(/*phase=*/2, iterations);
    return true;
  }

  bool unbounded() const { return unbounded_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<bool>& dead() const { return dead_; }
  int num_structural() const { return nz_; }
  int slack_col(int row) const { return slack_col_[row]; }
  double basic_value(int row) const { return T_(row, ncols_); }

 private:
  double max_abs_b() const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v = std::max(v, std::abs(sf_.b[i]));
    return v;
  }

  void set_phase1_objective() {
    // Reduced costs for min sum of artificials with the current basis.
    T_.row(m_).setZero();
    for (int j = first_art_; j < ncols_; ++j) T_(m_, j) = 1.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= first_art_) T_.row(m_) -= T_.row(i);
  }

  void set_phase2_objective() {
    T_.row(m_).setZero();
    T_.row(m_).head(nz_) = sf_.c.transpose();
    T_(m_, ncols_) = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (dead_[i]) continue;
      const int bj = basis_[i];
      const double cb = (bj < nz_) ? sf_.c[bj] : 0.0;
      if (cb != 0.0) T_.row(m_) -= cb * T_.row(i);
    }
  }

  void purge_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (dead_[i] || basis_[i] < first_art_) continue;
      // Pivot on the largest available entry; noise-sized entries mean the
      // row is numerically redundant.
      int enter = -1;
      double best = 1e-7;
      for (int j = 0; j < first_art_; ++j) {
        if (std::abs(T_(i, j)) > best) {
          best = std::abs(T_(i, j));
          enter = j;
        }
      }
      if (enter >= 0) {
        pivot(i, enter);
      } else {
        dead_[i] = true;  // redundant row
      }
    }
  }

  void iterate(int phase, long& iterations) {
    const long limit = 5000 + 250L * (m_ + ncols_);
    int degenerate_streak = 0;
    for (;;) {
      if (iterations++ > limit) throw IterationLimit("simplex iteration limit exceeded");
      const int max_col = (phase == 1) ? ncols_ : first_art_;
      int enter = -1;
      if (bland_) {
        for (int j = 0; j < max_col; ++j) {
          if (T_(m_, j) < -tol_.optimality) {
            enter = j;
            break;
          }
        }
      } else {
        double best = -tol_.optimality;
        for (int j = 0; j < max_col; ++j) {
          if (T_(m_, j) < best) {
            best = T_(m_, j);
            enter = j;
          }
        }
      }
      if (enter < 0) return;  // optimal for this phase

      // Min-ratio test, preferring pivot elements above a comfortable floor;
      // noise-sized pivots are admitted only when nothing better exists.
      int leave = -1;
      double best_ratio = kInf;
      for (const double pivot_floor : {1e-7, kPivotEps}) {
        for (int i = 0; i < m_; ++i) {
          if (dead_[i]) continue;
          const double a = T_(i, enter);
          if (a <= pivot_floor) continue;
          const double ratio = T_(i, ncols_) / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
        if (leave >= 0) break;
      }
      if (leave < 0) {
        if (phase == 2) unbounded_ = true;
        return;  // phase 1 cannot be unbounded: objective bounded below by 0
      }
      if (best_ratio <= kPivotEps) {
        if (++degenerate_streak > 40) bland_ = true;
      } else {
        degenerate_streak = 0;
      }
      pivot(leave, enter);
    }
  }

  void pivot(int r, int s) {
    const double inv = 1.0 / T_(r, s);
    T_.row(r) *= inv;
    T_(r, s) = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = T_(i, s);
      if (f != 0.0) {
        T_.row(i) -= f * T_.row(r);
        T_(i, s) = 0.0;
      }
    }
    basis_[r] = s;
  }

  const StandardForm& sf_;
  Tolerances tol_;
  bool bland_;
  bool unbounded_ = false;
  int m_ = 0, nz_ = 0, ncols_ = 0, first_art_ = 0;
  Eigen::MatrixXd T_;
  std::vector<int> basis_;
  std::vector<int> slack_col_;
  std::vector<int> art_col_;
  std::vector<bool> dead_;
};

struct Extraction {
  bool ok = false;
  Eigen::VectorXd z;
  Eigen::VectorXd y;  // one dual per internal row (0 for dead rows)
  double primal_obj = 0.0;
  double dual_obj = 0.0;
};

// Recomputes primal and dual values from the final basis with a fresh
// factorization, then checks KKT conditions against the original data.
Extraction extract_and_check(const StandardForm& sf, const Tableau& tab, const Tolerances& tol) {
  Extraction ex;
  const int m_total = static_cast<int>(sf.rows.size());
  std::vector<int> alive;
  for (int i = 0; i < m_total; ++i)
    if (!tab.dead()[i]) alive.push_back(i);
  const int ma = static_cast<int>(alive.size());
  const int nz = sf.num_z;

  Eigen::MatrixXd B(ma, ma);
  Eigen::VectorXd cb(ma), ba(ma);
  for (int k = 0; k < ma; ++k) {
    const int row = alive[k];
    const int col = tab.basis()[row];
    for (int r = 0; r < ma; ++r) {
      const int rr = alive[r];
      double v = 0.0;
      if (col < nz) {
        v = sf.rows[rr][col];
      } else if (col == tab.slack_col(rr)) {
        v = (sf.senses[rr] == RowSense::LessEqual) ? 1.0 : -1.0;
      }
      B(r, k) = v;
    }
    cb[k] = (col < nz) ? sf.c[col] : 0.0;
    ba[k] = sf.b[alive[k]];
  }

  Eigen::VectorXd zb, y;
  if (ma > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    lu.setThreshold(1e-10);
    if (lu.isInvertible()) {
      zb = lu.solve(ba);
      y = lu.transpose().solve(cb);
    }
    if (zb.size() == 0 || !zb.allFinite() || !y.allFinite()) {
      // Degenerate basis (exactly dependent columns reached through tiny
      // pivots): fall back to the tableau's basic values and least-squares
      // duals; the KKT checks below remain the gate.
      zb.resize(ma);
      for (int k = 0; k < ma; ++k) zb[k] = tab.basic_value(alive[k]);
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(B.transpose());
      y = cod.solve(cb);
      if (!y.allFinite()) return ex;
    }
  }

  ex.z = Eigen::VectorXd::Zero(nz);
  for (int k = 0; k < ma; ++k) {
    const int col = tab.basis()[alive[k]];
    if (col < nz) ex.z[col] = zb[k];
  }
  ex.y = Eigen::VectorXd::Zero(m_total);
  for (int k = 0; k < ma; ++k) ex.y[alive[k]] = y[k];

  const double bscale = std::max(1.0, std::abs(sf.c0));
  double scale = bscale;
  for (int i = 0; i < m_total; ++i) scale = std::max(scale, std::abs(sf.b[i]));
  const double feas = tol.feasibility * scale * 10;

  // Primal feasibility.
  for (int j = 0; j < nz; ++j)
    if (ex.z[j] < -feas) return ex;
  for (int i = 0; i < m_total; ++i) {
    const double lhs = sf.rows[i].dot(ex.z);
    const double resid = lhs - sf.b[i];
    switch (sf.senses[i]) {
      case RowSense::LessEqual:
        if (resid > feas) return ex;
        break;
      case RowSense::GreaterEqual:
        if (resid < -feas) return ex;
        break;
      case RowSense::Equal:
        if (std::abs(resid) > feas) return ex;
        break;
    }
  }
  // Dual feasibility: sign conditions and nonnegative reduced costs.
  for (int i = 0; i < m_total; ++i) {
    if (sf.senses[i] == RowSense::LessEqual && ex.y[i] > feas) return ex;
    if (sf.senses[i] == RowSense::GreaterEqual && ex.y[i] < -feas) return ex;
  }
  Eigen::VectorXd reduced = sf.c;
  for (int i = 0; i < m_total; ++i) {
    if (ex.y[i] != 0.0) reduced -= ex.y[i] * sf.rows[i];
  }
  const double opt = tol.optimality * scale * 10;
  for (int j = 0; j < nz; ++j) {
    if (reduced[j] < -opt) return ex;
    if (std::abs(reduced[j] * ex.z[j]) > opt * (1.0 + std::abs(ex.z[j]))) return ex;
  }

  ex.primal_obj = sf.c.dot(ex.z) + sf.c0;
  double ydotb = 0.0;
  for (int i = 0; i < m_total; ++i) ydotb += ex.y[i] * sf.b[i];
  ex.dual_obj = ydotb + sf.c0;
  if (std::abs(ex.primal_obj - ex.dual_obj) >
      tol.duality * 10 * (1.0 + std::abs(ex.primal_obj)))
    return ex;
  ex.ok = true;
  return ex;
}

LpSolution assemble_solution(const LinearProgram& lp, const StandardForm& sf,
                             const Extraction& ex) {
  LpSolution sol;
  sol.status = LpStatus::Optimal;
  const bool maximize = lp.sense == ObjectiveSense::Maximize;
  sol.primal.resize(lp.num_vars());
  for (int j = 0; j < lp.num_vars(); ++j) {
    const auto& vm = sf.vmap[j];
    switch (vm.kind) {
      case StandardForm::Shift:
        sol.primal[j] = vm.shift + ex.z[vm.z1];
        break;
      case StandardForm::Reflect:
        sol.primal[j] = vm.shift - ex.z[vm.z1];
        break;
      case StandardForm::Split:
        sol.primal[j] = ex.z[vm.z1] - ex.z[vm.z2];
        break;
    }
  }
  sol.objective = maximize ? -ex.primal_obj : ex.primal_obj;
  sol.dual_objective = maximize ? -ex.dual_obj : ex.dual_obj;
  sol.duals = Eigen::VectorXd::Zero(lp.num_rows());
  for (std::size_t i = 0; i < sf.rows.size(); ++i) {
    const int r = sf.row_origin[i];
    if (r >= 0) sol.duals[r] = (maximize ? -1.0 : 1.0) * sf.row_sign[i] * ex.y[i];
  }
  return sol;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol) {
  lp.validate();
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower_bounds[j] > lp.upper_bounds[j]) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;  // crossing bounds
      return sol;
    }
  }
  const bool maximize = lp.sense == ObjectiveSense::Maximize;
  const StandardForm sf = build_standard_form(lp, maximize);

  for (int attempt = 0; attempt < 2; ++attempt) {
    Tableau tab(sf, tol, /*bland_from_start=*/attempt == 1);
    long iterations = 0;
    const bool feasible = tab.run(iterations);
    if (!feasible) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      sol.iterations = iterations;
      return sol;
    }
    if (tab.unbounded()) {
      LpSolution sol;
      sol.status = LpStatus::Unbounded;
      sol.iterations = iterations;
      return sol;
    }
    Extraction ex = extract_and_check(sf, tab, tol);
    if (ex.ok) {
      LpSolution sol = assemble_solution(lp, sf, ex);
      sol.iterations = iterations;
      return sol;
    }
    // KKT check failed: retry once with Bland's rule from the first pivot.
  }
  throw Error("solve_lp: numerical failure (KKT check failed twice)");
}

namespace {

struct BbNode {
  double bound;  // relaxation value (min sense)
  int depth;
  long id;
  Eigen::VectorXd lower, upper;
  Eigen::VectorXd relax_point;

  struct Worse {
    bool operator()(const BbNode& a, const BbNode& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;   // best bound first
      if (a.depth != b.depth) return a.depth < b.depth;   // then deepest
      return a.id > b.id;                                 // then oldest
    }
  };
};

// Largest distance to the nearest integer wins; ties keep the smaller index.
// Returns -1 when every flagged variable is integral within tolerance.
int most_fractional(const Eigen::VectorXd& x, const std::vector<int>& indices, double int_tol) {
  int best = -1;
  double best_dist = int_tol;
  for (int idx : indices) {
    const double frac = x[idx] - std::floor(x[idx]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist > best_dist) {
      best_dist = dist;
      best = idx;
    }
  }
  return best;
}

}  // namespace

LpSolution solve_milp(const LinearProgram& lp, const IntegralitySpec& spec, const Tolerances& tol,
                      const MilpOptions& options) {
  lp.validate();
  spec.validate(lp);
  if (spec.empty()) return solve_lp(lp, tol);

  const bool maximize = lp.sense == ObjectiveSense::Maximize;
  LinearProgram work = lp;
  if (maximize) {
    work.sense = ObjectiveSense::Minimize;
    work.objective = -work.objective;
  }

  long next_id = 0;
  long nodes = 0;
  std::priority_queue<BbNode, std::vector<BbNode>, BbNode::Worse> queue;

  auto eval = [&](const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    LinearProgram node_lp = work;
    node_lp.lower_bounds = lo;
    node_lp.upper_bounds = hi;
    ++nodes;
    return solve_lp(node_lp, tol);
  };

  LpSolution root = eval(work.lower_bounds, work.upper_bounds);
  if (root.status != LpStatus::Optimal) {
    if (maximize && root.status == LpStatus::Unbounded) root.objective = kInf;
    root.bb_nodes = nodes;
    return root;
  }
  queue.push(BbNode{root.objective, 0, next_id++, work.lower_bounds, work.upper_bounds,
                    root.primal});

  std::optional<LpSolution> incumbent;
  double incumbent_value = kInf;

  while (!queue.empty()) {
    if (nodes > options.node_limit) throw NodeLimit("branch-and-bound node limit exceeded");
    BbNode node = queue.top();
    queue.pop();
    if (node.bound >= incumbent_value - 1e-9) break;  // best-bound: rest are no better

    const int branch_var = most_fractional(node.relax_point, spec.integer_indices,
                                           tol.integrality);
    if (branch_var < 0) {
      if (node.bound < incumbent_value - 1e-12) {
        LpSolution cand;
        cand.status = LpStatus::Optimal;
        cand.primal = node.relax_point;
        cand.objective = node.bound;
        incumbent = cand;
        incumbent_value = node.bound;
      }
      continue;
    }

    const double value = node.relax_point[branch_var];
    for (int side = 0; side < 2; ++side) {
      Eigen::VectorXd lo = node.lower, hi = node.upper;
      if (side == 0)
        hi[branch_var] = std::floor(value);
      else
        lo[branch_var] = std::ceil(value);
      if (lo[branch_var] > hi[branch_var]) continue;
      LpSolution relax = eval(lo, hi);
      if (relax.status == LpStatus::Infeasible) continue;
      if (relax.status == LpStatus::Unbounded)
        throw Error("solve_milp: child relaxation unbounded after bounded root");
      if (relax.objective >= incumbent_value - 1e-9) continue;
      queue.push(BbNode{relax.objective, node.depth + 1, next_id++, std::move(lo), std::move(hi),
                        relax.primal});
    }
  }

  if (!incumbent) {
    LpSolution sol;
    sol.status = LpStatus::Infeasible;
    sol.bb_nodes = nodes;
    return sol;
  }
  LpSolution sol = *incumbent;
  if (maximize) sol.objective = -sol.objective;
  sol.bb_nodes = nodes;
  return sol;
}

}  // namespace finadapt
