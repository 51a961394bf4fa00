#include "finadapt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "finadapt/lp.hpp"

namespace finadapt {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kSupportTol = 1e-9;

bool lexicographically_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// x in conv(points)? Feasibility LP over convex-combination weights with an
// explicit max-norm slack, so near-misses within tol still count.
double hull_distance(std::span<const Eigen::VectorXd> points, const Eigen::VectorXd& x) {
  if (points.empty()) return kInf;
  const int n = static_cast<int>(x.size());
  const int v = static_cast<int>(points.size());
  LinearProgram lp(v + 1);
  for (int i = 0; i < v; ++i) lp.lower_bounds[i] = 0.0;
  lp.lower_bounds[v] = 0.0;
  lp.objective[v] = 1.0;  // minimize the slack t
  for (int d = 0; d < n; ++d) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(v + 1);
    for (int i = 0; i < v; ++i) row[i] = points[i][d];
    row[v] = -1.0;
    lp.add_row(row, RowSense::LessEqual, x[d]);  // sum w_i p_i - t <= x_d
    row[v] = 1.0;
    lp.add_row(row, RowSense::GreaterEqual, x[d]);  // sum w_i p_i + t >= x_d
  }
  Eigen::VectorXd simplex_row = Eigen::VectorXd::Zero(v + 1);
  simplex_row.head(v).setOnes();
  lp.add_row(simplex_row, RowSense::Equal, 1.0);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return kInf;
  return sol.objective;
}

}  // namespace

int affine_rank(std::span<const Eigen::VectorXd> points) {
  if (points.size() <= 1) return 0;
  Eigen::MatrixXd diff(points.size() - 1, points[0].size());
  for (std::size_t i = 1; i < points.size(); ++i)
    diff.row(static_cast<int>(i - 1)) = (points[i] - points[0]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = kRankTol * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff && sv[i] > 0.0) ++rank;
  return rank;
}

bool in_convex_hull(std::span<const Eigen::VectorXd> points, const Eigen::VectorXd& x,
                    double tol) {
  return hull_distance(points, x) <= tol;
}

bool Polytope::contains_point(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != ambient_dim_)
    throw DimensionMismatch("contains_point: wrong ambient dimension");
  return in_convex_hull(vertices_, x, tol);
}

Eigen::VectorXd Polytope::edge_point(const OrientedEdge& e, double alpha) const {
  if (alpha < 0.0 || alpha > 1.0) throw OutOfRange("edge_point: alpha outside [0,1]");
  return (1.0 - alpha) * vertices_[e.tail] + alpha * vertices_[e.head];
}

Polytope build_polytope(const std::vector<Eigen::VectorXd>& points, const BuildLimits& limits) {
  if (points.empty()) throw DegenerateInput("build_polytope: no points");
  const int dim = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (p.size() != dim) throw DimensionMismatch("build_polytope: mixed point dimensions");
  if (static_cast<int>(points.size()) > limits.max_points)
    throw TooLarge("build_polytope: too many points");
  if (dim > limits.max_ambient_dimension)
    throw TooLarge("build_polytope: ambient dimension too large");

  // Deduplicate (keep first occurrence).
  std::vector<Eigen::VectorXd> unique;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : unique)
      if ((p - q).norm() <= 1e-9) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(p);
  }
  if (unique.empty()) throw DegenerateInput("build_polytope: no points after deduplication");

  // Keep extreme points only: p is redundant iff p lies in conv(others).
  std::vector<Eigen::VectorXd> verts;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    std::vector<Eigen::VectorXd> others;
    for (std::size_t j = 0; j < unique.size(); ++j)
      if (j != i) others.push_back(unique[j]);
    if (others.empty() || !in_convex_hull(others, unique[i], 1e-9)) verts.push_back(unique[i]);
  }

  Polytope p;
  p.vertices_ = std::move(verts);
  p.ambient_dim_ = dim;
  p.affine_dim_ = affine_rank(p.vertices_);
  const int nv = p.num_vertices();
  const int d = p.affine_dim_;

  std::set<std::vector<int>> face_sets;
  std::vector<int> all(nv);
  for (int i = 0; i < nv; ++i) all[i] = i;
  face_sets.insert(all);                       // the top face
  for (int i = 0; i < nv; ++i) face_sets.insert({i});  // every vertex is a 0-face

  if (d >= 1) {
    // Coordinates within the affine hull.
    Eigen::MatrixXd diff(nv, dim);
    for (int i = 0; i < nv; ++i) diff.row(i) = (p.vertices_[i] - p.vertices_[0]).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff, Eigen::ComputeThinV);
    const Eigen::MatrixXd basis = svd.matrixV().leftCols(d);  // dim x d
    std::vector<Eigen::VectorXd> w(nv);
    double scale = 1.0;
    for (int i = 0; i < nv; ++i) {
      w[i] = basis.transpose() * (p.vertices_[i] - p.vertices_[0]);
      scale = std::max(scale, w[i].lpNorm<Eigen::Infinity>());
    }
    const double tol = kSupportTol * scale * 100;

    if (d == 1) {
      // A segment: the two extreme points form the single facet/top face.
      // (Already inserted as the top face.)
    } else {
      // Facets: supporting hyperplanes spanned by d affinely independent
      // vertices. Brute force over size-d subsets.
      std::vector<bool> mask(nv, false);
      std::fill(mask.begin(), mask.begin() + d, true);
      do {
        std::vector<int> idx;
        for (int i = 0; i < nv; ++i)
          if (mask[i]) idx.push_back(i);
        // Hyperplane through w[idx...]: normal orthogonal to the spanned
        // directions, computed from the SVD null space.
        Eigen::MatrixXd dirs(d - 1, d);
        for (int r = 1; r < d; ++r) dirs.row(r - 1) = (w[idx[r]] - w[idx[0]]).transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> plane_svd(dirs, Eigen::ComputeFullV);
        const auto& sv = plane_svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
          if (sv[i] > kRankTol * std::max(1.0, sv[0])) ++rank;
        if (rank != d - 1) continue;  // does not span a hyperplane
        const Eigen::VectorXd normal = plane_svd.matrixV().col(d - 1);
        const double offset = normal.dot(w[idx[0]]);
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i < nv; ++i) {
          const double s = normal.dot(w[i]) - offset;
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
        if (lo < -tol && hi > tol) continue;  // not supporting
        std::vector<int> face;
        for (int i = 0; i < nv; ++i)
          if (std::abs(normal.dot(w[i]) - offset) <= tol) face.push_back(i);
        face_sets.insert(face);
      } while (std::prev_permutation(mask.begin(), mask.end()));

      // Close under intersection to obtain the lower faces.
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<std::vector<int>> current(face_sets.begin(), face_sets.end());
        for (std::size_t a = 0; a < current.size(); ++a) {
          for (std::size_t b = a + 1; b < current.size(); ++b) {
            std::vector<int> inter;
            std::set_intersection(current[a].begin(), current[a].end(), current[b].begin(),
                                  current[b].end(), std::back_inserter(inter));
            if (!inter.empty() && face_sets.insert(inter).second) grew = true;
          }
        }
      }
    }
  }

  // Materialize faces of dimension <= 2 plus the top face, sorted.
  for (const auto& fs : face_sets) {
    std::vector<Eigen::VectorXd> pts;
    for (int i : fs) pts.push_back(p.vertices_[i]);
    const int fdim = affine_rank(pts);
    if (fdim <= 2 || static_cast<int>(fs.size()) == nv) {
      p.faces_.push_back(Face{fs, fdim});
    }
  }
  std::sort(p.faces_.begin(), p.faces_.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.vertex_indices < b.vertex_indices;
  });

  for (std::size_t fi = 0; fi < p.faces_.size(); ++fi) {
    const Face& f = p.faces_[fi];
    if (f.dimension == 1) {
      const int a = f.vertex_indices[0], b = f.vertex_indices[1];
      const bool a_first = lexicographically_less(p.vertices_[a], p.vertices_[b]) ||
                           (!lexicographically_less(p.vertices_[b], p.vertices_[a]) && a < b);
      p.edges_.push_back(a_first ? OrientedEdge{a, b} : OrientedEdge{b, a});
    } else if (f.dimension == 2) {
      p.two_faces_.push_back(static_cast<int>(fi));
    }
  }
  return p;
}

}  // namespace finadapt
