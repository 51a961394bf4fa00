#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "finadapt/common.hpp"

namespace finadapt {

struct Face {
  std::vector<int> vertex_indices;  // sorted
  int dimension = 0;
};

// tail -> head; the orientation is deterministic: the tail is the
// lexicographically smaller coordinate vector.
struct OrientedEdge {
  int tail = 0;
  int head = 0;
};

struct BuildLimits {
  int max_points = 12;
  int max_ambient_dimension = 4;
};

// Polytope in V-representation with its face lattice up to dimension 2 plus
// the top face. Immutable after construction.
class Polytope {
 public:
  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  const Eigen::VectorXd& vertex(int i) const { return vertices_[i]; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int ambient_dimension() const { return ambient_dim_; }
  int affine_dimension() const { return affine_dim_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<OrientedEdge>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  // Indices into faces() of the two-dimensional faces.
  const std::vector<int>& two_face_indices() const { return two_faces_; }

  // True iff the max-norm distance from x to the polytope is at most tol.
  bool contains_point(const Eigen::VectorXd& x, double tol = 1e-7) const;

  // (1-alpha) * tail + alpha * head; alpha must lie in [0,1].
  Eigen::VectorXd edge_point(const OrientedEdge& e, double alpha) const;
  Eigen::VectorXd edge_point(int edge_index, double alpha) const {
    return edge_point(edges_[edge_index], alpha);
  }

  friend Polytope build_polytope(const std::vector<Eigen::VectorXd>& points,
                                 const BuildLimits& limits);

 private:
  std::vector<Eigen::VectorXd> vertices_;
  int ambient_dim_ = 0;
  int affine_dim_ = 0;
  std::vector<Face> faces_;
  std::vector<OrientedEdge> edges_;
  std::vector<int> two_faces_;
};

// Computes the extreme points of conv(points) and the face lattice.
// Throws TooLarge when the desk-scale caps are exceeded and DegenerateInput
// when no point is left after deduplication.
Polytope build_polytope(const std::vector<Eigen::VectorXd>& points,
                        const BuildLimits& limits = BuildLimits{});

// Membership of x in the convex hull of an arbitrary finite point set,
// decided by LP (max-norm distance at most tol).
bool in_convex_hull(std::span<const Eigen::VectorXd> points, const Eigen::VectorXd& x,
                    double tol = 1e-7);

// Rank of the affine span; singular values below 1e-9 times the largest are
// treated as zero.
int affine_rank(std::span<const Eigen::VectorXd> points);

}  // namespace finadapt
