#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "finadapt/geometry.hpp"

namespace finadapt {

// Assignment of every vertex to a nonempty subset of the k pieces, stored as
// bitmasks (bit i set = vertex belongs to piece i).
struct VertexCover {
  int k = 2;
  std::vector<std::uint8_t> member_mask;  // one mask per polytope vertex

  bool contains(int vertex, int piece) const {
    return (member_mask[vertex] >> piece) & 1u;
  }
};

// Edge labels as nonempty subsets of the pieces, again bitmasks, parallel to
// the polytope's edge list.
struct EdgeLabeling {
  std::vector<std::uint8_t> label_mask;

  int size_of(int edge) const { return __builtin_popcount(label_mask[edge]); }
  bool has(int edge, int piece) const { return (label_mask[edge] >> piece) & 1u; }
};

// Nice 1-skeleton cover: vertex cover, edge labels, and interpolation points
// along edges. alpha_t applies to 2-labeled edges; alpha_u <= alpha_v to
// 3-labeled ones. Entries of unlabeled kinds are NaN.
struct SkeletonCover {
  int k = 2;
  VertexCover cover;
  EdgeLabeling labeling;
  std::vector<double> alpha_t;
  std::vector<double> alpha_u;
  std::vector<double> alpha_v;
};

// Streams every assignment of vertices to nonempty piece subsets; with
// symmetry pruning it yields one representative per orbit under jointly
// permuting the piece indices.
class VertexCoverEnumerator {
 public:
  VertexCoverEnumerator(const Polytope& polytope, int k, bool symmetry_pruning = true);

  std::optional<VertexCover> next();

  // (2^k - 1)^num_vertices.
  static long long raw_count(int num_vertices, int k);

 private:
  bool canonical(const std::vector<std::uint8_t>& masks) const;

  int k_;
  int num_vertices_;
  bool pruning_;
  bool done_ = false;
  std::vector<std::uint8_t> current_;  // odometer over 1..(2^k - 1)
};

// Valid labels for one edge under conditions (a), (b), (c): a singleton {i}
// needs both endpoints in V_i; a pair {i,j} needs one endpoint in V_i and the
// other in V_j; the full label {1,2,3} needs the endpoints in two distinct
// pieces and a third piece containing neither endpoint.
std::vector<std::uint8_t> valid_edge_labels(const VertexCover& vc, int tail, int head);

enum class LabelingMode {
  All,     // every labeling satisfying (a)(b)(c)
  Solver,  // per edge, a valid singleton (the smallest) supersedes the rest
};

// Streams the labelings compatible with the cover; empty stream when some
// edge admits no label. k must be 3 (k = 2 labels are forced by the cover).
class LabelingEnumerator {
 public:
  LabelingEnumerator(const Polytope& polytope, const VertexCover& vc,
                     LabelingMode mode = LabelingMode::All);

  std::optional<EdgeLabeling> next();

 private:
  std::vector<std::vector<std::uint8_t>> options_;  // per edge
  std::vector<std::size_t> pos_;
  bool done_ = false;
  bool first_ = true;
};

// Forced k = 2 labeling: crossing edges (endpoints sharing no piece) get the
// pair label {1,2}; the rest keep the smallest shared piece as a singleton.
EdgeLabeling forced_k2_labeling(const Polytope& polytope, const VertexCover& vc);

// The point set whose convex hull forms piece i of the skeleton cover:
// the piece's vertices plus the edge interpolation points prescribed by the
// labeling.
std::vector<Eigen::VectorXd> build_vbar(const Polytope& polytope, const SkeletonCover& sc,
                                        int piece);

struct FPlacements {
  double t = 0.5;
  double u = 1.0 / 3.0;
  double v = 2.0 / 3.0;
};

// Two-dimensional faces on whose boundary the three hull pieces pairwise
// intersect. Placement-independent for relative-interior placements with
// u != v; the defaults realize that. Returns indices into
// polytope.two_face_indices().
std::vector<int> compute_F(const Polytope& polytope, const VertexCover& vc,
                           const EdgeLabeling& labeling, const FPlacements& placements = {});

}  // namespace finadapt
