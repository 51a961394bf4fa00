#include "finadapt/covers.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "finadapt/lp.hpp"

namespace finadapt {

namespace {

// All permutations of {0,..,k-1} applied to a bitmask.
std::uint8_t permute_mask(std::uint8_t mask, const std::vector<int>& perm) {
  std::uint8_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if ((mask >> i) & 1u) out |= static_cast<std::uint8_t>(1u << perm[i]);
  }
  return out;
}

}  // namespace

VertexCoverEnumerator::VertexCoverEnumerator(const Polytope& polytope, int k,
                                             bool symmetry_pruning)
    : k_(k), num_vertices_(polytope.num_vertices()), pruning_(symmetry_pruning) {
  if (k != 2 && k != 3) throw OutOfRange("vertex cover enumeration supports k = 2 or 3");
  current_.assign(num_vertices_, 1);  // all vertices in piece 1
}

long long VertexCoverEnumerator::raw_count(int num_vertices, int k) {
  long long total = 1;
  const long long per_vertex = (1 << k) - 1;
  for (int i = 0; i < num_vertices; ++i) total *= per_vertex;
  return total;
}

bool VertexCoverEnumerator::canonical(const std::vector<std::uint8_t>& masks) const {
  std::vector<int> perm(k_);
  for (int i = 0; i < k_; ++i) perm[i] = i;
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (int v = 0; v < num_vertices_; ++v) {
      const std::uint8_t mapped = permute_mask(masks[v], perm);
      if (mapped < masks[v]) return false;  // a smaller relabeling exists
      if (mapped > masks[v]) break;
    }
  }
  return true;
}

std::optional<VertexCover> VertexCoverEnumerator::next() {
  const std::uint8_t top = static_cast<std::uint8_t>((1 << k_) - 1);
  while (!done_) {
    std::vector<std::uint8_t> candidate = current_;
    // Advance the odometer.
    int pos = num_vertices_ - 1;
    while (pos >= 0) {
      if (current_[pos] < top) {
        ++current_[pos];
        break;
      }
      current_[pos] = 1;
      --pos;
    }
    if (pos < 0) done_ = true;
    if (!pruning_ || canonical(candidate)) {
      return VertexCover{k_, std::move(candidate)};
    }
  }
  return std::nullopt;
}

std::vector<std::uint8_t> valid_edge_labels(const VertexCover& vc, int tail, int head) {
  const std::uint8_t tm = vc.member_mask[tail];
  const std::uint8_t hm = vc.member_mask[head];
  std::vector<std::uint8_t> labels;
  const int k = vc.k;
  // Singletons.
  for (int i = 0; i < k; ++i) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << i);
    if ((tm & bit) && (hm & bit)) labels.push_back(bit);
  }
  // Pairs.
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::uint8_t bi = static_cast<std::uint8_t>(1u << i);
      const std::uint8_t bj = static_cast<std::uint8_t>(1u << j);
      if (((tm & bi) && (hm & bj)) || ((tm & bj) && (hm & bi)))
        labels.push_back(static_cast<std::uint8_t>(bi | bj));
    }
  }
  // Full label {1,2,3}: endpoints in two distinct pieces and one piece free
  // of both endpoints.
  if (k == 3) {
    bool ok = false;
    for (int t = 0; t < 3 && !ok; ++t) {
      for (int h = 0; h < 3 && !ok; ++h) {
        if (t == h) continue;
        const int l = 3 - t - h;
        const bool tail_in = (tm >> t) & 1u;
        const bool head_in = (hm >> h) & 1u;
        const bool free_of_both = !((tm >> l) & 1u) && !((hm >> l) & 1u);
        ok = tail_in && head_in && free_of_both;
      }
    }
    if (ok) labels.push_back(0b111);
  }
  return labels;
}

LabelingEnumerator::LabelingEnumerator(const Polytope& polytope, const VertexCover& vc,
                                       LabelingMode mode) {
  if (vc.k != 3) throw OutOfRange("labeling enumeration applies to k = 3");
  const auto& edges = polytope.edges();
  options_.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    options_[e] = valid_edge_labels(vc, edges[e].tail, edges[e].head);
    if (mode == LabelingMode::Solver) {
      // A valid singleton contributes no interpolation points and no rows, so
      // it weakly dominates every other label on the same edge: keep only the
      // smallest one.
      for (std::uint8_t label : options_[e]) {
        if (__builtin_popcount(label) == 1) {
          options_[e] = {label};
          break;
        }
      }
    }
    if (options_[e].empty()) {
      done_ = true;
      return;
    }
  }
  pos_.assign(edges.size(), 0);
}

std::optional<EdgeLabeling> LabelingEnumerator::next() {
  if (done_) return std::nullopt;
  if (!first_) {
    // Advance.
    int e = static_cast<int>(options_.size()) - 1;
    while (e >= 0) {
      if (++pos_[e] < options_[e].size()) break;
      pos_[e] = 0;
      --e;
    }
    if (e < 0) {
      done_ = true;
      return std::nullopt;
    }
  }
  first_ = false;
  EdgeLabeling lab;
  lab.label_mask.resize(options_.size());
  for (std::size_t e = 0; e < options_.size(); ++e) lab.label_mask[e] = options_[e][pos_[e]];
  return lab;
}

EdgeLabeling forced_k2_labeling(const Polytope& polytope, const VertexCover& vc) {
  EdgeLabeling lab;
  lab.label_mask.resize(polytope.num_edges());
  for (int e = 0; e < polytope.num_edges(); ++e) {
    const auto& edge = polytope.edges()[e];
    const std::uint8_t shared =
        vc.member_mask[edge.tail] & vc.member_mask[edge.head];
    if (shared != 0) {
      lab.label_mask[e] = static_cast<std::uint8_t>(shared & (~shared + 1));  // lowest bit
    } else {
      lab.label_mask[e] = 0b11;
    }
  }
  return lab;
}

std::vector<Eigen::VectorXd> build_vbar(const Polytope& polytope, const SkeletonCover& sc,
                                        int piece) {
  std::vector<Eigen::VectorXd> points;
  for (int v = 0; v < polytope.num_vertices(); ++v) {
    if (sc.cover.contains(v, piece)) points.push_back(polytope.vertex(v));
  }
  for (int e = 0; e < polytope.num_edges(); ++e) {
    const int size = sc.labeling.size_of(e);
    const auto& edge = polytope.edges()[e];
    if (size == 2 && sc.labeling.has(e, piece)) {
      points.push_back(polytope.edge_point(edge, sc.alpha_t[e]));
    } else if (size == 3) {
      const bool tail_in = sc.cover.contains(edge.tail, piece);
      const bool head_in = sc.cover.contains(edge.head, piece);
      if (!tail_in && !head_in) {
        points.push_back(polytope.edge_point(edge, sc.alpha_u[e]));
        points.push_back(polytope.edge_point(edge, sc.alpha_v[e]));
      } else {
        if (tail_in) points.push_back(polytope.edge_point(edge, sc.alpha_u[e]));
        if (head_in) points.push_back(polytope.edge_point(edge, sc.alpha_v[e]));
      }
    }
  }
  return points;
}

namespace {

// Is there a point of edge [p, q] lying in conv(set_a) and conv(set_b)?
// Feasibility LP: the point is simultaneously a convex combination of the
// edge endpoints, of set_a, and of set_b.
bool edge_meets_both_hulls(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                           const std::vector<Eigen::VectorXd>& set_a,
                           const std::vector<Eigen::VectorXd>& set_b) {
  if (set_a.empty() || set_b.empty()) return false;
  const int dim = static_cast<int>(p.size());
  const int na = static_cast<int>(set_a.size());
  const int nb = static_cast<int>(set_b.size());
  LinearProgram lp(1 + na + nb);
  lp.lower_bounds.setZero();
  lp.upper_bounds[0] = 1.0;  // edge parameter
  for (int d = 0; d < dim; ++d) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(1 + na + nb);
    row[0] = q[d] - p[d];
    for (int i = 0; i < na; ++i) row[1 + i] = -set_a[i][d];
    lp.add_row(row, RowSense::Equal, -p[d]);
    Eigen::VectorXd row2 = Eigen::VectorXd::Zero(1 + na + nb);
    row2[0] = q[d] - p[d];
    for (int i = 0; i < nb; ++i) row2[1 + na + i] = -set_b[i][d];
    lp.add_row(row2, RowSense::Equal, -p[d]);
  }
  Eigen::VectorXd sum_a = Eigen::VectorXd::Zero(1 + na + nb);
  sum_a.segment(1, na).setOnes();
  lp.add_row(sum_a, RowSense::Equal, 1.0);
  Eigen::VectorXd sum_b = Eigen::VectorXd::Zero(1 + na + nb);
  sum_b.segment(1 + na, nb).setOnes();
  lp.add_row(sum_b, RowSense::Equal, 1.0);
  return solve_lp(lp).status == LpStatus::Optimal;
}

}  // namespace

std::vector<int> compute_F(const Polytope& polytope, const VertexCover& vc,
                           const EdgeLabeling& labeling, const FPlacements& placements) {
  if (vc.k != 3) return {};
  SkeletonCover sc;
  sc.k = 3;
  sc.cover = vc;
  sc.labeling = labeling;
  sc.alpha_t.assign(polytope.num_edges(), placements.t);
  sc.alpha_u.assign(polytope.num_edges(), placements.u);
  sc.alpha_v.assign(polytope.num_edges(), placements.v);

  std::array<std::vector<Eigen::VectorXd>, 3> vbar;
  for (int i = 0; i < 3; ++i) {
    vbar[i] = build_vbar(polytope, sc, i);
    if (vbar[i].empty()) return {};
  }

  std::vector<int> result;
  for (std::size_t fpos = 0; fpos < polytope.two_face_indices().size(); ++fpos) {
    const Face& face = polytope.faces()[polytope.two_face_indices()[fpos]];
    bool all_pairs = true;
    for (int i = 0; i < 3 && all_pairs; ++i) {
      for (int j = i + 1; j < 3 && all_pairs; ++j) {
        bool pair_meets = false;
        for (const auto& edge : polytope.edges()) {
          const bool tail_in = std::binary_search(face.vertex_indices.begin(),
                                                  face.vertex_indices.end(), edge.tail);
          const bool head_in = std::binary_search(face.vertex_indices.begin(),
                                                  face.vertex_indices.end(), edge.head);
          if (!tail_in || !head_in) continue;
          if (edge_meets_both_hulls(polytope.vertex(edge.tail), polytope.vertex(edge.head),
                                    vbar[i], vbar[j])) {
            pair_meets = true;
            break;
          }
        }
        all_pairs = pair_meets;
      }
    }
    if (all_pairs) result.push_back(static_cast<int>(fpos));
  }
  return result;
}

}  // namespace finadapt
