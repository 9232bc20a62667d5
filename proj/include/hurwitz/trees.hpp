#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hurwitz {

/// Subset of the target marks {0, ..., n-1} as a bitmask.
using MarkSet = std::uint32_t;

inline constexpr int kMaxMarks = 20;

inline MarkSet full_mark_set(int num_marks) { return (MarkSet{1} << num_marks) - 1; }
int mark_count(MarkSet s);

/// A B-marked stable tree, stored as its set of edge splits.
///
/// Each edge separates the marks into two parts of size at least two; the
/// split is stored as the part that does not contain mark 0. Legs are
/// labelled, so the split set determines the tree up to unique isomorphism.
class MarkedTree {
 public:
  MarkedTree() = default;
  /// Throws InputError unless the splits form a stable tree on num_marks marks.
  MarkedTree(int num_marks, std::vector<MarkSet> splits);

  /// The tree with a single vertex and no edges.
  static MarkedTree star(int num_marks);

  int num_marks() const { return num_marks_; }
  int num_edges() const { return static_cast<int>(splits_.size()); }
  /// Sorted ascending.
  const std::vector<MarkSet>& splits() const { return splits_; }
  /// Position of a canonical split in splits(), or -1.
  int edge_index(MarkSet canonical_split) const;
  /// The stored side of the bipartition containing `part`.
  MarkSet canonical(MarkSet part) const;

  auto operator<=>(const MarkedTree&) const = default;

 private:
  int num_marks_ = 0;
  std::vector<MarkSet> splits_;
};

/// Every B-marked stable tree once, sorted by edge count then splits.
std::vector<MarkedTree> enumerate_stable_trees(int num_marks);

/// The tree with one edge removed. Throws InputError if `split` is not an edge.
MarkedTree contract(const MarkedTree& tree, MarkSet split);

/// Half-edges are numbered: legs 0..n-1 in mark order, then for the edge at
/// splits()[e] the end pointing toward the stored part is n+2e and the end
/// pointing toward its complement is n+2e+1.
struct HalfEdgeName {
  enum class Kind { Leg, EdgeEnd };
  Kind kind = Kind::Leg;
  int mark = -1;       // legs
  MarkSet split = 0;   // edge ends: canonical split
  MarkSet toward = 0;  // edge ends: the part of the split the half-edge points into

  auto operator<=>(const HalfEdgeName&) const = default;
};

/// Vertex/half-edge incidence reconstructed from a MarkedTree.
class Incidence {
 public:
  explicit Incidence(const MarkedTree& tree);

  const MarkedTree& tree() const { return tree_; }
  int num_half_edges() const { return static_cast<int>(vertex_of_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }

  int leg(int mark) const { return mark; }
  /// Half-edge of edge `e` pointing toward splits()[e] (or its complement).
  int edge_end(int e, bool toward_stored) const;
  int edge_of(int half_edge) const;  // -1 for legs
  bool is_leg(int half_edge) const { return half_edge < tree_.num_marks(); }
  int partner(int half_edge) const;  // -1 for legs

  HalfEdgeName name(int half_edge) const;
  /// Marks in the component beyond the half-edge.
  MarkSet far_set(int half_edge) const { return far_[half_edge]; }

  int vertex_of(int half_edge) const { return vertex_of_[half_edge]; }
  /// Sorted half-edges incident with a vertex. Vertices are ordered
  /// lexicographically by these lists.
  const std::vector<int>& vertex(int v) const { return vertices_[v]; }
  const std::vector<std::vector<int>>& vertices() const { return vertices_; }

  /// Half-edges in the component of T minus base(h) that contains h,
  /// including h itself.
  std::vector<int> component(int half_edge) const;

  /// Human-readable half-edge name using the given mark labels.
  std::string label(int half_edge, const std::vector<std::string>& marks) const;

 private:
  MarkedTree tree_;
  std::vector<MarkSet> far_;
  std::vector<int> vertex_of_;
  std::vector<std::vector<int>> vertices_;
};

/// JSON export {marks: [...], splits: [[...], ...]} in canonical order.
nlohmann::json tree_to_json(const MarkedTree& tree, const std::vector<std::string>& marks);
/// "b1,b2|b3,b4"-style key listing each split's marks; "*" for the star tree.
std::string tree_key(const MarkedTree& tree, const std::vector<std::string>& marks);
std::string split_label(MarkSet split, const std::vector<std::string>& marks);
/// DOT export: vertices as unlabelled circles, legs as arrows to labelled points.
std::string tree_to_dot(const MarkedTree& tree, const std::vector<std::string>& marks);

}  // namespace hurwitz
