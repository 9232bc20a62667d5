#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/perm.hpp"
#include "hurwitz/portrait.hpp"
#include "hurwitz/trees.hpp"

namespace hurwitz {

/// A tree together with its reconstructed incidence, shared between all
/// decorations of that tree.
struct TreeShape {
  explicit TreeShape(const MarkedTree& t) : tree(t), incidence(t) {}

  MarkedTree tree;
  Incidence incidence;
};

using ShapePtr = std::shared_ptr<const TreeShape>;
using PortraitPtr = std::shared_ptr<const Portrait>;

inline ShapePtr make_shape(const MarkedTree& tree) { return std::make_shared<const TreeShape>(tree); }

enum class Direction { Anticlockwise, Clockwise };

/// A P-decorated tree (ord, mon, cyc).
///
/// `ord` maps each half-edge to the next one anticlockwise around its base
/// vertex. `mon` assigns a permutation to every half-edge. `cyc` stores, for
/// each source mark a, the minimal point of the labelled cycle of the leg
/// permutation mon(phi(a)); the cycle itself is recovered from mon.
class Decoration {
 public:
  Decoration(PortraitPtr portrait, ShapePtr shape, std::vector<int> ord, std::vector<Perm> mon,
             std::vector<int> cyc);

  /// Convenience constructor: ord given as cycles of half-edge ids, cyc as
  /// any point of each labelled cycle.
  static Decoration from_cycles(PortraitPtr portrait, const MarkedTree& tree,
                                const std::vector<std::vector<int>>& ord_cycles,
                                std::vector<Perm> mon, const std::vector<int>& cyc_points);

  const Portrait& portrait() const { return *portrait_; }
  const PortraitPtr& portrait_ptr() const { return portrait_; }
  const ShapePtr& shape() const { return shape_; }
  const MarkedTree& tree() const { return shape_->tree; }
  const Incidence& incidence() const { return shape_->incidence; }
  int degree() const { return portrait_->degree; }

  const std::vector<int>& ord() const { return ord_; }
  const std::vector<Perm>& mon() const { return mon_; }
  const Perm& mon(int half_edge) const { return mon_[half_edge]; }
  const std::vector<int>& cyc() const { return cyc_; }
  /// Leg half-edge carrying the label of source mark a.
  int cyc_leg(int a) const { return portrait_->source_marks[a].maps_to; }
  Cycle cyc_cycle(int a) const { return mon_[cyc_leg(a)].cycle_of(cyc_[a]); }

  /// ord-cycle of a vertex, rotated to start at its smallest half-edge id.
  std::vector<int> ord_cycle(int vertex) const;

  bool operator==(const Decoration& other) const;

 private:
  PortraitPtr portrait_;
  ShapePtr shape_;
  std::vector<int> ord_;
  std::vector<Perm> mon_;
  std::vector<int> cyc_;
};

struct ConditionViolation {
  /// structure, i, ii, iii, iv, v, injective
  std::string condition;
  std::string where;
};

/// Every violated decoration condition with its witness. Empty iff valid.
std::vector<ConditionViolation> check_conditions(const Decoration& d);

/// Every P-decoration of the tree, each once, in a deterministic order.
std::vector<Decoration> enumerate_decorations(const PortraitPtr& portrait, const MarkedTree& tree);

/// Edge contraction; ord-cycles of the two ends are spliced.
Decoration contract_decoration(const Decoration& d, MarkSet split);

Decoration global_conjugate(const Decoration& d, const Perm& tau);

/// Shifts `half_edge` one step around its base vertex; the subtree beyond it
/// picks up a conjugation by the permutation it moves past (anticlockwise)
/// or that permutation's inverse (clockwise).
Decoration braid_move(const Decoration& d, int half_edge, Direction direction);

/// Deterministic, injective byte encoding. Splits, then ord one vertex at a
/// time, then mon one-line images per half-edge, then cyc per source mark.
std::string encode(const Decoration& d);

/// Lowercase hex of a byte string.
std::string to_hex(const std::string& bytes);

nlohmann::json decoration_to_json(const Decoration& d);
/// Diagram in the style of the usual decorated-tree pictures: circles for
/// vertices, permutations in cycle notation on each half-edge, a_i labels on
/// the labelled cycles.
std::string decoration_to_dot(const Decoration& d);

}  // namespace hurwitz
