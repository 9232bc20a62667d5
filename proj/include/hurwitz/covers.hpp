#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/decorations.hpp"
#include "hurwitz/graph_canon.hpp"
#include "hurwitz/strata.hpp"

namespace hurwitz {

/// A vertex (v, O) of the source graph: tree vertex v and an orbit O of the
/// group generated by the permutations at v.
struct SourceVertex {
  int tree_vertex = 0;
  std::vector<int> orbit;
  int weight = 0;
};

/// A cycle of mon(h) for some tree half-edge h. Legs carry the source mark
/// that labels them; edge ends carry the index of their partner.
struct SourceHalfEdge {
  int vertex = 0;
  int tree_half_edge = 0;
  Cycle cycle;
  int label = -1;
  int partner = -1;
};

struct SourceEdge {
  /// Half-edge over the tree end pointing toward the stored split.
  int first = 0;
  int second = 0;
  int tree_edge = 0;
  int expansion = 1;
};

struct SourceGraph {
  std::vector<SourceVertex> vertices;
  std::vector<SourceHalfEdge> half_edges;
  std::vector<SourceEdge> edges;
  /// Half-edge index of the leg of each source mark.
  std::vector<int> legs;

  int betti_number() const;
  int total_weight() const;
  int genus() const { return betti_number() + total_weight(); }
};

/// Builds the source graph of a decoration. Throws DefectError when a local
/// Riemann-Hurwitz count is not a nonnegative integer.
SourceGraph source_graph(const Decoration& d);

/// A vertex-weighted graph with legs labelled by source marks. Edges may be
/// loops or parallel. When produced by stabilization, `paths` lists for
/// every edge the source-graph edges it is made of, in path order.
struct StableGraph {
  std::vector<int> weights;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> legs;
  std::vector<std::vector<int>> paths;

  int num_vertices() const { return static_cast<int>(weights.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int valence(int v) const;
  int genus() const;
  bool is_stable() const;
};

/// The source graph as a weighted graph, each edge its own path.
StableGraph underlying_graph(const SourceGraph& g);

/// Contracts weight-0 vertices of valence one and absorbs weight-0 vertices
/// of valence two into the adjacent edge or leg.
StableGraph stabilize(const StableGraph& g);
StableGraph stabilize(const SourceGraph& g);

/// Contraction of one edge; a loop raises the weight of its vertex.
StableGraph contract_edge(const StableGraph& g, int edge);

/// Canonical labelling of a stable graph: vertices keyed by weight and leg
/// labels, edges unlabelled.
Canonical canonicalize(const StableGraph& g);

/// The combinatorial admissible cover induced by a decoration.
struct CombCover {
  Decoration decoration;
  SourceGraph source;

  const MarkedTree& target() const { return decoration.tree(); }
  int leg_expansion(int source_mark) const;
};

/// Builds the cover and checks harmonicity; a failure is a DefectError.
CombCover comb_cover(const Decoration& d);
inline CombCover comb_cover(const HurwitzClass& c) { return comb_cover(c.representative); }

/// Human-readable description of every harmonicity failure. Edge ends are
/// checked through the graph data, legs through the leg permutations.
std::vector<std::string> harmonicity_violations(const CombCover& cover);

/// Least common multiple of the expansion factors over tree edge e.
int expansion_lcm(const CombCover& cover, int tree_edge);
std::vector<int> expansion_lcms(const CombCover& cover);

MarkedTree target_stratum(const CombCover& cover);
StableGraph source_stratum(const CombCover& cover);

/// Isomorphism invariant of a cover over its fixed target tree.
std::vector<long> cover_certificate(const CombCover& cover);
bool cover_isomorphic(const CombCover& a, const CombCover& b);

/// Index of each cover's isomorphism class, numbered by first appearance.
std::vector<std::size_t> cover_classes(const std::vector<CombCover>& covers);

/// Covers of every class, in class order.
std::vector<CombCover> covers_of(const Stratification& s);

/// Pairs of classes (first < second) lying in different components whose
/// covers are isomorphic.
std::vector<std::pair<std::size_t, std::size_t>> cross_component_cover_pairs(
    const Stratification& s, const std::vector<CombCover>& covers);

nlohmann::json source_graph_to_json(const SourceGraph& g, const Portrait& p);
nlohmann::json stable_graph_to_json(const StableGraph& g, const Portrait& p);
nlohmann::json cover_to_json(const CombCover& cover);
/// G drawn above T with dashed map edges and expansion factors as labels.
std::string cover_to_dot(const CombCover& cover);

}  // namespace hurwitz
