#pragma once

#include <vector>

namespace hurwitz {

/// Undirected multigraph with coloured vertices and labelled edges. Loops and
/// parallel edges are allowed. Vertex colours are arbitrary integer vectors
/// compared lexicographically.
struct LabelledGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    long label = 0;
  };

  std::vector<std::vector<long>> vertex_keys;
  std::vector<Edge> edges;

  int num_vertices() const { return static_cast<int>(vertex_keys.size()); }
};

struct Canonical {
  /// Equal for two graphs iff they are isomorphic.
  std::vector<long> certificate;
  /// Every labelling attaining the certificate; labellings[k][v] is the new
  /// position of vertex v. Closed under automorphisms.
  std::vector<std::vector<int>> labellings;
};

/// Individualization-refinement over the full search tree (no pruning),
/// keeping the lexicographically smallest certificate.
Canonical canonicalize(const LabelledGraph& g);

}  // namespace hurwitz
