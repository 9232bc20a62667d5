#include "hurwitz/graph_canon.hpp"

#include <algorithm>
#include <array>

namespace hurwitz {

namespace {

template <typename Key>
std::vector<int> rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[i]) -
                              distinct.begin());
  }
  return out;
}

int count_colours(const std::vector<int>& colours) {
  return colours.empty() ? 0 : *std::max_element(colours.begin(), colours.end()) + 1;
}

class Search {
 public:
  explicit Search(const LabelledGraph& g) : g_(g), adjacency_(g.num_vertices()) {
    for (const auto& e : g.edges) {
      adjacency_[e.u].push_back({e.label, e.v});
      adjacency_[e.v].push_back({e.label, e.u});
    }
  }

  Canonical run() {
    descend(refine(rank_keys(g_.vertex_keys)));
    return std::move(best_);
  }

 private:
  std::vector<int> refine(std::vector<int> colours) const {
    int count = count_colours(colours);
    while (true) {
      std::vector<std::vector<long>> signatures(colours.size());
      for (std::size_t v = 0; v < colours.size(); ++v) {
        std::vector<std::pair<long, long>> around;
        for (const auto& [label, w] : adjacency_[v]) around.push_back({label, colours[w]});
        std::sort(around.begin(), around.end());
        auto& sig = signatures[v];
        sig.push_back(colours[v]);
        for (const auto& [label, c] : around) {
          sig.push_back(label);
          sig.push_back(c);
        }
      }
      colours = rank_keys(signatures);
      const int next = count_colours(colours);
      if (next == count) return colours;
      count = next;
    }
  }

  std::vector<long> certificate(const std::vector<int>& position) const {
    const int n = g_.num_vertices();
    std::vector<int> at(n);
    for (int v = 0; v < n; ++v) at[position[v]] = v;
    std::vector<long> out{n};
    for (int p = 0; p < n; ++p) {
      const auto& key = g_.vertex_keys[at[p]];
      out.push_back(static_cast<long>(key.size()));
      out.insert(out.end(), key.begin(), key.end());
    }
    std::vector<std::array<long, 3>> edges;
    for (const auto& e : g_.edges) {
      const long a = position[e.u], b = position[e.v];
      edges.push_back({std::min(a, b), std::max(a, b), e.label});
    }
    std::sort(edges.begin(), edges.end());
    out.push_back(static_cast<long>(edges.size()));
    for (const auto& e : edges) out.insert(out.end(), e.begin(), e.end());
    return out;
  }

  void descend(const std::vector<int>& colours) {
    const int n = static_cast<int>(colours.size());
    if (count_colours(colours) == n) {
      auto cert = certificate(colours);
      if (best_.labellings.empty() || cert < best_.certificate) {
        best_.certificate = std::move(cert);
        best_.labellings = {colours};
      } else if (cert == best_.certificate) {
        best_.labellings.push_back(colours);
      }
      return;
    }
    std::vector<int> size(n, 0);
    for (int c : colours) ++size[c];
    int target = 0;
    while (size[target] < 2) ++target;
    for (int v = 0; v < n; ++v) {
      if (colours[v] != target) continue;
      std::vector<int> split(n);
      for (int w = 0; w < n; ++w) split[w] = 2 * colours[w] + (w == v ? 0 : 1);
      descend(refine(rank_keys(split)));
    }
  }

  const LabelledGraph& g_;
  std::vector<std::vector<std::pair<long, int>>> adjacency_;
  Canonical best_;
};

}  // namespace

Canonical canonicalize(const LabelledGraph& g) { return Search(g).run(); }

}  // namespace hurwitz
