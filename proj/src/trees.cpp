#include "hurwitz/trees.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "hurwitz/perm.hpp"

namespace hurwitz {

int mark_count(MarkSet s) { return std::popcount(s); }

namespace {

bool compatible(MarkSet a, MarkSet b) {
  // Neither stored part contains mark 0, so a | b can never be everything.
  return (a & b) == 0 || (a & b) == a || (a & b) == b;
}

bool valid_split(int num_marks, MarkSet s) {
  const int k = mark_count(s);
  return (s & 1u) == 0 && (s & ~full_mark_set(num_marks)) == 0 && k >= 2 && k <= num_marks - 2;
}

}  // namespace

MarkedTree::MarkedTree(int num_marks, std::vector<MarkSet> splits)
    : num_marks_(num_marks), splits_(std::move(splits)) {
  if (num_marks < 3 || num_marks > kMaxMarks) {
    throw InputError("a stable tree needs between 3 and " + std::to_string(kMaxMarks) +
                     " marks, got " + std::to_string(num_marks));
  }
  for (auto& s : splits_) {
    s = canonical(s);
    if (!valid_split(num_marks, s)) throw InputError("split does not leave two marks on each side");
  }
  std::sort(splits_.begin(), splits_.end());
  if (std::adjacent_find(splits_.begin(), splits_.end()) != splits_.end()) {
    throw InputError("repeated split");
  }
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    for (std::size_t j = i + 1; j < splits_.size(); ++j) {
      if (!compatible(splits_[i], splits_[j])) throw InputError("incompatible splits");
    }
  }
}

MarkedTree MarkedTree::star(int num_marks) { return MarkedTree(num_marks, {}); }

MarkSet MarkedTree::canonical(MarkSet part) const {
  return (part & 1u) ? (full_mark_set(num_marks_) & ~part) : part;
}

int MarkedTree::edge_index(MarkSet canonical_split) const {
  auto it = std::lower_bound(splits_.begin(), splits_.end(), canonical_split);
  if (it == splits_.end() || *it != canonical_split) return -1;
  return static_cast<int>(it - splits_.begin());
}

std::vector<MarkedTree> enumerate_stable_trees(int num_marks) {
  if (num_marks < 3 || num_marks > kMaxMarks) {
    throw InputError("enumerate_stable_trees: need between 3 and " + std::to_string(kMaxMarks) +
                     " marks");
  }
  std::vector<MarkSet> candidates;
  for (MarkSet s = 0; s <= full_mark_set(num_marks); ++s) {
    if (valid_split(num_marks, s)) candidates.push_back(s);
  }
  std::vector<std::vector<MarkSet>> families;
  std::vector<MarkSet> current;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    families.push_back(current);
    for (std::size_t i = from; i < candidates.size(); ++i) {
      const MarkSet s = candidates[i];
      if (std::all_of(current.begin(), current.end(), [&](MarkSet t) { return compatible(s, t); })) {
        current.push_back(s);
        self(self, i + 1);
        current.pop_back();
      }
    }
  };
  extend(extend, 0);
  std::sort(families.begin(), families.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<MarkedTree> out;
  out.reserve(families.size());
  for (auto& f : families) out.emplace_back(num_marks, std::move(f));
  return out;
}

MarkedTree contract(const MarkedTree& tree, MarkSet split) {
  const int e = tree.edge_index(tree.canonical(split));
  if (e < 0) throw InputError("contract: split is not an edge of the tree");
  auto splits = tree.splits();
  splits.erase(splits.begin() + e);
  return MarkedTree(tree.num_marks(), std::move(splits));
}

Incidence::Incidence(const MarkedTree& tree) : tree_(tree) {
  const int n = tree.num_marks();
  const MarkSet all = full_mark_set(n);
  const int num_half = n + 2 * tree.num_edges();
  far_.resize(num_half);
  for (int b = 0; b < n; ++b) far_[b] = MarkSet{1} << b;
  for (int e = 0; e < tree.num_edges(); ++e) {
    far_[n + 2 * e] = tree.splits()[e];
    far_[n + 2 * e + 1] = all & ~tree.splits()[e];
  }

  // The other half-edges at base(h) are exactly those whose far sets are
  // maximal among far sets contained in the complement of far(h).
  vertex_of_.assign(num_half, -1);
  std::vector<std::vector<int>> found;
  for (int h = 0; h < num_half; ++h) {
    if (vertex_of_[h] >= 0) continue;
    const MarkSet near = all & ~far_[h];
    std::vector<int> members{h};
    for (int j = 0; j < num_half; ++j) {
      // The partner of h sees all of near from the other side.
      if (j == h || (far_[j] & ~near) != 0 || far_[j] == near) continue;
      bool maximal = true;
      for (int k = 0; k < num_half && maximal; ++k) {
        if (k == h || k == j || (far_[k] & ~near) != 0 || far_[k] == near) continue;
        if ((far_[j] & far_[k]) == far_[j] && far_[k] != far_[j]) maximal = false;
      }
      if (maximal) members.push_back(j);
    }
    std::sort(members.begin(), members.end());
    MarkSet cover = 0;
    for (int j : members) cover |= far_[j];
    if (cover != all || members.size() < 3) {
      throw DefectError("tree reconstruction produced an unstable vertex");
    }
    for (int j : members) vertex_of_[j] = static_cast<int>(found.size());
    found.push_back(std::move(members));
  }

  std::vector<int> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return found[a] < found[b]; });
  std::vector<int> rank(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  for (auto& v : vertex_of_) v = rank[v];
  vertices_.resize(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) vertices_[rank[i]] = std::move(found[i]);
  if (num_vertices() != tree.num_edges() + 1) {
    throw DefectError("tree reconstruction produced the wrong vertex count");
  }
}

int Incidence::edge_end(int e, bool toward_stored) const {
  return tree_.num_marks() + 2 * e + (toward_stored ? 0 : 1);
}

int Incidence::edge_of(int half_edge) const {
  if (is_leg(half_edge)) return -1;
  return (half_edge - tree_.num_marks()) / 2;
}

int Incidence::partner(int half_edge) const {
  if (is_leg(half_edge)) return -1;
  const int n = tree_.num_marks();
  return n + ((half_edge - n) ^ 1);
}

HalfEdgeName Incidence::name(int half_edge) const {
  HalfEdgeName out;
  if (is_leg(half_edge)) {
    out.kind = HalfEdgeName::Kind::Leg;
    out.mark = half_edge;
  } else {
    out.kind = HalfEdgeName::Kind::EdgeEnd;
    out.split = tree_.splits()[edge_of(half_edge)];
    out.toward = far_[half_edge];
  }
  return out;
}

std::vector<int> Incidence::component(int half_edge) const {
  std::vector<int> out{half_edge};
  if (is_leg(half_edge)) return out;
  std::vector<bool> visited(vertices_.size(), false);
  visited[vertex_of(half_edge)] = true;
  std::vector<int> stack{vertex_of(partner(half_edge))};
  visited[stack.back()] = true;
  while (!stack.empty()) {
    const int w = stack.back();
    stack.pop_back();
    for (int k : vertices_[w]) {
      out.push_back(k);
      if (is_leg(k)) continue;
      const int next = vertex_of(partner(k));
      if (!visited[next]) {
        visited[next] = true;
        stack.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string split_label(MarkSet split, const std::vector<std::string>& marks) {
  std::string out;
  for (std::size_t b = 0; b < marks.size(); ++b) {
    if (split & (MarkSet{1} << b)) {
      if (!out.empty()) out += ",";
      out += marks[b];
    }
  }
  return out;
}

std::string Incidence::label(int half_edge, const std::vector<std::string>& marks) const {
  if (is_leg(half_edge)) return marks[half_edge];
  return "h[" + split_label(far_[half_edge], marks) + "]";
}

nlohmann::json tree_to_json(const MarkedTree& tree, const std::vector<std::string>& marks) {
  nlohmann::json splits = nlohmann::json::array();
  for (MarkSet s : tree.splits()) {
    nlohmann::json part = nlohmann::json::array();
    for (int b = 0; b < tree.num_marks(); ++b) {
      if (s & (MarkSet{1} << b)) part.push_back(marks[b]);
    }
    splits.push_back(std::move(part));
  }
  return {{"marks", marks}, {"splits", std::move(splits)}};
}

std::string tree_key(const MarkedTree& tree, const std::vector<std::string>& marks) {
  if (tree.num_edges() == 0) return "*";
  std::string out;
  for (MarkSet s : tree.splits()) {
    if (!out.empty()) out += "|";
    out += split_label(s, marks);
  }
  return out;
}

std::string tree_to_dot(const MarkedTree& tree, const std::vector<std::string>& marks) {
  const Incidence inc(tree);
  std::ostringstream out;
  out << "graph tree {\n  node [shape=circle, label=\"\", width=0.25];\n";
  for (int v = 0; v < inc.num_vertices(); ++v) out << "  v" << v << ";\n";
  for (int e = 0; e < tree.num_edges(); ++e) {
    out << "  v" << inc.vertex_of(inc.edge_end(e, true)) << " -- v"
        << inc.vertex_of(inc.edge_end(e, false)) << ";\n";
  }
  for (int b = 0; b < tree.num_marks(); ++b) {
    out << "  leg" << b << " [shape=plaintext, label=\"" << marks[b] << "\"];\n";
    out << "  v" << inc.vertex_of(b) << " -- leg" << b << " [dir=forward];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hurwitz
