#include "hurwitz/tropical.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>

namespace hurwitz {

ExtRational ExtRational::infinity() {
  ExtRational out;
  out.infinite_ = true;
  return out;
}

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t out = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw InputError("not a rational number: '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

ExtRational ExtRational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "infinity") return infinity();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExtRational(parse_integer(text, text));
  const auto num = parse_integer(text.substr(0, slash), text);
  const auto den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return ExtRational(Rational(num, den));
}

const ExtRational::Rational& ExtRational::value() const {
  if (infinite_) throw InputError("infinite value has no finite representative");
  return value_;
}

ExtRational ExtRational::operator+(const ExtRational& other) const {
  if (infinite_ || other.infinite_) return infinity();
  return ExtRational(value_ + other.value_);
}

ExtRational ExtRational::operator*(const ExtRational& other) const {
  if (infinite_ || other.infinite_) {
    const ExtRational& finite = infinite_ ? other : *this;
    if (!finite.infinite_ && finite.value_.numerator() <= 0) {
      throw InputError("product of infinity with a nonpositive value");
    }
    return infinity();
  }
  return ExtRational(value_ * other.value_);
}

ExtRational ExtRational::operator/(const ExtRational& other) const {
  if (other.infinite_ || other.value_.numerator() <= 0) throw InputError("division by a non-positive or infinite value");
  if (infinite_) return infinity();
  return ExtRational(value_ / other.value_);
}

bool ExtRational::operator==(const ExtRational& other) const {
  if (infinite_ || other.infinite_) return infinite_ == other.infinite_;
  return value_ == other.value_;
}

std::strong_ordering ExtRational::operator<=>(const ExtRational& other) const {
  if (infinite_ || other.infinite_) return infinite_ <=> other.infinite_;
  if (value_ < other.value_) return std::strong_ordering::less;
  if (other.value_ < value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtRational::to_string() const {
  if (infinite_) return "inf";
  if (value_.denominator() == 1) return std::to_string(value_.numerator());
  return std::to_string(value_.numerator()) + "/" + std::to_string(value_.denominator());
}

const ConeFace& ExtendedConeComplex::face(std::size_t cone, int edge) const {
  for (const auto& f : cones.at(cone).faces) {
    if (f.edge == edge) return f;
  }
  throw InputError("cone " + cones.at(cone).id + " has no face along coordinate " + std::to_string(edge));
}

void ExtendedConeComplex::compute_components() {
  std::vector<std::size_t> parent(cones.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < cones.size(); ++c) {
    for (const auto& f : cones[c].faces) parent[find(c)] = find(f.cone);
  }
  std::map<std::size_t, std::size_t> label;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    cones[c].component = label.emplace(find(c), label.size()).first->second;
  }
  num_components = label.size();
}

namespace {

std::vector<std::string> split_names(const MarkedTree& tree, const Portrait& p) {
  std::vector<std::string> out;
  for (MarkSet s : tree.splits()) out.push_back(split_label(s, p.target_marks));
  return out;
}

std::vector<int> coordinate_map(const MarkedTree& from, const MarkedTree& face) {
  std::vector<int> out;
  for (MarkSet s : face.splits()) out.push_back(from.edge_index(s));
  return out;
}

std::string certificate_bytes(const std::vector<long>& cert) {
  std::string out;
  for (long x : cert) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<char>((x >> shift) & 0xff));
  }
  return out;
}

void sort_faces(ExtendedConeComplex& c) {
  for (auto& cone : c.cones) {
    std::sort(cone.faces.begin(), cone.faces.end(),
              [](const ConeFace& a, const ConeFace& b) { return a.edge < b.edge; });
  }
}

}  // namespace

ExtendedConeComplex build_hurwitz_complex(const Stratification& s, const std::vector<CombCover>& covers) {
  if (covers.size() != s.classes.size()) throw InputError("build_hurwitz_complex: one cover per class");
  ExtendedConeComplex out;
  out.name = "hurwitz";
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    const auto& c = s.classes[i];
    out.cones.push_back({c.short_id, split_names(c.tree, *s.portrait), {}, expansion_lcms(covers[i]), 0});
  }
  for (const auto& e : s.poset) {
    const auto& child = s.classes[e.child].tree;
    const auto& parent = s.classes[e.parent].tree;
    out.cones[e.child].faces.push_back(
        {child.edge_index(e.contracted_split), e.parent, coordinate_map(child, parent)});
  }
  sort_faces(out);
  out.compute_components();
  return out;
}

ExtendedConeComplex build_target_complex(const Stratification& s) {
  ExtendedConeComplex out;
  out.name = "target";
  std::map<MarkedTree, std::size_t> index;
  std::vector<MarkedTree> trees;
  std::deque<std::size_t> queue;
  auto add = [&](const MarkedTree& t) {
    const auto [it, inserted] = index.emplace(t, trees.size());
    if (inserted) {
      trees.push_back(t);
      out.cones.push_back({tree_key(t, s.portrait->target_marks), split_names(t, *s.portrait), {}, {}, 0});
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (const auto& c : s.classes) add(c.tree);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const MarkedTree tree = trees[i];
    for (int e = 0; e < tree.num_edges(); ++e) {
      const MarkedTree face = contract(tree, tree.splits()[e]);
      const std::size_t j = add(face);
      out.cones[i].faces.push_back({e, j, coordinate_map(tree, face)});
    }
  }
  sort_faces(out);
  out.compute_components();
  return out;
}

namespace {

/// Relabels a stable graph by its first canonical labelling. Edges are
/// sorted by their relabelled ends; origin[k] is the input index of edge k.
StableGraph canonical_representative(const StableGraph& g, std::vector<int>& origin) {
  const auto canon = canonicalize(g);
  const auto& pos = canon.labellings.front();
  StableGraph out;
  out.weights.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) out.weights[pos[v]] = g.weights[v];
  for (int l : g.legs) out.legs.push_back(pos[l]);
  std::vector<std::pair<std::pair<int, int>, int>> edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    const int a = pos[g.edges[e].first], b = pos[g.edges[e].second];
    edges.push_back({{std::min(a, b), std::max(a, b)}, e});
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  origin.clear();
  for (const auto& [ends, e] : edges) {
    out.edges.push_back(ends);
    out.paths.push_back({});
    origin.push_back(e);
  }
  return out;
}

}  // namespace

ExtendedConeComplex build_source_complex(const Stratification& s, const std::vector<CombCover>& covers) {
  if (covers.size() != s.classes.size()) throw InputError("build_source_complex: one cover per class");
  ExtendedConeComplex out;
  out.name = "source";
  std::map<std::vector<long>, std::size_t> index;
  std::vector<StableGraph> reps;
  std::deque<std::size_t> queue;
  auto add = [&](const StableGraph& g, std::vector<int>& origin) {
    const auto cert = canonicalize(g).certificate;
    auto rep = canonical_representative(g, origin);
    const auto [it, inserted] = index.emplace(cert, reps.size());
    if (inserted) {
      std::vector<std::string> names;
      for (int e = 0; e < rep.num_edges(); ++e) names.push_back("e" + std::to_string(e));
      out.cones.push_back({short_hash(certificate_bytes(cert)), std::move(names), {}, {}, 0});
      reps.push_back(std::move(rep));
      queue.push_back(it->second);
    }
    return it->second;
  };
  std::vector<int> origin;
  for (const auto& cover : covers) add(source_stratum(cover), origin);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const StableGraph g = reps[i];
    for (int e = 0; e < g.num_edges(); ++e) {
      const std::size_t j = add(contract_edge(g, e), origin);
      std::vector<int> map;
      for (int k : origin) map.push_back(k < e ? k : k + 1);
      out.cones[i].faces.push_back({e, j, std::move(map)});
    }
  }
  sort_faces(out);
  out.compute_components();
  return out;
}

ConePoint normalize_point(const ConePoint& p, const ExtendedConeComplex& complex) {
  ConePoint current = p;
  if (current.coords.size() != static_cast<std::size_t>(complex.cones.at(current.cone).dim())) {
    throw InputError("normalize_point: coordinate count does not match the cone");
  }
  while (true) {
    const auto zero = std::find_if(current.coords.begin(), current.coords.end(),
                                   [](const ExtRational& x) { return x.is_zero(); });
    if (zero == current.coords.end()) return current;
    const ConeFace& f = complex.face(current.cone, static_cast<int>(zero - current.coords.begin()));
    ConePoint next{f.cone, {}};
    for (int k : f.coordinate_map) next.coords.push_back(current.coords[k]);
    current = std::move(next);
  }
}

MetricTree MetricTree::normalized() const {
  std::vector<MarkSet> splits;
  std::vector<ExtRational> kept;
  for (std::size_t e = 0; e < lengths.size(); ++e) {
    if (!lengths[e].is_zero()) {
      splits.push_back(tree.splits()[e]);
      kept.push_back(lengths[e]);
    }
  }
  return {MarkedTree(tree.num_marks(), std::move(splits)), std::move(kept)};
}

MetricGraph MetricGraph::normalized() const {
  MetricGraph out = *this;
  while (true) {
    const auto zero = std::find_if(out.lengths.begin(), out.lengths.end(),
                                   [](const ExtRational& x) { return x.is_zero(); });
    if (zero == out.lengths.end()) return out;
    const int e = static_cast<int>(zero - out.lengths.begin());
    out.graph = contract_edge(out.graph, e);
    out.lengths.erase(zero);
  }
}

MetricGraphKey metric_key(const MetricGraph& g) {
  const MetricGraph n = g.normalized();
  const auto canon = canonicalize(n.graph);
  MetricGraphKey key{canon.certificate, {}};
  bool first = true;
  for (const auto& pos : canon.labellings) {
    std::vector<std::tuple<int, int, ExtRational>> edges;
    for (int e = 0; e < n.graph.num_edges(); ++e) {
      const int a = pos[n.graph.edges[e].first], b = pos[n.graph.edges[e].second];
      edges.push_back({std::min(a, b), std::max(a, b), n.lengths[e]});
    }
    std::sort(edges.begin(), edges.end());
    std::vector<ExtRational> lengths;
    for (const auto& [a, b, len] : edges) lengths.push_back(len);
    if (first || lengths < key.lengths) key.lengths = std::move(lengths);
    first = false;
  }
  return key;
}

namespace {

void check_arity(const CombCover& cover, const std::vector<ExtRational>& x) {
  if (static_cast<int>(x.size()) != cover.target().num_edges()) {
    throw InputError("expected " + std::to_string(cover.target().num_edges()) + " coordinates, got " +
                     std::to_string(x.size()));
  }
  for (const auto& v : x) {
    if (v < ExtRational(0)) throw InputError("coordinates must be nonnegative");
  }
}

}  // namespace

MetricTree trop_target(const CombCover& cover, const std::vector<ExtRational>& x) {
  check_arity(cover, x);
  MetricTree out{cover.target(), {}};
  for (int e = 0; e < cover.target().num_edges(); ++e) {
    out.lengths.push_back(ExtRational(expansion_lcm(cover, e)) * x[e]);
  }
  return out;
}

MetricGraph trop_source(const CombCover& cover, const std::vector<ExtRational>& x) {
  check_arity(cover, x);
  std::vector<ExtRational> along;
  for (const auto& ge : cover.source.edges) {
    along.push_back(ExtRational(expansion_lcm(cover, ge.tree_edge)) * x[ge.tree_edge] /
                    ExtRational(ge.expansion));
  }
  MetricGraph out{source_stratum(cover), {}};
  for (const auto& path : out.graph.paths) {
    ExtRational total;
    for (int ge : path) total += along[ge];
    out.lengths.push_back(total);
  }
  return out;
}

std::vector<ExtRational> trop_pi_f(const CombCover& cover, const std::vector<ExtRational>& y) {
  check_arity(cover, y);
  std::vector<ExtRational> out;
  for (int e = 0; e < cover.target().num_edges(); ++e) out.push_back(y[e] / ExtRational(expansion_lcm(cover, e)));
  return out;
}

std::vector<std::size_t> CmrForget::fiber(std::size_t cmr_cone) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cone_map.size(); ++i) {
    if (cone_map[i] == cmr_cone) out.push_back(i);
  }
  return out;
}

CmrForget forget_to_cmr(const ExtendedConeComplex& hurwitz, const Stratification& s,
                        const std::vector<CombCover>& covers) {
  if (hurwitz.cones.size() != s.classes.size() || covers.size() != s.classes.size()) {
    throw InputError("forget_to_cmr: complex, stratification and covers disagree");
  }
  CmrForget out;
  out.complex.name = "cmr";
  out.cone_map = cover_classes(covers);
  for (std::size_t i = 0; i < out.cone_map.size(); ++i) {
    if (out.cone_map[i] < out.representative.size()) continue;
    out.representative.push_back(i);
    out.trees.push_back(s.classes[i].tree);
    const Cone& h = hurwitz.cones[i];
    out.complex.cones.push_back(
        {short_hash(certificate_bytes(cover_certificate(covers[i]))), h.edges, {}, h.lcms, 0});
  }
  for (std::size_t k = 0; k < out.representative.size(); ++k) {
    for (const auto& f : hurwitz.cones[out.representative[k]].faces) {
      out.complex.cones[k].faces.push_back({f.edge, out.cone_map[f.cone], f.coordinate_map});
    }
  }
  for (std::size_t i = 0; i < out.cone_map.size(); ++i) {
    const auto& mine = hurwitz.cones[i].faces;
    const auto& theirs = out.complex.cones[out.cone_map[i]].faces;
    for (std::size_t j = 0; j < mine.size(); ++j) {
      if (out.cone_map[mine[j].cone] != theirs[j].cone) {
        throw DefectError("isomorphic covers have non-isomorphic contractions");
      }
    }
  }
  out.complex.compute_components();
  return out;
}

MetricTree cmr_trop_target(const CmrForget& f, std::size_t cmr_cone, const std::vector<ExtRational>& x) {
  const Cone& cone = f.complex.cones.at(cmr_cone);
  if (static_cast<int>(x.size()) != cone.dim()) throw InputError("cmr_trop_target: wrong coordinate count");
  MetricTree out{f.trees[cmr_cone], {}};
  for (int e = 0; e < cone.dim(); ++e) out.lengths.push_back(ExtRational(cone.lcms[e]) * x[e]);
  return out;
}

nlohmann::json complex_to_json(const ExtendedConeComplex& c) {
  nlohmann::json cones = nlohmann::json::array();
  for (const auto& cone : c.cones) {
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : cone.faces) {
      faces.push_back({{"edge", cone.edges[f.edge]}, {"cone", c.cones[f.cone].id}});
    }
    nlohmann::json entry = {{"id", cone.id},
                            {"dim", cone.dim()},
                            {"edges", cone.edges},
                            {"faces", std::move(faces)},
                            {"component", cone.component}};
    if (!cone.lcms.empty() || cone.dim() == 0) entry["L"] = cone.lcms;
    cones.push_back(std::move(entry));
  }
  return {{"name", c.name}, {"cones", std::move(cones)}, {"components", c.num_components}};
}

nlohmann::json metric_tree_to_json(const MetricTree& t, const Portrait& p) {
  nlohmann::json edges = nlohmann::json::array();
  for (int e = 0; e < t.tree.num_edges(); ++e) {
    edges.push_back({{"split", split_label(t.tree.splits()[e], p.target_marks)},
                     {"length", t.lengths[e].to_string()}});
  }
  return {{"tree", tree_to_json(t.tree, p.target_marks)}, {"edges", std::move(edges)}, {"legs", "inf"}};
}

nlohmann::json metric_graph_to_json(const MetricGraph& g, const Portrait& p) {
  nlohmann::json out = stable_graph_to_json(g.graph, p);
  for (int e = 0; e < g.graph.num_edges(); ++e) out["edges"][e]["length"] = g.lengths[e].to_string();
  out["legs"] = "inf";
  return out;
}

}  // namespace hurwitz
