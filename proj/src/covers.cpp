#include "hurwitz/covers.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

namespace hurwitz {

namespace {

int count_components(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(num_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = num_vertices;
  for (const auto& [u, v] : edges) {
    const int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

std::vector<int> sorted_support(const Cycle& c) {
  auto s = c.support;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

int SourceGraph::betti_number() const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : edges) pairs.push_back({half_edges[e.first].vertex, half_edges[e.second].vertex});
  const int n = static_cast<int>(vertices.size());
  return static_cast<int>(edges.size()) - n + count_components(n, pairs);
}

int SourceGraph::total_weight() const {
  int total = 0;
  for (const auto& v : vertices) total += v.weight;
  return total;
}

SourceGraph source_graph(const Decoration& d) {
  const Incidence& inc = d.incidence();
  const int degree = d.degree();
  const auto& mon = d.mon();
  SourceGraph g;

  // vertex_at[v][x]: source vertex over tree vertex v containing point x.
  std::vector<std::vector<int>> vertex_at(inc.num_vertices(), std::vector<int>(degree, -1));
  for (int v = 0; v < inc.num_vertices(); ++v) {
    std::vector<Perm> generators;
    for (int h : inc.vertex(v)) generators.push_back(mon[h]);
    for (auto& orbit : orbits(generators, degree)) {
      int ramification = 0;
      for (int h : inc.vertex(v)) {
        for (const auto& c : mon[h].cycles()) {
          if (std::binary_search(orbit.begin(), orbit.end(), c.min_point())) {
            ramification += c.length() - 1;
          }
        }
      }
      const int twice_genus = ramification - 2 * static_cast<int>(orbit.size()) + 2;
      if (twice_genus < 0 || twice_genus % 2 != 0) {
        throw DefectError("local Riemann-Hurwitz count gives genus " +
                          std::to_string(twice_genus) + "/2 at tree vertex " + std::to_string(v));
      }
      for (int x : orbit) vertex_at[v][x] = static_cast<int>(g.vertices.size());
      g.vertices.push_back({v, std::move(orbit), twice_genus / 2});
    }
  }

  const Portrait& p = d.portrait();
  std::map<std::pair<int, int>, int> index;  // (tree half-edge, min point)
  for (int h = 0; h < inc.num_half_edges(); ++h) {
    for (auto& c : mon[h].cycles()) {
      int label = -1;
      if (inc.is_leg(h)) {
        for (int a = 0; a < p.num_source_marks(); ++a) {
          if (d.cyc_leg(a) == h && d.cyc()[a] == c.min_point()) label = a;
        }
        if (label < 0) continue;
      }
      index[{h, c.min_point()}] = static_cast<int>(g.half_edges.size());
      const int vertex = vertex_at[inc.vertex_of(h)][c.min_point()];
      g.half_edges.push_back({vertex, h, std::move(c), label, -1});
    }
  }

  for (int e = 0; e < d.tree().num_edges(); ++e) {
    const int h = inc.edge_end(e, true);
    const int hp = inc.partner(h);
    for (const auto& c : mon[h].cycles()) {
      const Cycle other = mon[hp].cycle_of(c.min_point());
      if (sorted_support(other) != sorted_support(c)) {
        throw DefectError("edge permutations are not inverse across edge " + std::to_string(e));
      }
      const int first = index.at({h, c.min_point()});
      const int second = index.at({hp, other.min_point()});
      g.half_edges[first].partner = second;
      g.half_edges[second].partner = first;
      g.edges.push_back({first, second, e, c.length()});
    }
  }

  g.legs.assign(p.num_source_marks(), -1);
  for (int a = 0; a < p.num_source_marks(); ++a) g.legs[a] = index.at({d.cyc_leg(a), d.cyc()[a]});
  return g;
}

int StableGraph::valence(int v) const {
  int out = 0;
  for (const auto& [a, b] : edges) out += (a == v) + (b == v);
  for (int l : legs) out += l == v;
  return out;
}

int StableGraph::genus() const {
  int total = num_edges() - num_vertices() + count_components(num_vertices(), edges);
  for (int w : weights) total += w;
  return total;
}

bool StableGraph::is_stable() const {
  for (int v = 0; v < num_vertices(); ++v) {
    if (weights[v] == 0 && valence(v) < 3) return false;
  }
  return true;
}

StableGraph underlying_graph(const SourceGraph& g) {
  StableGraph out;
  for (const auto& v : g.vertices) out.weights.push_back(v.weight);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out.edges.push_back({g.half_edges[g.edges[e].first].vertex, g.half_edges[g.edges[e].second].vertex});
    out.paths.push_back({static_cast<int>(e)});
  }
  for (int h : g.legs) out.legs.push_back(g.half_edges[h].vertex);
  return out;
}

namespace {

/// Drops dead vertices and edges, keeping the relative order of survivors.
StableGraph compact(const StableGraph& g, const std::vector<bool>& vertex_alive,
                    const std::vector<bool>& edge_alive) {
  std::vector<int> remap(g.num_vertices(), -1);
  StableGraph out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!vertex_alive[v]) continue;
    remap[v] = out.num_vertices();
    out.weights.push_back(g.weights[v]);
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edge_alive[e]) continue;
    out.edges.push_back({remap[g.edges[e].first], remap[g.edges[e].second]});
    out.paths.push_back(g.paths[e]);
  }
  for (int l : g.legs) out.legs.push_back(remap[l]);
  return out;
}

}  // namespace

StableGraph stabilize(const StableGraph& input) {
  StableGraph g = input;
  if (g.paths.size() != g.edges.size()) {
    g.paths.clear();
    for (int e = 0; e < g.num_edges(); ++e) g.paths.push_back({e});
  }
  std::vector<bool> vertex_alive(g.num_vertices(), true);
  std::vector<bool> edge_alive(g.num_edges(), true);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.num_vertices() && !changed; ++v) {
      if (!vertex_alive[v] || g.weights[v] != 0) continue;
      std::vector<int> incident;
      bool loop = false;
      for (int e = 0; e < g.num_edges(); ++e) {
        if (!edge_alive[e]) continue;
        const auto [a, b] = g.edges[e];
        if (a == v && b == v) loop = true;
        if (a == v || b == v) incident.push_back(e);
      }
      if (loop) continue;
      std::vector<int> legs;
      for (std::size_t l = 0; l < g.legs.size(); ++l) {
        if (g.legs[l] == v) legs.push_back(static_cast<int>(l));
      }
      auto other_end = [&](int e) { return g.edges[e].first == v ? g.edges[e].second : g.edges[e].first; };
      const std::size_t valence = incident.size() + legs.size();
      if (valence == 1 && incident.size() == 1) {
        edge_alive[incident[0]] = false;
        vertex_alive[v] = false;
        changed = true;
      } else if (valence == 2 && incident.size() == 1) {
        g.legs[legs[0]] = other_end(incident[0]);
        edge_alive[incident[0]] = false;
        vertex_alive[v] = false;
        changed = true;
      } else if (valence == 2 && incident.size() == 2) {
        const int e1 = incident[0], e2 = incident[1];
        const int a = other_end(e1), b = other_end(e2);
        auto path = g.paths[e1];
        path.insert(path.end(), g.paths[e2].begin(), g.paths[e2].end());
        g.edges[e1] = {a, b};
        g.paths[e1] = std::move(path);
        edge_alive[e2] = false;
        vertex_alive[v] = false;
        changed = true;
      }
    }
  }
  StableGraph out = compact(g, vertex_alive, edge_alive);
  if (!out.is_stable()) throw DefectError("stabilization left an unstable vertex");
  return out;
}

StableGraph stabilize(const SourceGraph& g) { return stabilize(underlying_graph(g)); }

StableGraph contract_edge(const StableGraph& input, int edge) {
  if (edge < 0 || edge >= input.num_edges()) throw InputError("contract_edge: no such edge");
  StableGraph g = input;
  if (g.paths.size() != g.edges.size()) g.paths.assign(g.edges.size(), {});
  const auto [a, b] = g.edges[edge];
  std::vector<bool> vertex_alive(g.num_vertices(), true);
  std::vector<bool> edge_alive(g.num_edges(), true);
  edge_alive[edge] = false;
  if (a == b) {
    g.weights[a] += 1;
  } else {
    const int keep = std::min(a, b), gone = std::max(a, b);
    g.weights[keep] += g.weights[gone];
    for (auto& [u, v] : g.edges) {
      if (u == gone) u = keep;
      if (v == gone) v = keep;
    }
    for (auto& l : g.legs) {
      if (l == gone) l = keep;
    }
    vertex_alive[gone] = false;
  }
  return compact(g, vertex_alive, edge_alive);
}

Canonical canonicalize(const StableGraph& g) {
  LabelledGraph lg;
  lg.vertex_keys.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) lg.vertex_keys[v].push_back(g.weights[v]);
  for (std::size_t l = 0; l < g.legs.size(); ++l) lg.vertex_keys[g.legs[l]].push_back(static_cast<long>(l));
  for (const auto& [u, v] : g.edges) lg.edges.push_back({u, v, 0});
  return canonicalize(lg);
}

int CombCover::leg_expansion(int source_mark) const {
  return source.half_edges[source.legs[source_mark]].cycle.length();
}

std::vector<std::string> harmonicity_violations(const CombCover& cover) {
  std::vector<std::string> out;
  const Decoration& d = cover.decoration;
  const Incidence& inc = d.incidence();
  const SourceGraph& g = cover.source;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& vertex = g.vertices[i];
    const int size = static_cast<int>(vertex.orbit.size());
    for (int h : inc.vertex(vertex.tree_vertex)) {
      int total = 0;
      if (inc.is_leg(h)) {
        for (const auto& c : d.mon(h).cycles()) {
          if (std::binary_search(vertex.orbit.begin(), vertex.orbit.end(), c.min_point())) {
            total += c.length();
          }
        }
      } else {
        for (const auto& he : g.half_edges) {
          if (he.vertex == static_cast<int>(i) && he.tree_half_edge == h) total += he.cycle.length();
        }
      }
      if (total != size) {
        out.push_back("source vertex " + std::to_string(i) + " over half-edge " +
                      inc.label(h, d.portrait().target_marks) + ": " + std::to_string(total) +
                      " != " + std::to_string(size));
      }
    }
  }
  const Portrait& p = d.portrait();
  for (int a = 0; a < p.num_source_marks(); ++a) {
    if (cover.leg_expansion(a) != p.source_marks[a].ram) {
      out.push_back("leg " + p.source_marks[a].name + " has expansion " +
                    std::to_string(cover.leg_expansion(a)));
    }
  }
  return out;
}

CombCover comb_cover(const Decoration& d) {
  CombCover cover{d, source_graph(d)};
  const auto problems = harmonicity_violations(cover);
  if (!problems.empty()) throw DefectError("harmonicity fails: " + problems.front());
  return cover;
}

int expansion_lcm(const CombCover& cover, int tree_edge) {
  if (tree_edge < 0 || tree_edge >= cover.target().num_edges()) {
    throw InputError("expansion_lcm: no such tree edge");
  }
  int out = 1;
  for (const auto& e : cover.source.edges) {
    if (e.tree_edge == tree_edge) out = std::lcm(out, e.expansion);
  }
  return out;
}

std::vector<int> expansion_lcms(const CombCover& cover) {
  std::vector<int> out;
  for (int e = 0; e < cover.target().num_edges(); ++e) out.push_back(expansion_lcm(cover, e));
  return out;
}

MarkedTree target_stratum(const CombCover& cover) { return cover.target(); }

StableGraph source_stratum(const CombCover& cover) { return stabilize(cover.source); }

std::vector<long> cover_certificate(const CombCover& cover) {
  const SourceGraph& g = cover.source;
  LabelledGraph lg;
  std::vector<std::vector<std::array<long, 3>>> legs(g.vertices.size());
  for (const auto& he : g.half_edges) {
    if (he.label >= 0) legs[he.vertex].push_back({he.tree_half_edge, he.label, he.cycle.length()});
  }
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    std::vector<long> key{g.vertices[i].tree_vertex, g.vertices[i].weight,
                          static_cast<long>(g.vertices[i].orbit.size())};
    std::sort(legs[i].begin(), legs[i].end());
    for (const auto& l : legs[i]) key.insert(key.end(), l.begin(), l.end());
    lg.vertex_keys.push_back(std::move(key));
  }
  for (const auto& e : g.edges) {
    lg.edges.push_back({g.half_edges[e.first].vertex, g.half_edges[e.second].vertex,
                        e.tree_edge * 64L + e.expansion});
  }
  std::vector<long> out{cover.target().num_marks(), cover.target().num_edges()};
  for (MarkSet s : cover.target().splits()) out.push_back(static_cast<long>(s));
  const auto canon = canonicalize(lg);
  out.insert(out.end(), canon.certificate.begin(), canon.certificate.end());
  return out;
}

bool cover_isomorphic(const CombCover& a, const CombCover& b) {
  return a.target() == b.target() && cover_certificate(a) == cover_certificate(b);
}

std::vector<std::size_t> cover_classes(const std::vector<CombCover>& covers) {
  std::map<std::vector<long>, std::size_t> seen;
  std::vector<std::size_t> out;
  for (const auto& c : covers) out.push_back(seen.emplace(cover_certificate(c), seen.size()).first->second);
  return out;
}

std::vector<CombCover> covers_of(const Stratification& s) {
  std::vector<CombCover> out;
  out.reserve(s.classes.size());
  for (const auto& c : s.classes) out.push_back(comb_cover(c));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> cross_component_cover_pairs(
    const Stratification& s, const std::vector<CombCover>& covers) {
  const auto labels = cover_classes(covers);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j] && s.classes[i].component != s.classes[j].component) {
        out.push_back({i, j});
      }
    }
  }
  return out;
}

namespace {

nlohmann::json one_based(const std::vector<int>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (int x : points) out.push_back(x + 1);
  return out;
}

}  // namespace

nlohmann::json source_graph_to_json(const SourceGraph& g, const Portrait& p) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : g.vertices) {
    vertices.push_back({{"tree_vertex", v.tree_vertex}, {"orbit", one_based(v.orbit)}, {"weight", v.weight}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) {
    const auto& a = g.half_edges[e.first];
    const auto& b = g.half_edges[e.second];
    edges.push_back({{"tree_edge", e.tree_edge},
                     {"ends", {a.vertex, b.vertex}},
                     {"cycles", {a.cycle.to_string(), b.cycle.to_string()}},
                     {"expansion", e.expansion}});
  }
  nlohmann::json legs = nlohmann::json::array();
  for (std::size_t a = 0; a < g.legs.size(); ++a) {
    const auto& he = g.half_edges[g.legs[a]];
    legs.push_back({{"mark", p.source_marks[a].name},
                    {"vertex", he.vertex},
                    {"over", p.target_marks[he.tree_half_edge]},
                    {"cycle", he.cycle.to_string()},
                    {"expansion", he.cycle.length()}});
  }
  return {{"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"legs", std::move(legs)},
          {"betti_number", g.betti_number()},
          {"genus", g.genus()}};
}

nlohmann::json stable_graph_to_json(const StableGraph& g, const Portrait& p) {
  nlohmann::json vertices = nlohmann::json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    nlohmann::json legs = nlohmann::json::array();
    for (std::size_t l = 0; l < g.legs.size(); ++l) {
      if (g.legs[l] == v) legs.push_back(p.source_marks[l].name);
    }
    vertices.push_back({{"weight", g.weights[v]}, {"legs", std::move(legs)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    nlohmann::json entry = {{"ends", {g.edges[e].first, g.edges[e].second}}};
    if (e < static_cast<int>(g.paths.size())) entry["path"] = g.paths[e];
    edges.push_back(std::move(entry));
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"genus", g.genus()}};
}

nlohmann::json cover_to_json(const CombCover& cover) {
  const Portrait& p = cover.decoration.portrait();
  const auto& tree = cover.target();
  nlohmann::json lcm = nlohmann::json::array();
  for (int e = 0; e < tree.num_edges(); ++e) {
    nlohmann::json expansions = nlohmann::json::array();
    for (const auto& ge : cover.source.edges) {
      if (ge.tree_edge == e) expansions.push_back(ge.expansion);
    }
    lcm.push_back({{"split", split_label(tree.splits()[e], p.target_marks)},
                   {"expansions", std::move(expansions)},
                   {"L", expansion_lcm(cover, e)}});
  }
  const auto problems = harmonicity_violations(cover);
  return {{"target", tree_to_json(tree, p.target_marks)},
          {"source", source_graph_to_json(cover.source, p)},
          {"stabilization", stable_graph_to_json(source_stratum(cover), p)},
          {"edges", std::move(lcm)},
          {"harmonic", problems.empty()},
          {"harmonicity_violations", problems}};
}

std::string cover_to_dot(const CombCover& cover) {
  const Portrait& p = cover.decoration.portrait();
  const Incidence& inc = cover.decoration.incidence();
  const SourceGraph& g = cover.source;
  std::ostringstream out;
  out << "graph cover {\n  rankdir=TB;\n  node [shape=circle, fontname=\"monospace\"];\n";
  out << "  subgraph cluster_source {\n    label=\"G\";\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    out << "    g" << i << " [label=\"" << g.vertices[i].weight << "\"];\n";
  }
  for (const auto& e : g.edges) {
    out << "    g" << g.half_edges[e.first].vertex << " -- g" << g.half_edges[e.second].vertex
        << " [label=\"" << e.expansion << "\"];\n";
  }
  for (std::size_t a = 0; a < g.legs.size(); ++a) {
    const auto& he = g.half_edges[g.legs[a]];
    out << "    ga" << a << " [shape=plaintext, label=\"" << p.source_marks[a].name << "\"];\n";
    out << "    g" << he.vertex << " -- ga" << a << " [dir=forward, label=\"" << he.cycle.length()
        << "\"];\n";
  }
  out << "  }\n  subgraph cluster_target {\n    label=\"T\";\n";
  for (int v = 0; v < inc.num_vertices(); ++v) out << "    t" << v << " [label=\"\"];\n";
  for (int e = 0; e < cover.target().num_edges(); ++e) {
    out << "    t" << inc.vertex_of(inc.edge_end(e, true)) << " -- t"
        << inc.vertex_of(inc.edge_end(e, false)) << ";\n";
  }
  for (int b = 0; b < cover.target().num_marks(); ++b) {
    out << "    tb" << b << " [shape=plaintext, label=\"" << p.target_marks[b] << "\"];\n";
    out << "    t" << inc.vertex_of(b) << " -- tb" << b << " [dir=forward];\n";
  }
  out << "  }\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    out << "  g" << i << " -- t" << g.vertices[i].tree_vertex << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hurwitz
