#include "hurwitz/decorations.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hurwitz {

namespace {

/// Product mon(h_k) ... mon(h_1) along an ord-cycle listed as h_1 ... h_k.
Perm cyclic_product(const std::vector<Perm>& mon, const std::vector<int>& cycle, int degree) {
  Perm acc = Perm::identity(degree);
  for (int h : cycle) acc = compose(mon[h], acc);
  return acc;
}

/// The permutation on `unknown` that makes the ord-cycle product trivial,
/// given all other half-edges at its vertex.
Perm solve_vertex(const std::vector<Perm>& mon, const std::vector<int>& ord, int unknown,
                  int degree) {
  Perm acc = Perm::identity(degree);
  for (int h = ord[unknown]; h != unknown; h = ord[h]) acc = compose(mon[h], acc);
  return acc.inverse();
}

}  // namespace

Decoration::Decoration(PortraitPtr portrait, ShapePtr shape, std::vector<int> ord,
                       std::vector<Perm> mon, std::vector<int> cyc)
    : portrait_(std::move(portrait)),
      shape_(std::move(shape)),
      ord_(std::move(ord)),
      mon_(std::move(mon)),
      cyc_(std::move(cyc)) {
  const int num_half = shape_->incidence.num_half_edges();
  if (static_cast<int>(ord_.size()) != num_half || static_cast<int>(mon_.size()) != num_half) {
    throw InputError("decoration: ord and mon need one entry per half-edge");
  }
  if (static_cast<int>(cyc_.size()) != portrait_->num_source_marks()) {
    throw InputError("decoration: cyc needs one entry per source mark");
  }
  if (shape_->tree.num_marks() != portrait_->num_target_marks()) {
    throw InputError("decoration: tree marks do not match the portrait");
  }
  for (int v : ord_) {
    if (v < 0 || v >= num_half) throw InputError("decoration: ord entry out of range");
  }
  for (const auto& p : mon_) {
    if (p.degree() != portrait_->degree) throw InputError("decoration: mon degree mismatch");
  }
  for (int x : cyc_) {
    if (x < 0 || x >= portrait_->degree) throw InputError("decoration: cyc point out of range");
  }
}

Decoration Decoration::from_cycles(PortraitPtr portrait, const MarkedTree& tree,
                                   const std::vector<std::vector<int>>& ord_cycles,
                                   std::vector<Perm> mon, const std::vector<int>& cyc_points) {
  auto shape = make_shape(tree);
  std::vector<int> ord(shape->incidence.num_half_edges(), -1);
  for (const auto& c : ord_cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) ord[c[i]] = c[(i + 1) % c.size()];
  }
  if (std::find(ord.begin(), ord.end(), -1) != ord.end()) {
    throw InputError("decoration: ord cycles do not cover every half-edge");
  }
  std::vector<int> cyc;
  for (std::size_t a = 0; a < cyc_points.size(); ++a) {
    const int leg = portrait->source_marks.at(a).maps_to;
    cyc.push_back(mon.at(leg).cycle_of(cyc_points[a]).min_point());
  }
  return Decoration(std::move(portrait), std::move(shape), std::move(ord), std::move(mon),
                    std::move(cyc));
}

std::vector<int> Decoration::ord_cycle(int vertex) const {
  const auto& members = incidence().vertex(vertex);
  std::vector<int> out{members.front()};
  for (int h = ord_[members.front()]; h != members.front() && out.size() <= ord_.size(); h = ord_[h]) {
    out.push_back(h);
  }
  return out;
}

bool Decoration::operator==(const Decoration& other) const {
  return tree() == other.tree() && ord_ == other.ord_ && mon_ == other.mon_ && cyc_ == other.cyc_;
}

std::vector<ConditionViolation> check_conditions(const Decoration& d) {
  std::vector<ConditionViolation> out;
  const Incidence& inc = d.incidence();
  const Portrait& p = d.portrait();
  const auto& marks = p.target_marks;
  const int degree = d.degree();

  bool structure_ok = true;
  for (int v = 0; v < inc.num_vertices(); ++v) {
    const auto cycle = d.ord_cycle(v);
    auto sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != inc.vertex(v)) {
      structure_ok = false;
      out.push_back({"structure", "ord cycle at vertex " + std::to_string(v) +
                                      " does not match its incident half-edges"});
    }
  }
  if (structure_ok) {
    for (int v = 0; v < inc.num_vertices(); ++v) {
      if (!cyclic_product(d.mon(), d.ord_cycle(v), degree).is_identity()) {
        out.push_back({"i", "vertex " + std::to_string(v)});
      }
    }
  }
  for (int e = 0; e < d.tree().num_edges(); ++e) {
    const int h = inc.edge_end(e, true);
    if (compose(d.mon(h), d.mon(inc.partner(h))) != Perm::identity(degree)) {
      out.push_back({"ii", "edge " + split_label(d.tree().splits()[e], marks)});
    }
  }
  for (int b = 0; b < p.num_target_marks(); ++b) {
    if (d.mon(b).cycle_type() != p.branch_profiles[b]) out.push_back({"iii", marks[b]});
  }
  for (int a = 0; a < p.num_source_marks(); ++a) {
    if (d.cyc_cycle(a).length() != p.source_marks[a].ram) {
      out.push_back({"iv", p.source_marks[a].name});
    }
    for (int other = 0; other < a; ++other) {
      if (d.cyc_leg(other) == d.cyc_leg(a) && d.cyc()[other] == d.cyc()[a]) {
        out.push_back({"injective", p.source_marks[other].name + "," + p.source_marks[a].name});
      }
    }
  }
  std::vector<Perm> legs(d.mon().begin(), d.mon().begin() + p.num_target_marks());
  if (!is_transitive(legs, degree)) out.push_back({"v", "leg permutations"});
  return out;
}

namespace {

/// Every cyclic order of a vertex's half-edges, each as a list starting at
/// the smallest half-edge.
std::vector<std::vector<int>> cyclic_orders(const std::vector<int>& members) {
  std::vector<std::vector<int>> out;
  std::vector<int> rest(members.begin() + 1, members.end());
  do {
    std::vector<int> cycle{members.front()};
    cycle.insert(cycle.end(), rest.begin(), rest.end());
    out.push_back(std::move(cycle));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

/// Injective cyc assignments for fixed leg permutations.
void enumerate_cyc(const Portrait& p, const std::vector<Perm>& mon, std::size_t a,
                   std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (a == p.source_marks.size()) {
    out.push_back(current);
    return;
  }
  const auto& mark = p.source_marks[a];
  for (const Cycle& c : mon[mark.maps_to].cycles()) {
    if (c.length() != mark.ram) continue;
    bool taken = false;
    for (std::size_t other = 0; other < a; ++other) {
      if (p.source_marks[other].maps_to == mark.maps_to && current[other] == c.min_point()) {
        taken = true;
      }
    }
    if (taken) continue;
    current[a] = c.min_point();
    enumerate_cyc(p, mon, a + 1, current, out);
  }
}

}  // namespace

std::vector<Decoration> enumerate_decorations(const PortraitPtr& portrait, const MarkedTree& tree) {
  const Portrait& p = *portrait;
  if (tree.num_marks() != p.num_target_marks()) {
    throw InputError("enumerate_decorations: tree marks do not match the portrait");
  }
  auto shape = make_shape(tree);
  const Incidence& inc = shape->incidence;
  const int n = tree.num_marks();
  const int degree = p.degree;
  const int num_half = inc.num_half_edges();

  // Leg 0 and every edge permutation are solved from condition (i) rather
  // than enumerated: vertices are peeled leaf-first toward the root vertex
  // of leg 0, each vertex solving the half-edge that points at the root.
  const int root = inc.vertex_of(inc.leg(0));
  std::vector<int> peel_order;
  std::vector<int> unknown_at(inc.num_vertices(), -1);
  {
    std::vector<bool> seen(inc.num_vertices(), false);
    std::vector<int> stack{root};
    seen[root] = true;
    std::vector<int> preorder;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      preorder.push_back(v);
      for (int h : inc.vertex(v)) {
        if (inc.is_leg(h)) continue;
        const int w = inc.vertex_of(inc.partner(h));
        if (!seen[w]) {
          seen[w] = true;
          unknown_at[w] = inc.partner(h);
          stack.push_back(w);
        }
      }
    }
    peel_order.assign(preorder.rbegin(), preorder.rend());
    unknown_at[root] = inc.leg(0);
  }

  std::vector<std::vector<Perm>> leg_choices(n);
  for (int b = 1; b < n; ++b) leg_choices[b] = perms_with_cycle_type(p.branch_profiles[b]);

  std::vector<std::vector<std::vector<int>>> vertex_orders;
  for (int v = 0; v < inc.num_vertices(); ++v) vertex_orders.push_back(cyclic_orders(inc.vertex(v)));

  std::vector<Decoration> out;
  std::vector<int> ord(num_half, -1);
  std::vector<Perm> mon(num_half, Perm::identity(degree));
  std::vector<std::size_t> ord_pick(inc.num_vertices(), 0);

  auto emit = [&]() {
    for (int v : peel_order) {
      const int u = unknown_at[v];
      mon[u] = solve_vertex(mon, ord, u, degree);
      if (!inc.is_leg(u)) mon[inc.partner(u)] = mon[u].inverse();
    }
    if (mon[0].cycle_type() != p.branch_profiles[0]) return;
    std::vector<Perm> legs(mon.begin(), mon.begin() + n);
    if (!is_transitive(legs, degree)) return;
    std::vector<std::vector<int>> cycs;
    std::vector<int> current(p.num_source_marks(), 0);
    enumerate_cyc(p, mon, 0, current, cycs);
    for (auto& c : cycs) out.emplace_back(portrait, shape, ord, mon, std::move(c));
  };

  auto legs_loop = [&](auto&& self, int b) -> void {
    if (b == n) {
      emit();
      return;
    }
    for (const Perm& choice : leg_choices[b]) {
      mon[b] = choice;
      self(self, b + 1);
    }
  };

  auto ord_loop = [&](auto&& self, int v) -> void {
    if (v == inc.num_vertices()) {
      legs_loop(legs_loop, 1);
      return;
    }
    for (const auto& cycle : vertex_orders[v]) {
      for (std::size_t i = 0; i < cycle.size(); ++i) ord[cycle[i]] = cycle[(i + 1) % cycle.size()];
      self(self, v + 1);
    }
  };

  ord_loop(ord_loop, 0);
  return out;
}

Decoration contract_decoration(const Decoration& d, MarkSet split) {
  const MarkedTree& tree = d.tree();
  const MarkSet canonical = tree.canonical(split);
  const int e = tree.edge_index(canonical);
  if (e < 0) throw InputError("contract_decoration: split is not an edge of the tree");
  const Incidence& inc = d.incidence();
  const int h = inc.edge_end(e, true);
  const int hp = inc.partner(h);

  auto shape = make_shape(contract(tree, canonical));
  const Incidence& next = shape->incidence;
  const int n = tree.num_marks();

  std::vector<int> remap(inc.num_half_edges(), -1);
  for (int b = 0; b < n; ++b) remap[b] = b;
  for (int f = 0; f < tree.num_edges(); ++f) {
    if (f == e) continue;
    const int g = shape->tree.edge_index(tree.splits()[f]);
    remap[inc.edge_end(f, true)] = next.edge_end(g, true);
    remap[inc.edge_end(f, false)] = next.edge_end(g, false);
  }

  const auto& ord = d.ord();
  std::vector<int> inverse(ord.size());
  for (std::size_t x = 0; x < ord.size(); ++x) inverse[ord[x]] = static_cast<int>(x);
  std::vector<int> spliced = ord;
  spliced[inverse[h]] = ord[hp];
  spliced[inverse[hp]] = ord[h];

  std::vector<int> new_ord(next.num_half_edges(), -1);
  std::vector<Perm> new_mon(next.num_half_edges());
  for (int x = 0; x < inc.num_half_edges(); ++x) {
    if (remap[x] < 0) continue;
    new_ord[remap[x]] = remap[spliced[x]];
    new_mon[remap[x]] = d.mon(x);
  }
  return Decoration(d.portrait_ptr(), std::move(shape), std::move(new_ord), std::move(new_mon),
                    d.cyc());
}

Decoration global_conjugate(const Decoration& d, const Perm& tau) {
  if (tau.degree() != d.degree()) throw InputError("global_conjugate: degree mismatch");
  std::vector<Perm> mon;
  mon.reserve(d.mon().size());
  for (const Perm& m : d.mon()) mon.push_back(conjugate(m, tau));
  std::vector<int> cyc;
  for (int a = 0; a < d.portrait().num_source_marks(); ++a) {
    cyc.push_back(relabel(d.cyc_cycle(a), tau).min_point());
  }
  return Decoration(d.portrait_ptr(), d.shape(), d.ord(), std::move(mon), std::move(cyc));
}

Decoration braid_move(const Decoration& d, int half_edge, Direction direction) {
  const Incidence& inc = d.incidence();
  if (half_edge < 0 || half_edge >= inc.num_half_edges()) {
    throw InputError("braid_move: invalid half-edge");
  }
  const auto& ord = d.ord();
  int neighbour = -1;
  if (direction == Direction::Anticlockwise) {
    neighbour = ord[half_edge];
  } else {
    for (int x = 0; x < static_cast<int>(ord.size()); ++x) {
      if (ord[x] == half_edge) neighbour = x;
    }
  }
  const Perm conjugator = direction == Direction::Anticlockwise ? d.mon(neighbour)
                                                                : d.mon(neighbour).inverse();

  auto swap = [&](int x) { return x == half_edge ? neighbour : x == neighbour ? half_edge : x; };
  std::vector<int> new_ord(ord.size());
  for (int x = 0; x < static_cast<int>(ord.size()); ++x) new_ord[x] = swap(ord[swap(x)]);

  std::vector<Perm> mon = d.mon();
  const auto moved = inc.component(half_edge);
  for (int k : moved) mon[k] = conjugate(mon[k], conjugator);

  std::vector<int> cyc = d.cyc();
  for (int a = 0; a < d.portrait().num_source_marks(); ++a) {
    if (std::binary_search(moved.begin(), moved.end(), d.cyc_leg(a))) {
      cyc[a] = relabel(d.cyc_cycle(a), conjugator).min_point();
    }
  }
  return Decoration(d.portrait_ptr(), d.shape(), std::move(new_ord), std::move(mon),
                    std::move(cyc));
}

std::string encode(const Decoration& d) {
  std::string out;
  const MarkedTree& tree = d.tree();
  out.push_back(static_cast<char>(tree.num_marks()));
  out.push_back(static_cast<char>(tree.num_edges()));
  for (MarkSet s : tree.splits()) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((s >> shift) & 0xff));
  }
  for (int v = 0; v < d.incidence().num_vertices(); ++v) {
    for (int h : d.ord_cycle(v)) out.push_back(static_cast<char>(h));
  }
  for (const Perm& m : d.mon()) {
    for (int x = 0; x < m.degree(); ++x) out.push_back(static_cast<char>(m(x)));
  }
  for (std::size_t a = 0; a < d.cyc().size(); ++a) {
    out.push_back(static_cast<char>(d.cyc_leg(static_cast<int>(a))));
    out.push_back(static_cast<char>(d.cyc()[a]));
  }
  return out;
}

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

nlohmann::json decoration_to_json(const Decoration& d) {
  const Incidence& inc = d.incidence();
  const Portrait& p = d.portrait();
  nlohmann::json ord = nlohmann::json::array();
  for (int v = 0; v < inc.num_vertices(); ++v) {
    nlohmann::json cycle = nlohmann::json::array();
    for (int h : d.ord_cycle(v)) cycle.push_back(inc.label(h, p.target_marks));
    ord.push_back(std::move(cycle));
  }
  nlohmann::json mon = nlohmann::json::object();
  for (int h = 0; h < inc.num_half_edges(); ++h) {
    mon[inc.label(h, p.target_marks)] = d.mon(h).to_full_string();
  }
  nlohmann::json cyc = nlohmann::json::object();
  for (int a = 0; a < p.num_source_marks(); ++a) {
    cyc[p.source_marks[a].name] = {{"leg", p.target_marks[d.cyc_leg(a)]},
                                   {"cycle", d.cyc_cycle(a).to_string()}};
  }
  return {{"tree", tree_to_json(d.tree(), p.target_marks)},
          {"ord", std::move(ord)},
          {"mon", std::move(mon)},
          {"cyc", std::move(cyc)},
          {"encoding", to_hex(encode(d))}};
}

std::string decoration_to_dot(const Decoration& d) {
  const Incidence& inc = d.incidence();
  const Portrait& p = d.portrait();
  auto leg_text = [&](int b) {
    std::string text;
    for (const Cycle& c : d.mon(b).cycles()) {
      text += c.to_string();
      for (int a = 0; a < p.num_source_marks(); ++a) {
        if (d.cyc_leg(a) == b && d.cyc()[a] == c.min_point()) {
          text += "^" + p.source_marks[a].name;
        }
      }
    }
    return text;
  };
  std::ostringstream out;
  out << "graph decoration {\n  node [shape=circle, width=0.3];\n";
  for (int v = 0; v < inc.num_vertices(); ++v) {
    std::string order;
    for (int h : d.ord_cycle(v)) order += (order.empty() ? "" : " ") + inc.label(h, p.target_marks);
    out << "  v" << v << " [label=\"\", xlabel=\"(" << order << ")\"];\n";
  }
  for (int e = 0; e < d.tree().num_edges(); ++e) {
    const int h = inc.edge_end(e, true);
    const int hp = inc.partner(h);
    out << "  v" << inc.vertex_of(h) << " -- v" << inc.vertex_of(hp) << " [taillabel=\""
        << d.mon(h).to_full_string() << "\", headlabel=\"" << d.mon(hp).to_full_string()
        << "\"];\n";
  }
  for (int b = 0; b < p.num_target_marks(); ++b) {
    out << "  leg" << b << " [shape=plaintext, label=\"" << p.target_marks[b] << "\"];\n";
    out << "  v" << inc.vertex_of(b) << " -- leg" << b << " [dir=forward, label=\""
        << leg_text(b) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hurwitz
