#include "hurwitz/strata.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace hurwitz {

Decoration conjugation_normalize(const Decoration& d) {
  const int degree = d.degree();
  const auto& perms = all_perms(degree);
  const auto& mon = d.mon();
  const int num_sources = d.portrait().num_source_marks();
  std::vector<Cycle> labelled;
  for (int a = 0; a < num_sources; ++a) labelled.push_back(d.cyc_cycle(a));

  const std::size_t length = mon.size() * degree + num_sources;
  std::vector<std::uint8_t> best(length), candidate(length);
  std::size_t best_index = 0;
  bool have_best = false;

  for (std::size_t t = 0; t < perms.size(); ++t) {
    const Perm& tau = perms[t];
    const Perm tau_inv = tau.inverse();
    int cmp = have_best ? 0 : -1;
    std::size_t pos = 0;
    bool rejected = false;
    auto push = [&](std::uint8_t value) {
      candidate[pos] = value;
      if (cmp == 0) {
        if (value < best[pos]) cmp = -1;
        else if (value > best[pos]) rejected = true;
      }
      ++pos;
    };
    for (std::size_t h = 0; h < mon.size() && !rejected; ++h) {
      for (int j = 0; j < degree && !rejected; ++j) {
        push(static_cast<std::uint8_t>(tau(mon[h](tau_inv(j)))));
      }
    }
    for (int a = 0; a < num_sources && !rejected; ++a) {
      int smallest = degree;
      for (int x : labelled[a].support) smallest = std::min(smallest, tau(x));
      push(static_cast<std::uint8_t>(smallest));
    }
    if (!rejected && cmp < 0) {
      std::swap(best, candidate);
      best_index = t;
      have_best = true;
    }
  }
  return global_conjugate(d, perms[best_index]);
}

namespace {

template <typename Visit>
void for_each_braid_neighbour(const Decoration& d, Visit&& visit) {
  for (int h = 0; h < d.incidence().num_half_edges(); ++h) {
    for (Direction dir : {Direction::Anticlockwise, Direction::Clockwise}) {
      visit(conjugation_normalize(braid_move(d, h, dir)));
    }
  }
}

}  // namespace

std::vector<Decoration> orbit(const Decoration& d) {
  std::vector<Decoration> out{conjugation_normalize(d)};
  std::unordered_set<std::string> seen{encode(out.front())};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Decoration current = out[i];
    for_each_braid_neighbour(current, [&](Decoration next) {
      if (seen.insert(encode(next)).second) out.push_back(std::move(next));
    });
  }
  return out;
}

std::string canonical_form(const Decoration& d) {
  std::string best;
  bool first = true;
  for (const auto& member : orbit(d)) {
    auto e = encode(member);
    if (first || e < best) {
      best = std::move(e);
      first = false;
    }
  }
  return best;
}

std::string short_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[h & 0xf];
    h >>= 4;
  }
  return out;
}

long Stratification::find(const std::string& id_or_short) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].short_id == id_or_short || to_hex(classes[i].id) == id_or_short) {
      return static_cast<long>(i);
    }
  }
  return -1;
}

namespace {

struct LocalClass {
  std::string id;
  Decoration representative;
  std::size_t orbit_size;
};

struct TreeResult {
  std::vector<LocalClass> classes;
  /// Normalized encoding to local class index.
  std::unordered_map<std::string, std::size_t> lookup;
  std::size_t decorations = 0;
};

TreeResult partition_tree(const PortraitPtr& portrait, const MarkedTree& tree,
                          std::optional<std::uint64_t> shuffle_seed, std::size_t tree_index) {
  TreeResult result;
  auto decorations = enumerate_decorations(portrait, tree);
  result.decorations = decorations.size();
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed + 0x9e3779b97f4a7c15ull * (tree_index + 1));
    std::shuffle(decorations.begin(), decorations.end(), rng);
  }

  std::unordered_map<std::string, Decoration> normalized;
  std::vector<std::string> seeds;
  for (const auto& d : decorations) {
    Decoration n = conjugation_normalize(d);
    std::string key = encode(n);
    if (normalized.emplace(key, std::move(n)).second) seeds.push_back(std::move(key));
  }

  std::vector<std::pair<std::string, LocalClass>> found;
  std::unordered_map<std::string, std::size_t> provisional;
  for (const auto& seed : seeds) {
    if (provisional.count(seed)) continue;
    const std::size_t label = found.size();
    std::deque<std::string> queue{seed};
    provisional.emplace(seed, label);
    std::string smallest = seed;
    std::size_t size = 0;
    while (!queue.empty()) {
      const std::string key = std::move(queue.front());
      queue.pop_front();
      ++size;
      smallest = std::min(smallest, key);
      for_each_braid_neighbour(normalized.at(key), [&](Decoration next) {
        std::string next_key = encode(next);
        if (!normalized.count(next_key)) {
          throw DefectError("braid move left the enumerated decoration set");
        }
        if (provisional.emplace(next_key, label).second) queue.push_back(std::move(next_key));
      });
    }
    found.push_back({smallest, LocalClass{smallest, normalized.at(smallest), size}});
  }

  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return found[a].first < found[b].first; });
  std::vector<std::size_t> rank(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (std::size_t i : order) result.classes.push_back(std::move(found[i].second));
  for (auto& [key, label] : provisional) result.lookup.emplace(key, rank[label]);
  return result;
}

}  // namespace

Stratification stratify(const PortraitPtr& portrait, const StratifyOptions& options) {
  const Portrait& p = *portrait;
  if (!validate_portrait(p).empty()) throw InputError("stratify: invalid portrait");

  std::vector<MarkedTree> trees;
  for (auto& t : enumerate_stable_trees(p.num_target_marks())) {
    if (!options.max_codim || t.num_edges() <= *options.max_codim) trees.push_back(std::move(t));
  }

  std::vector<TreeResult> results(trees.size());
  const int jobs = std::max(1, options.jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < trees.size(); i = next++) {
      try {
        results[i] = partition_tree(portrait, trees[i], options.shuffle_seed, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Stratification s;
  s.portrait = portrait;
  std::map<MarkedTree, std::size_t> tree_index;
  std::vector<std::size_t> first_class(trees.size());
  const int n = p.num_target_marks();
  for (std::size_t i = 0; i < trees.size(); ++i) {
    tree_index.emplace(trees[i], i);
    first_class[i] = s.classes.size();
    std::size_t normalized = 0;
    for (const auto& c : results[i].classes) normalized += c.orbit_size;
    s.trees.push_back({trees[i], results[i].decorations, normalized});
    for (auto& c : results[i].classes) {
      HurwitzClass hc{c.id,
                      short_hash(c.id),
                      trees[i],
                      trees[i].num_edges(),
                      n - 3 - trees[i].num_edges(),
                      c.representative,
                      c.orbit_size,
                      0};
      s.classes.push_back(std::move(hc));
    }
  }

  auto lookup = [&](const Decoration& d) -> std::size_t {
    const auto it = tree_index.find(d.tree());
    if (it == tree_index.end()) throw DefectError("contraction produced an unknown tree");
    const auto& local = results[it->second].lookup;
    const auto found = local.find(encode(conjugation_normalize(d)));
    if (found == local.end()) throw DefectError("contraction produced an unknown decoration");
    return first_class[it->second] + found->second;
  };

  for (std::size_t c = 0; c < s.classes.size(); ++c) {
    const auto& hc = s.classes[c];
    for (MarkSet split : hc.tree.splits()) {
      s.poset.push_back({c, lookup(contract_decoration(hc.representative, split)), split});
    }
    Decoration full = hc.representative;
    while (full.tree().num_edges() > 0) {
      full = contract_decoration(full, full.tree().splits().front());
    }
    s.classes[c].component = lookup(full);
    if (hc.codim == 0) s.components.push_back(c);
  }

  std::unordered_set<std::string> shorts;
  for (const auto& hc : s.classes) {
    if (!shorts.insert(hc.short_id).second) throw DefectError("short class id collision");
  }
  return s;
}

std::size_t component_of(const Stratification& s, std::size_t class_index) {
  return s.classes.at(class_index).component;
}

long class_of(const Stratification& s, const Decoration& d) {
  const std::string id = canonical_form(d);
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    if (s.classes[i].id == id) return static_cast<long>(i);
  }
  return -1;
}

nlohmann::json stratification_to_json(const Stratification& s, bool verbose) {
  const Portrait& p = *s.portrait;
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : s.classes) {
    nlohmann::json entry = {{"id", c.short_id},
                            {"tree", tree_to_json(c.tree, p.target_marks)},
                            {"codim", c.codim},
                            {"dim", c.dim},
                            {"component", s.classes[c.component].short_id},
                            {"orbit_size", c.orbit_size},
                            {"representative", decoration_to_json(c.representative)}};
    if (verbose) entry["encoding"] = to_hex(c.id);
    classes.push_back(std::move(entry));
  }
  nlohmann::json poset = nlohmann::json::array();
  for (const auto& e : s.poset) {
    nlohmann::json split = nlohmann::json::array();
    for (int b = 0; b < p.num_target_marks(); ++b) {
      if (e.contracted_split & (MarkSet{1} << b)) split.push_back(p.target_marks[b]);
    }
    poset.push_back({s.classes[e.child].short_id, s.classes[e.parent].short_id, std::move(split)});
  }
  nlohmann::json components = nlohmann::json::array();
  for (std::size_t c : s.components) components.push_back(s.classes[c].short_id);
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : s.trees) {
    trees.push_back({{"tree", tree_key(t.tree, p.target_marks)},
                     {"decorations", t.decorations},
                     {"normalized_decorations", t.normalized_decorations}});
  }
  return {{"portrait", portrait_to_json(p)},
          {"portrait_hash", short_hash(canonical_serialization(p))},
          {"classes", std::move(classes)},
          {"poset", std::move(poset)},
          {"components", std::move(components)},
          {"trees", std::move(trees)}};
}

std::string poset_to_dot(const Stratification& s) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  std::map<int, std::vector<std::size_t>> by_codim;
  for (std::size_t c = 0; c < s.classes.size(); ++c) by_codim[s.classes[c].codim].push_back(c);
  for (const auto& [codim, members] : by_codim) {
    out << "  { rank=same;";
    for (std::size_t c : members) out << " \"" << s.classes[c].short_id << "\";";
    out << " }\n";
  }
  for (const auto& c : s.classes) {
    out << "  \"" << c.short_id << "\" [label=\"" << c.short_id.substr(0, 8) << "\\n"
        << tree_key(c.tree, s.portrait->target_marks) << "\"];\n";
  }
  for (const auto& e : s.poset) {
    out << "  \"" << s.classes[e.child].short_id << "\" -> \"" << s.classes[e.parent].short_id
        << "\";\n";
  }
  out << "}\n";
  return out.str();
}

std::string stratification_table(const Stratification& s) {
  std::ostringstream out;
  const Portrait& p = *s.portrait;
  out << "portrait: degree " << p.degree << ", genus " << p.genus << ", |B| = "
      << p.num_target_marks() << ", |A| = " << p.num_source_marks() << "\n";
  std::map<int, std::size_t> by_codim;
  for (const auto& c : s.classes) ++by_codim[c.codim];
  for (const auto& [codim, count] : by_codim) out << "codim " << codim << ": " << count << "\n";
  for (std::size_t root : s.components) {
    std::size_t members = 0;
    for (const auto& c : s.classes) members += c.component == root ? 1 : 0;
    out << "component " << s.classes[root].short_id << ": " << members << " strata ("
        << members - 1 << " boundary)\n";
  }
  if (s.empty()) out << "empty Hurwitz space\n";
  out << "components: " << s.components.size() << ", strata: " << s.classes.size() << "\n";
  return out.str();
}

}  // namespace hurwitz
