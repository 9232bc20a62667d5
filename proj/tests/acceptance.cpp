// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hurwitz/cli.hpp"
#include "hurwitz/covers.hpp"
#include "hurwitz/strata.hpp"
#include "hurwitz/tropical.hpp"

using namespace hurwitz;

namespace {

// Pinned budgets, in seconds.
constexpr double kDegree4Budget = 10.0;
constexpr double kDegree3Budget = 5.0;
constexpr double kDegree1Budget = 1.0;
// Exact comparisons everywhere else: zero tolerated failures.
constexpr long kAllowedFailures = 0;

std::string fixture(const std::string& name) { return std::string(HURWITZ_DATA_DIR) + "/" + name + ".json"; }

PortraitPtr load(const std::string& name) { return std::make_shared<const Portrait>(load_portrait(fixture(name))); }

struct Timed {
  Stratification s;
  double seconds;
};

Timed timed_stratify(const PortraitPtr& p) {
  const auto start = std::chrono::steady_clock::now();
  Stratification s = stratify(p);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(s), secs};
}

std::map<int, int> by_codim(const Stratification& s) {
  std::map<int, int> out;
  for (const auto& c : s.classes) ++out[c.codim];
  return out;
}

std::vector<int> boundary_per_component(const Stratification& s) {
  std::vector<int> out;
  for (std::size_t root : s.components) {
    int n = 0;
    for (const auto& c : s.classes) n += (c.component == root && c.codim > 0) ? 1 : 0;
    out.push_back(n);
  }
  return out;
}

/// Brute-force count of pairwise compatible split families.
long split_family_count(int n) {
  const MarkSet all = (MarkSet{1} << n) - 1;
  std::vector<MarkSet> sides;
  for (MarkSet s = 1; s < all; ++s) {
    if ((s & 1u) && std::popcount(s) >= 2 && n - std::popcount(s) >= 2) sides.push_back(s);
  }
  auto ok = [&](MarkSet a, MarkSet b) {
    return (a & b) == 0 || (a & b) == a || (a & b) == b || (a | b) == all;
  };
  long count = 0;
  std::vector<MarkSet> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    ++count;
    for (std::size_t i = from; i < sides.size(); ++i) {
      if (std::all_of(chosen.begin(), chosen.end(), [&](MarkSet c) { return ok(c, sides[i]); })) {
        chosen.push_back(sides[i]);
        rec(i + 1);
        chosen.pop_back();
      }
    }
  };
  rec(0);
  return count;
}

/// Star-tree decorations counted from permutation tuples directly:
/// (n-1)! cyclic orders, times tuples with the right cycle types whose
/// ordered product is trivial and which generate a transitive group, times
/// injective cyc choices.
std::size_t star_tuple_count(const Portrait& p) {
  const int n = p.num_target_marks();
  const int d = p.degree;
  std::vector<std::vector<Perm>> choices;
  for (int b = 0; b < n; ++b) choices.push_back(perms_with_cycle_type(p.branch_profiles[b]));
  std::size_t tuples = 0;
  std::vector<Perm> tuple(n);
  // The cyclic order fixes leg 0 first; the count of valid tuples does
  // not depend on which order the remaining legs take.
  std::function<void(int, Perm)> rec = [&](int b, Perm product) {
    if (b == n) {
      if (!product.is_identity() || !is_transitive(tuple, d)) return;
      // Injective assignments of source marks to cycles, by brute force.
      std::size_t assignments = 0;
      std::vector<std::pair<int, int>> taken;
      std::function<void(int)> assign = [&](int a) {
        if (a == p.num_source_marks()) {
          ++assignments;
          return;
        }
        const int leg = p.source_marks[a].maps_to;
        for (const auto& c : tuple[leg].cycles()) {
          if (c.length() != p.source_marks[a].ram) continue;
          const std::pair<int, int> key{leg, c.min_point()};
          if (std::find(taken.begin(), taken.end(), key) != taken.end()) continue;
          taken.push_back(key);
          assign(a + 1);
          taken.pop_back();
        }
      };
      assign(0);
      tuples += assignments;
      return;
    }
    for (const auto& choice : choices[b]) {
      tuple[b] = choice;
      rec(b + 1, compose(choice, product));
    }
  };
  rec(0, Perm::identity(d));
  std::size_t orders = 1;
  for (int k = 2; k < n; ++k) orders *= k;
  return tuples * orders;
}

struct Line {
  int criterion;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(int criterion, bool pass, const std::string& detail) {
  lines.push_back({criterion, pass, detail});
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

/// Property suite; returns failure counts by property name.
std::map<std::string, long> property_suite() {
  std::map<std::string, long> failures;
  std::map<std::string, long> checks;
  auto check = [&](const std::string& name, bool ok) {
    ++checks[name];
    if (!ok) ++failures[name];
  };
  std::mt19937 rng(1234);

  struct Fixture {
    const char* name;
    bool exhaustive;
  };
  const Fixture all[] = {{"degree4", true}, {"degree3", true}, {"degree2_b5", false},
                         {"degree3_genus1", false}, {"degree1_b5", false}, {"degree2_genus1", false}};
  for (const auto& f : all) {
    const auto p = load(f.name);
    const auto s = stratify(p);
    const auto covers = covers_of(s);
    const auto hurwitz = build_hurwitz_complex(s, covers);
    const auto forget = forget_to_cmr(hurwitz, s, covers);
    std::map<std::pair<std::size_t, MarkSet>, std::size_t> parent;
    for (const auto& e : s.poset) parent[{e.child, e.contracted_split}] = e.parent;

    for (std::size_t i = 0; i < s.classes.size(); ++i) {
      const auto& c = s.classes[i];
      auto members = orbit(c.representative);
      if (!f.exhaustive && members.size() > 6) {
        std::shuffle(members.begin(), members.end(), rng);
        members.erase(members.begin() + 6, members.end());
      }
      std::set<std::string> codes;
      for (const auto& m : orbit(c.representative)) codes.insert(encode(m));
      for (const auto& m : members) {
        for (int h = 0; h < m.incidence().num_half_edges(); ++h) {
          const auto a = braid_move(m, h, Direction::Anticlockwise);
          check("braid round trip", braid_move(a, h, Direction::Clockwise) == m);
          check("braid round trip", braid_move(braid_move(m, h, Direction::Clockwise), h, Direction::Anticlockwise) == m);
          check("class invariant under braid moves", codes.count(encode(conjugation_normalize(a))) == 1);
        }
        const auto& perms = all_perms(p->degree);
        const std::size_t stride = f.exhaustive ? 1 : std::max<std::size_t>(1, perms.size() / 4);
        for (std::size_t t = 0; t < perms.size(); t += stride) {
          check("class invariant under conjugation",
                codes.count(encode(conjugation_normalize(global_conjugate(m, perms[t])))) == 1);
        }
        for (MarkSet e : c.tree.splits()) {
          const auto once = contract_decoration(m, e);
          check("contraction consistency", class_of(s, once) == static_cast<long>(parent.at({i, e})));
          for (MarkSet g : c.tree.splits()) {
            if (g == e) continue;
            check("contraction diamond",
                  contract_decoration(once, g) == contract_decoration(contract_decoration(m, g), e));
          }
        }
      }
      const auto& cover = covers[i];
      check("genus identity", cover.source.betti_number() + cover.source.total_weight() == p->genus);
      check("harmonicity", harmonicity_violations(cover).empty());
      for (int e = 0; e < c.tree.num_edges(); ++e) {
        int total = 0;
        for (const auto& ge : cover.source.edges) total += ge.tree_edge == e ? ge.expansion : 0;
        check("expansions sum to degree", total == p->degree);
      }
      for (int trial = 0; trial < 3; ++trial) {
        std::uniform_int_distribution<int> num(0, 9), den(1, 5);
        std::vector<ExtRational> y;
        for (int e = 0; e < c.codim; ++e) y.push_back(ExtRational(ExtRational::Rational(num(rng), den(rng))));
        check("tropTarget after tropPiF", trop_target(cover, trop_pi_f(cover, y)).lengths == y);
        check("tropTarget factors through the cover complex",
              trop_target(cover, y) == cmr_trop_target(forget, forget.cone_map[i], y));
      }
    }
  }
  for (const auto& [name, n] : checks) failures.emplace(name, 0);
  return failures;
}

}  // namespace

int main() {
  // 1. Degree-4 counts.
  {
    const auto t = timed_stratify(load("degree4"));
    auto counts = by_codim(t.s);
    const auto boundary = boundary_per_component(t.s);
    const bool ok = counts == std::map<int, int>{{0, 2}, {1, 36}} && t.s.classes.size() == 38 &&
                    boundary == std::vector<int>{18, 18} && t.seconds < kDegree4Budget;
    std::ostringstream d;
    d << "degree 4: " << counts[0] << " one-vertex + " << counts[1] << " one-edge classes, boundary per component";
    for (int b : boundary) d << " " << b;
    d << ", " << fmt_seconds(t.seconds) << " (budget " << kDegree4Budget << " s)";
    report(1, ok, d.str());
  }
  // 2. Degree-3 counts.
  {
    const auto t = timed_stratify(load("degree3"));
    auto counts = by_codim(t.s);
    const bool ok = t.s.components.size() == 1 && counts[1] == 6 && t.s.classes.size() == 7 &&
                    t.seconds < kDegree3Budget;
    std::ostringstream d;
    d << "degree 3: " << t.s.components.size() << " component, " << counts[1] << " boundary, "
      << t.s.classes.size() << " strata, " << fmt_seconds(t.seconds) << " (budget " << kDegree3Budget << " s)";
    report(2, ok, d.str());
  }
  // 3. Isomorphic covers across components, with witnesses in the report.
  {
    const auto s = stratify(load("degree4"));
    const auto covers = covers_of(s);
    const auto pairs = cross_component_cover_pairs(s, covers);
    bool verified = !pairs.empty();
    for (const auto& [a, b] : pairs) {
      verified = verified && cover_isomorphic(covers[a], covers[b]) && s.classes[a].component != s.classes[b].component &&
                 s.classes[a].id != s.classes[b].id;
    }
    std::ostringstream out, err;
    const int code = cli::run({"strata", fixture("degree4")}, out, err);
    const auto j = nlohmann::json::parse(out.str());
    const auto& w = j["same_cover_different_component"];
    const bool emitted = code == 0 && w.size() == pairs.size() && !w.empty();
    std::ostringstream d;
    d << pairs.size() << " cross-component pairs with isomorphic covers";
    if (!pairs.empty()) d << ", e.g. " << s.classes[pairs[0].first].short_id << " ~ " << s.classes[pairs[0].second].short_id;
    d << (emitted ? ", witnesses emitted" : ", witnesses missing from report");
    report(3, verified && emitted, d.str());
  }
  // 4. Degree 1.
  {
    const auto t4 = timed_stratify(load("degree1_b4"));
    const auto t5 = timed_stratify(load("degree1_b5"));
    const long o4 = split_family_count(4), o5 = split_family_count(5);
    const bool ok = static_cast<long>(t4.s.classes.size()) == o4 && o4 == 4 &&
                    static_cast<long>(t5.s.classes.size()) == o5 && o5 == 26 && t4.s.components.size() == 1 &&
                    t5.s.components.size() == 1 && t4.seconds < kDegree1Budget && t5.seconds < kDegree1Budget;
    std::ostringstream d;
    d << "degree 1: " << t4.s.classes.size() << " and " << t5.s.classes.size() << " strata (oracle " << o4 << ", "
      << o5 << "), " << fmt_seconds(t4.seconds + t5.seconds) << " (budget " << kDegree1Budget << " s each)";
    report(4, ok, d.str());
  }
  // 5. Property suite.
  {
    const auto failures = property_suite();
    long total = 0;
    std::ostringstream d;
    for (const auto& [name, n] : failures) {
      total += n;
      if (n > 0) d << name << ": " << n << " failures; ";
    }
    d << failures.size() << " properties, " << total << " failures";
    report(5, total <= kAllowedFailures, d.str());
  }
  // 6. Determinism.
  {
    bool same = true;
    for (const char* name : {"degree4", "degree2_b5", "degree3_genus1"}) {
      std::ostringstream a, b, c, err;
      cli::run({"strata", fixture(name), "--jobs", "1"}, a, err);
      cli::run({"strata", fixture(name), "--jobs", "4", "--shuffle-seed", "7"}, b, err);
      StratifyOptions o;
      o.jobs = 3;
      o.shuffle_seed = 123456789;
      c << stratification_to_json(stratify(load(name), o)).dump();
      same = same && a.str() == b.str() && !a.str().empty() &&
             c.str() == stratification_to_json(stratify(load(name))).dump();
    }
    report(6, same, same ? "byte-identical JSON across worker counts and shuffled orders" : "outputs differ");
  }
  // 7. Orbit sizes against independently enumerated decoration counts.
  {
    bool ok = true;
    std::ostringstream d;
    std::size_t trees = 0;
    for (const char* name : {"degree3", "degree4", "degree2_b5", "degree2_genus1", "degree3_genus1", "degree1_b5"}) {
      const auto p = load(name);
      const auto s = stratify(p);
      std::map<MarkedTree, std::size_t> raw, normalized;
      for (const auto& c : s.classes) {
        normalized[c.tree] += c.orbit_size;
        for (const auto& m : orbit(c.representative)) {
          std::set<std::string> conj;
          for (const auto& tau : all_perms(p->degree)) conj.insert(encode(global_conjugate(m, tau)));
          raw[c.tree] += conj.size();
        }
      }
      for (const auto& t : s.trees) {
        ++trees;
        const std::size_t enumerated = enumerate_decorations(p, t.tree).size();
        ok = ok && normalized[t.tree] == t.normalized_decorations && raw[t.tree] == enumerated;
        if (t.tree.num_edges() == 0) ok = ok && enumerated == star_tuple_count(*p);
      }
    }
    d << trees << " trees: orbit sizes sum to the enumerated decoration counts; star trees match tuple counts";
    report(7, ok, d.str());
  }

  const bool all = std::all_of(lines.begin(), lines.end(), [](const Line& l) { return l.pass; });
  std::printf("%s\n", all ? "ALL PASS" : "SOME FAILED");
  return all ? 0 : 1;
}
