#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hurwitz/tropical.hpp"

using namespace hurwitz;

namespace {

using Q = ExtRational;

const char* kFixtures[] = {"degree3", "degree4", "degree1_b4", "degree1_b5",
                           "degree2_genus1", "degree2_b5", "degree3_genus1"};

std::vector<Q> random_point(std::mt19937& rng, int dim, bool allow_zero) {
  std::uniform_int_distribution<int> num(allow_zero ? 0 : 1, 6), den(1, 4);
  std::vector<Q> out;
  for (int i = 0; i < dim; ++i) out.push_back(Q(Q::Rational(num(rng), den(rng))));
  return out;
}

std::size_t count_dim(const ExtendedConeComplex& c, int dim) {
  return static_cast<std::size_t>(
      std::count_if(c.cones.begin(), c.cones.end(), [&](const Cone& k) { return k.dim() == dim; }));
}

}  // namespace

TEST_CASE("extended rationals") {
  CHECK(Q::parse("3/6") == Q(Q::Rational(1, 2)));
  CHECK(Q::parse("inf").is_infinite());
  CHECK(Q::parse(" 4 ").to_string() == "4");
  CHECK((Q(1) + Q::infinity()).is_infinite());
  CHECK((Q(2) * Q::infinity()).is_infinite());
  CHECK_THROWS_AS(Q(0) * Q::infinity(), InputError);
  CHECK((Q::infinity() / Q(3)).is_infinite());
  CHECK_THROWS_AS(Q(1) / Q(0), InputError);
  CHECK_THROWS_AS(Q::parse("1/0"), InputError);
  CHECK_THROWS_AS(Q::parse("x"), InputError);
  CHECK(Q(Q::Rational(3, 2)).to_string() == "3/2");
  CHECK(Q(5) < Q::infinity());
  CHECK(Q(Q::Rational(1, 3)) < Q(Q::Rational(1, 2)));
  CHECK(Q::infinity() == Q::infinity());
}

TEST_CASE("hurwitz complexes of the fixtures") {
  SUBCASE("degree 3: six rays on one apex") {
    const auto& s = fixtures::strata("degree3");
    const auto c = build_hurwitz_complex(s, covers_of(s));
    CHECK(count_dim(c, 0) == 1);
    CHECK(count_dim(c, 1) == 6);
    CHECK(c.num_components == 1);
    for (const auto& cone : c.cones) {
      if (cone.dim() == 1) CHECK(c.cones[c.face(&cone - c.cones.data(), 0).cone].dim() == 0);
    }
  }
  SUBCASE("degree 4: two components of 18 rays") {
    const auto& s = fixtures::strata("degree4");
    const auto c = build_hurwitz_complex(s, covers_of(s));
    CHECK(c.num_components == 2);
    std::vector<int> rays(2, 0);
    for (const auto& cone : c.cones) rays[cone.component] += cone.dim() == 1;
    CHECK(rays == std::vector<int>{18, 18});
  }
  SUBCASE("degree 1: the target fan") {
    const auto& s = fixtures::strata("degree1_b4");
    const auto c = build_target_complex(s);
    CHECK(count_dim(c, 0) == 1);
    CHECK(count_dim(c, 1) == 3);
    CHECK(build_hurwitz_complex(s, covers_of(s)).cones.size() == 4);
  }
}

TEST_CASE("face maps compose like contractions") {
  for (const char* name : {"degree2_b5", "degree3_genus1"}) {
    const auto& s = fixtures::strata(name);
    for (const auto& c : {build_hurwitz_complex(s, covers_of(s)), build_target_complex(s)}) {
      for (std::size_t k = 0; k < c.cones.size(); ++k) {
        const Cone& cone = c.cones[k];
        CHECK(static_cast<int>(cone.faces.size()) == cone.dim());
        for (const auto& f : cone.faces) {
          CHECK(c.cones[f.cone].dim() == cone.dim() - 1);
          CHECK(c.cones[f.cone].component == cone.component);
        }
        for (int e = 0; e < cone.dim(); ++e) {
          for (int g = 0; g < cone.dim(); ++g) {
            if (e == g) continue;
            // Zero e then g, versus g then e, as points of the same cone.
            std::vector<Q> x(cone.dim(), Q(1));
            x[e] = Q(0);
            x[g] = Q(0);
            const auto p = normalize_point({k, x}, c);
            const auto& fe = c.face(k, e);
            const auto& fg = c.face(k, g);
            const int ge_in_e = static_cast<int>(std::find(fe.coordinate_map.begin(), fe.coordinate_map.end(), g) -
                                                 fe.coordinate_map.begin());
            const int eg_in_g = static_cast<int>(std::find(fg.coordinate_map.begin(), fg.coordinate_map.end(), e) -
                                                 fg.coordinate_map.begin());
            CHECK(c.face(fe.cone, ge_in_e).cone == c.face(fg.cone, eg_in_g).cone);
            CHECK(p.cone == c.face(fe.cone, ge_in_e).cone);
          }
        }
      }
    }
  }
}

TEST_CASE("normalizing points") {
  const auto& s = fixtures::strata("degree2_b5");
  const auto c = build_hurwitz_complex(s, covers_of(s));
  for (std::size_t k = 0; k < c.cones.size(); ++k) {
    const int dim = c.cones[k].dim();
    const auto apex = normalize_point({k, std::vector<Q>(dim, Q(0))}, c);
    CHECK(apex.coords.empty());
    CHECK(c.cones[apex.cone].component == c.cones[k].component);
    std::vector<Q> interior(dim, Q(2));
    CHECK(normalize_point({k, interior}, c) == ConePoint{k, interior});
    if (dim == 2) {
      const auto p = normalize_point({k, {Q(0), Q(5)}}, c);
      CHECK(p.cone == c.face(k, 0).cone);
      CHECK(p.coords == std::vector<Q>{Q(5)});
      CHECK(normalize_point(p, c) == p);
    }
  }
}

TEST_CASE("tropical maps on the degree-3 boundary class") {
  const CombCover cover = comb_cover(fixtures::figure4());
  const MetricTree t = trop_target(cover, {Q(1)});
  CHECK(t.lengths == std::vector<Q>{Q(3)});
  const MetricGraph g = trop_source(cover, {Q(1)});
  CHECK(g.lengths == std::vector<Q>{Q(1)});
  const auto x = trop_pi_f(cover, {Q(3)});
  CHECK(x == std::vector<Q>{Q(1)});
  CHECK(trop_target(cover, x).lengths == std::vector<Q>{Q(3)});
  CHECK(trop_target(cover, {Q(0)}).lengths == std::vector<Q>{Q(0)});
  CHECK(trop_source(cover, {Q(0)}).lengths == std::vector<Q>{Q(0)});
  CHECK(trop_target(cover, {Q::infinity()}).lengths.front().is_infinite());
  CHECK_THROWS_AS(trop_target(cover, {Q(1), Q(2)}), InputError);
  CHECK_THROWS_AS(trop_target(cover, {Q(-1)}), InputError);
}

TEST_CASE("source lengths add along absorbed chains") {
  // Degree 1, |B| = 5 with only three labelled legs: the middle vertex of a
  // caterpillar loses its leg and is absorbed.
  const auto p = std::make_shared<const Portrait>(parse_portrait(R"({
    "degree": 1, "target_marks": ["b1", "b2", "b3", "b4", "b5"],
    "source_marks": [{"name": "a1", "maps_to": "b1", "ram": 1},
                     {"name": "a2", "maps_to": "b2", "ram": 1},
                     {"name": "a3", "maps_to": "b4", "ram": 1},
                     {"name": "a4", "maps_to": "b5", "ram": 1}],
    "branch_profiles": {"b1": [1], "b2": [1], "b3": [1], "b4": [1], "b5": [1]}})"));
  // {b1,b2} | b3 | {b4,b5}
  const MarkedTree t(5, {0b11000, 0b11100});
  const auto decorations = enumerate_decorations(p, t);
  // One per choice of cyclic orders at the three vertices.
  REQUIRE(decorations.size() == 8);
  const CombCover cover = comb_cover(decorations.front());
  const MetricGraph g = trop_source(cover, {Q(2), Q(Q::Rational(1, 3))});
  REQUIRE(g.graph.num_edges() == 1);
  CHECK(g.graph.paths.front().size() == 2);
  CHECK(g.lengths.front() == Q(Q::Rational(7, 3)));
}

TEST_CASE("tropical properties over every fixture") {
  std::mt19937 rng(2024);
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto& s = fixtures::strata(name);
    const auto covers = covers_of(s);
    const auto hurwitz = build_hurwitz_complex(s, covers);
    const auto forget = forget_to_cmr(hurwitz, s, covers);
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
      const auto& cover = covers[i];
      const int dim = s.classes[i].codim;
      for (int trial = 0; trial < 4; ++trial) {
        const auto y = random_point(rng, dim, true);
        // tropTarget after tropPiF returns the input lengths.
        CHECK(trop_target(cover, trop_pi_f(cover, y)).lengths == y);
        const auto x = random_point(rng, dim, trial % 2 == 0);
        // Factorization through the cover complex.
        CHECK(trop_target(cover, x) == cmr_trop_target(forget, forget.cone_map[i], x));
        // Face naturality.
        const auto n = normalize_point({i, x}, hurwitz);
        CHECK(trop_target(cover, x).normalized() == trop_target(covers[n.cone], n.coords).normalized());
        CHECK(metric_key(trop_source(cover, x)) == metric_key(trop_source(covers[n.cone], n.coords)));
        // Genus of the metric source.
        CHECK(trop_source(cover, x).normalized().graph.genus() == s.portrait->genus);
      }
      // Integral structure on lattice points.
      std::vector<Q> lattice(dim);
      for (int e = 0; e < dim; ++e) lattice[e] = Q(e + 1);
      for (const auto& len : trop_target(cover, lattice).lengths) CHECK(len.value().denominator() == 1);
      // Every expansion divides its lcm, so source lengths are integers too.
      for (const auto& len : trop_source(cover, lattice).lengths) CHECK(len.value().denominator() == 1);
    }
    // The forgetful map is onto with fibres summing to the class count.
    std::size_t total = 0;
    for (std::size_t k = 0; k < forget.complex.cones.size(); ++k) {
      const auto fib = forget.fiber(k);
      CHECK(!fib.empty());
      total += fib.size();
      CHECK(forget.complex.cones[k].dim() == hurwitz.cones[fib.front()].dim());
    }
    CHECK(total == s.classes.size());
  }
}

TEST_CASE("forgetful map examples") {
  const auto& s4 = fixtures::strata("degree4");
  const auto covers4 = covers_of(s4);
  const auto f4 = forget_to_cmr(build_hurwitz_complex(s4, covers4), s4, covers4);
  CHECK(f4.complex.cones.size() < s4.classes.size());
  const auto pairs = cross_component_cover_pairs(s4, covers4);
  REQUIRE(!pairs.empty());
  CHECK(f4.cone_map[pairs.front().first] == f4.cone_map[pairs.front().second]);

  const auto& s1 = fixtures::strata("degree1_b5");
  const auto covers1 = covers_of(s1);
  const auto f1 = forget_to_cmr(build_hurwitz_complex(s1, covers1), s1, covers1);
  CHECK(f1.complex.cones.size() == s1.classes.size());
}

TEST_CASE("source complex is closed under faces") {
  const auto& s = fixtures::strata("degree3_genus1");
  const auto c = build_source_complex(s, covers_of(s));
  CHECK(c.num_components == 1);
  for (const auto& cone : c.cones) {
    CHECK(static_cast<int>(cone.faces.size()) == cone.dim());
    for (const auto& f : cone.faces) CHECK(c.cones[f.cone].dim() == cone.dim() - 1);
  }
}

TEST_CASE("metric graph keys see through automorphisms") {
  // Two parallel edges between weight-1 vertices: swapping lengths is an
  // automorphism.
  StableGraph g{{1, 1}, {{0, 1}, {0, 1}}, {}, {}};
  const MetricGraph a{g, {Q(1), Q(2)}};
  const MetricGraph b{g, {Q(2), Q(1)}};
  CHECK(metric_key(a) == metric_key(b));
  const MetricGraph z{g, {Q(0), Q(2)}};
  CHECK(metric_key(z).lengths == std::vector<Q>{Q(2)});
}

TEST_CASE("complex export") {
  const auto& s = fixtures::strata("degree3");
  const auto j = complex_to_json(build_hurwitz_complex(s, covers_of(s)));
  CHECK(j["cones"].size() == 7);
  CHECK(j["components"] == 1);
  CHECK(j["cones"][1]["faces"].size() == 1);
  CHECK(j["cones"][1].contains("L"));
  const auto t = metric_tree_to_json(trop_target(comb_cover(fixtures::figure4()), {Q(1)}), *s.portrait);
  CHECK(t["edges"][0]["length"] == "3");
  CHECK(t["legs"] == "inf");
}
