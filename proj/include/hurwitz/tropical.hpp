#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "json.hpp"

#include "hurwitz/covers.hpp"
#include "hurwitz/strata.hpp"

namespace hurwitz {

/// Nonnegative-or-not exact rational extended by a single infinite value.
/// inf + x = inf, inf * positive = inf; 0 * inf is rejected.
class ExtRational {
 public:
  using Rational = boost::rational<std::int64_t>;

  ExtRational() = default;
  ExtRational(std::int64_t n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  ExtRational(Rational r) : value_(r) {}      // NOLINT(google-explicit-constructor)
  static ExtRational infinity();
  /// Accepts "inf", integers and "p/q".
  static ExtRational parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_.numerator() == 0; }
  /// Finite value; throws InputError when infinite.
  const Rational& value() const;

  ExtRational operator+(const ExtRational& other) const;
  ExtRational operator*(const ExtRational& other) const;
  /// Division by a finite positive rational.
  ExtRational operator/(const ExtRational& other) const;
  ExtRational& operator+=(const ExtRational& other) { return *this = *this + other; }

  bool operator==(const ExtRational& other) const;
  std::strong_ordering operator<=>(const ExtRational& other) const;

  std::string to_string() const;

 private:
  // Sign tests go through numerator(): boost's mixed rational/int
  // comparisons recurse under C++20 rewritten operators.
  Rational value_{0};
  bool infinite_ = false;
};

/// Face of a cone: setting coordinate `edge` to zero lands in `cone`, whose
/// coordinate j equals this cone's coordinate coordinate_map[j].
struct ConeFace {
  int edge = 0;
  std::size_t cone = 0;
  std::vector<int> coordinate_map;
};

struct Cone {
  std::string id;
  /// Coordinate names, one per edge of the indexing object.
  std::vector<std::string> edges;
  std::vector<ConeFace> faces;
  /// Expansion lcms per coordinate, where the complex carries them.
  std::vector<int> lcms;
  std::size_t component = 0;

  int dim() const { return static_cast<int>(edges.size()); }
};

/// Extended orthants glued along faces. Cone dimension is the number of
/// coordinates; every face is itself a cone of the complex.
struct ExtendedConeComplex {
  std::string name;
  std::vector<Cone> cones;
  std::size_t num_components = 0;

  /// Face obtained by zeroing a coordinate. Throws InputError if absent.
  const ConeFace& face(std::size_t cone, int edge) const;
  /// Assigns components from the face incidence.
  void compute_components();
};

struct ConePoint {
  std::size_t cone = 0;
  std::vector<ExtRational> coords;

  bool operator==(const ConePoint&) const = default;
};

/// One cone per class, coordinates indexed by the class's tree edges.
ExtendedConeComplex build_hurwitz_complex(const Stratification& s, const std::vector<CombCover>& covers);
/// One cone per tree carrying at least one class.
ExtendedConeComplex build_target_complex(const Stratification& s);
/// One cone per isomorphism class of source strata, closed under faces.
ExtendedConeComplex build_source_complex(const Stratification& s, const std::vector<CombCover>& covers);

/// Contracts zero coordinates through face maps until none remain.
ConePoint normalize_point(const ConePoint& p, const ExtendedConeComplex& complex);

struct MetricTree {
  MarkedTree tree;
  /// Indexed like tree.splits(); legs are implicitly infinite.
  std::vector<ExtRational> lengths;

  /// Zero-length edges contracted.
  MetricTree normalized() const;
  bool operator==(const MetricTree&) const = default;
};

struct MetricGraph {
  StableGraph graph;
  std::vector<ExtRational> lengths;

  /// Zero-length edges contracted.
  MetricGraph normalized() const;
};

/// Isomorphism invariant of a metric graph: the structural certificate of
/// its zero-contracted form and the smallest length vector over all
/// labellings realizing it.
struct MetricGraphKey {
  std::vector<long> certificate;
  std::vector<ExtRational> lengths;

  bool operator==(const MetricGraphKey&) const = default;
  auto operator<=>(const MetricGraphKey&) const = default;
};
MetricGraphKey metric_key(const MetricGraph& g);

MetricTree trop_target(const CombCover& cover, const std::vector<ExtRational>& x);
MetricGraph trop_source(const CombCover& cover, const std::vector<ExtRational>& x);
/// x_e = y_e / L(e).
std::vector<ExtRational> trop_pi_f(const CombCover& cover, const std::vector<ExtRational>& y);

/// The cone complex of combinatorial admissible covers and the forgetful
/// map to it, which is the identity on coordinates.
struct CmrForget {
  ExtendedConeComplex complex;
  /// Hurwitz cone (class) index to CMR cone index.
  std::vector<std::size_t> cone_map;
  /// For each CMR cone, the first class mapping to it.
  std::vector<std::size_t> representative;
  std::vector<MarkedTree> trees;

  std::vector<std::size_t> fiber(std::size_t cmr_cone) const;
};
CmrForget forget_to_cmr(const ExtendedConeComplex& hurwitz, const Stratification& s,
                        const std::vector<CombCover>& covers);
/// Tropical target map of the CMR complex, computed from the cone alone.
MetricTree cmr_trop_target(const CmrForget& f, std::size_t cmr_cone, const std::vector<ExtRational>& x);

nlohmann::json complex_to_json(const ExtendedConeComplex& c);
nlohmann::json metric_tree_to_json(const MetricTree& t, const Portrait& p);
nlohmann::json metric_graph_to_json(const MetricGraph& g, const Portrait& p);

}  // namespace hurwitz
