#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/decorations.hpp"

namespace hurwitz {

/// The conjugate of `d` whose encoding is smallest over all of S_d.
Decoration conjugation_normalize(const Decoration& d);

/// Conjugation-normalized decorations reachable from `d` by braid moves at
/// every half-edge in both directions, in breadth-first order.
std::vector<Decoration> orbit(const Decoration& d);

/// Smallest encoding over the orbit: the Hurwitz class identifier.
std::string canonical_form(const Decoration& d);

/// Stable 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string short_hash(const std::string& bytes);

/// One Hurwitz equivalence class of decorated trees.
struct HurwitzClass {
  std::string id;        // canonical encoding (bytes)
  std::string short_id;  // short_hash(id)
  MarkedTree tree;
  int codim = 0;
  int dim = 0;
  Decoration representative;
  std::size_t orbit_size = 0;
  /// Index into Stratification::classes of the one-vertex class reached by
  /// contracting every edge.
  std::size_t component = 0;
};

struct PosetEdge {
  std::size_t child = 0;   // class being contracted
  std::size_t parent = 0;  // class of the contraction
  MarkSet contracted_split = 0;
};

struct TreeSummary {
  MarkedTree tree;
  /// Number of decorations before conjugation normalization.
  std::size_t decorations = 0;
  std::size_t normalized_decorations = 0;
};

struct Stratification {
  PortraitPtr portrait;
  /// Grouped by tree in enumeration order, sorted by id within a tree.
  std::vector<HurwitzClass> classes;
  std::vector<PosetEdge> poset;
  /// Indices of the one-vertex classes; each is its own component.
  std::vector<std::size_t> components;
  std::vector<TreeSummary> trees;

  bool empty() const { return classes.empty(); }
  /// Class index by full id or short id; -1 if absent.
  long find(const std::string& id_or_short) const;
};

struct StratifyOptions {
  std::optional<int> max_codim;
  int jobs = 1;
  /// When set, the enumeration order within each tree is shuffled, which
  /// changes the traversal schedule but never the result.
  std::optional<std::uint64_t> shuffle_seed;
};

Stratification stratify(const PortraitPtr& portrait, const StratifyOptions& options = {});

/// Index of the one-vertex class a class contracts to.
std::size_t component_of(const Stratification& s, std::size_t class_index);

/// Class index of an arbitrary decoration, looked up via its canonical form.
long class_of(const Stratification& s, const Decoration& d);

nlohmann::json stratification_to_json(const Stratification& s, bool verbose = false);
/// Hasse diagram of the contraction poset, one rank per codimension.
std::string poset_to_dot(const Stratification& s);
/// Counts by codimension and by component.
std::string stratification_table(const Stratification& s);

}  // namespace hurwitz
