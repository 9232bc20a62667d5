#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

/// Raised when an operation receives input that violates its precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails. Reaching one of these
/// for valid input means the library has a bug.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kMaxDegree = 16;

/// Multiset of positive integers stored in non-increasing order.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int sum() const { return sum_; }
  int length() const { return static_cast<int>(parts_.size()); }

  /// Counted multiset containment of `sub` in this partition.
  bool contains_submultiset(std::span<const int> sub) const;

  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int sum_ = 0;
};

/// A cycle of a permutation, rotated to start at its minimum point.
/// Points are 0-based internally; to_string() prints 1-based points.
struct Cycle {
  std::vector<int> support;

  int min_point() const { return support.front(); }
  int length() const { return static_cast<int>(support.size()); }
  bool contains(int point) const;
  std::string to_string() const;

  auto operator<=>(const Cycle&) const = default;
};

/// Element of the symmetric group S_d on the points {0, ..., d-1}.
///
/// All textual input and output uses the 1-based points of the usual cycle
/// notation, so `Perm::parse(3, "(1 2)")` swaps the internal points 0 and 1.
class Perm {
 public:
  Perm() = default;

  static Perm identity(int degree);
  /// Builds a permutation from its one-line notation with 1-based images.
  static Perm from_images(std::span<const int> images_one_based);
  /// Builds a permutation from disjoint cycles of 1-based points. Points
  /// not mentioned are fixed.
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
  /// Parses cycle notation such as "(1 3)(2)" or "()" for the identity.
  static Perm parse(int degree, std::string_view text);

  int degree() const { return degree_; }
  int operator()(int point) const { return images_[point]; }

  Perm inverse() const;
  bool is_identity() const;

  /// All cycles including fixed points, ordered by minimum point.
  std::vector<Cycle> cycles() const;
  /// The cycle through `point`.
  Cycle cycle_of(int point) const;
  Partition cycle_type() const;

  /// Cycle notation with fixed points omitted; "()" for the identity.
  std::string to_string() const;
  /// Cycle notation including fixed points, e.g. "(1 2)(3)".
  std::string to_full_string() const;
  /// 1-based one-line notation.
  std::vector<int> images() const;

  auto operator<=>(const Perm&) const = default;

 private:
  friend Perm compose(const Perm& p, const Perm& q);
  friend Perm conjugate(const Perm& p, const Perm& tau);

  std::uint8_t degree_ = 0;
  std::array<std::uint8_t, kMaxDegree> images_{};
};

/// Right-factor-first product: compose(p, q)(i) == p(q(i)).
Perm compose(const Perm& p, const Perm& q);

/// tau * p * tau^-1.
Perm conjugate(const Perm& p, const Perm& tau);

/// Image of a cycle under relabelling by tau, re-rotated to its new minimum.
Cycle relabel(const Cycle& c, const Perm& tau);

/// True iff the group generated by `perms` has one orbit on {0..degree-1}.
bool is_transitive(std::span<const Perm> perms, int degree);

/// Orbits of the group generated by `perms`, each sorted, ordered by minimum.
std::vector<std::vector<int>> orbits(std::span<const Perm> perms, int degree);

/// Every element of S_d in lexicographic order of one-line notation.
/// The result is cached per degree.
const std::vector<Perm>& all_perms(int degree);

/// Every permutation of S_d with the given cycle type.
std::vector<Perm> perms_with_cycle_type(const Partition& type);

}  // namespace hurwitz
