#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/perm.hpp"

namespace hurwitz {

/// A marked point of the source surface: its label, the target mark it maps
/// to (index into Portrait::target_marks) and its local degree.
struct SourceMark {
  std::string name;
  int maps_to = 0;
  int ram = 1;

  bool operator==(const SourceMark&) const = default;
};

/// Branching data of a Hurwitz space of maps to the projective line.
///
/// Mark labels are opaque strings. Their order in `target_marks` and
/// `source_marks` is the total order every canonical form downstream uses.
struct Portrait {
  int genus = 0;
  int degree = 1;
  std::vector<std::string> target_marks;
  std::vector<SourceMark> source_marks;
  /// Indexed like target_marks.
  std::vector<Partition> branch_profiles;

  int num_target_marks() const { return static_cast<int>(target_marks.size()); }
  int num_source_marks() const { return static_cast<int>(source_marks.size()); }
  /// Index of a target mark by name, or -1.
  int target_index(const std::string& name) const;
  /// Index of a source mark by name, or -1.
  int source_index(const std::string& name) const;

  bool operator==(const Portrait&) const = default;
};

struct PortraitViolation {
  /// One of: target-marks, euler-characteristic, partition,
  /// riemann-hurwitz, sub-multiset, ramification, mark-index.
  std::string kind;
  /// Offending mark name; empty for global conditions.
  std::string mark;
  std::string message;
};

/// Every violated portrait invariant, one entry each. Empty iff valid.
std::vector<PortraitViolation> validate_portrait(const Portrait& portrait);

/// The genus forced by the Riemann-Hurwitz formula. Throws InputError
/// naming the computed value when it is negative or not an integer.
int derived_genus(int degree, const std::vector<Partition>& branch_profiles);

/// Malformed portrait document: bad JSON, wrong types, unknown fields.
class PortraitFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed document whose genus is absent and cannot be derived.
class PortraitGenusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Portrait portrait_from_json(const nlohmann::json& doc);
Portrait parse_portrait(const std::string& text);
Portrait load_portrait(const std::filesystem::path& path);

nlohmann::json portrait_to_json(const Portrait& portrait);
/// Compact dump with sorted keys; byte-identical for equal portraits.
std::string canonical_serialization(const Portrait& portrait);

}  // namespace hurwitz
