#pragma once

#include <map>
#include <memory>
#include <string>

#include "hurwitz/covers.hpp"
#include "hurwitz/strata.hpp"

namespace fixtures {

inline hurwitz::PortraitPtr portrait(const std::string& name) {
  static std::map<std::string, hurwitz::PortraitPtr> cache;
  auto& slot = cache[name];
  if (!slot) {
    slot = std::make_shared<const hurwitz::Portrait>(
        hurwitz::load_portrait(std::string(HURWITZ_DATA_DIR) + "/" + name + ".json"));
  }
  return slot;
}

inline const hurwitz::Stratification& strata(const std::string& name) {
  static std::map<std::string, hurwitz::Stratification> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, hurwitz::stratify(portrait(name))).first;
  return it->second;
}

inline hurwitz::Perm perm(int degree, const char* text) { return hurwitz::Perm::parse(degree, text); }

/// {b1,b2} | {b3,b4}; half-edge 4 sits with b1, b2 and 5 with b3, b4.
inline hurwitz::MarkedTree figure4_tree() { return hurwitz::MarkedTree(4, {0b1100}); }

/// The degree-3 boundary decoration: ord (h b1 b2)(h' b3 b4).
inline hurwitz::Decoration figure4() {
  using hurwitz::Perm;
  std::vector<Perm> mon{perm(3, "(1 2)"), perm(3, "(2 3)"), perm(3, "(1 2)"),
                        perm(3, "(1 3)"), perm(3, "(1 2 3)"), perm(3, "(1 3 2)")};
  // a1 -> (2) in b4, a2 -> (1 2) in b1, a3 -> (2 3) in b2, a4 -> (3) in b3; 0-based points.
  return hurwitz::Decoration::from_cycles(portrait("degree3"), figure4_tree(), {{4, 0, 1}, {5, 2, 3}},
                                          mon, {1, 0, 1, 2});
}

}  // namespace fixtures
