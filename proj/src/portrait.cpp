#include "hurwitz/portrait.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hurwitz {

using nlohmann::json;

int Portrait::target_index(const std::string& name) const {
  for (int i = 0; i < num_target_marks(); ++i) {
    if (target_marks[i] == name) return i;
  }
  return -1;
}

int Portrait::source_index(const std::string& name) const {
  for (int i = 0; i < num_source_marks(); ++i) {
    if (source_marks[i].name == name) return i;
  }
  return -1;
}

namespace {

int riemann_hurwitz_excess(int degree, const std::vector<Partition>& profiles) {
  int total = 0;
  for (const auto& br : profiles) total += degree - br.length();
  return total - (2 * degree - 2);
}

}  // namespace

int derived_genus(int degree, const std::vector<Partition>& branch_profiles) {
  const int twice_genus = riemann_hurwitz_excess(degree, branch_profiles);
  if (twice_genus < 0 || twice_genus % 2 != 0) {
    std::ostringstream msg;
    msg << "Riemann-Hurwitz gives g = " << twice_genus << "/2";
    if (twice_genus % 2 == 0) msg << " = " << twice_genus / 2;
    msg << ", which is not a nonnegative integer";
    throw InputError(msg.str());
  }
  return twice_genus / 2;
}

std::vector<PortraitViolation> validate_portrait(const Portrait& p) {
  std::vector<PortraitViolation> report;
  auto add = [&](std::string kind, std::string mark, std::string message) {
    report.push_back({std::move(kind), std::move(mark), std::move(message)});
  };

  if (p.degree < 1 || p.degree > kMaxDegree) {
    add("degree", "", "degree " + std::to_string(p.degree) + " outside [1, " +
                          std::to_string(kMaxDegree) + "]");
  }
  if (p.num_target_marks() < 3) {
    add("target-marks", "", "need at least 3 target marks, got " +
                                std::to_string(p.num_target_marks()));
  }
  if (p.genus < 0) add("genus", "", "genus must be nonnegative");
  if (2 - 2 * p.genus - p.num_source_marks() >= 0) {
    add("euler-characteristic", "",
        "2 - 2g - |A| = " + std::to_string(2 - 2 * p.genus - p.num_source_marks()) +
            " is not negative");
  }
  const bool profiles_aligned =
      static_cast<int>(p.branch_profiles.size()) == p.num_target_marks();
  if (!profiles_aligned) {
    add("partition", "", "one branch profile per target mark is required");
  } else {
    for (int b = 0; b < p.num_target_marks(); ++b) {
      if (p.branch_profiles[b].sum() != p.degree) {
        add("partition", p.target_marks[b],
            "branch profile " + p.branch_profiles[b].to_string() + " does not sum to " +
                std::to_string(p.degree));
      }
    }
    const int excess = riemann_hurwitz_excess(p.degree, p.branch_profiles);
    if (excess != 2 * p.genus) {
      std::ostringstream msg;
      msg << "sum(d - len(br(b))) - 2g = " << excess + (2 * p.degree - 2) - 2 * p.genus
          << " but 2d - 2 = " << 2 * p.degree - 2;
      add("riemann-hurwitz", "", msg.str());
    }
  }

  std::vector<std::vector<int>> fibre(p.num_target_marks());
  for (const auto& a : p.source_marks) {
    if (a.ram < 1) {
      add("ramification", a.name,
          "local degree " + std::to_string(a.ram) + " must be at least 1");
    }
    if (a.maps_to < 0 || a.maps_to >= p.num_target_marks()) {
      add("mark-index", a.name, "maps to an unknown target mark");
      continue;
    }
    fibre[a.maps_to].push_back(a.ram);
  }
  if (profiles_aligned) {
    for (int b = 0; b < p.num_target_marks(); ++b) {
      if (!p.branch_profiles[b].contains_submultiset(fibre[b])) {
        add("sub-multiset", p.target_marks[b],
            "local degrees of the marks over " + p.target_marks[b] +
                " are not a sub-multiset of " + p.branch_profiles[b].to_string());
      }
    }
  }
  return report;
}

namespace {

[[noreturn]] void format_error(const std::string& what) { throw PortraitFormatError(what); }

void require_only_keys(const json& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) format_error("unknown field '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) format_error("missing field '" + key + "' in " + where);
  return *it;
}

int require_int(const json& value, const std::string& what) {
  if (!value.is_number_integer()) format_error(what + " must be an integer");
  return value.get<int>();
}

std::string require_string(const json& value, const std::string& what) {
  if (!value.is_string()) format_error(what + " must be a string");
  return value.get<std::string>();
}

}  // namespace

Portrait portrait_from_json(const json& doc) {
  if (!doc.is_object()) format_error("portrait document must be a JSON object");
  require_only_keys(doc, {"degree", "genus", "target_marks", "source_marks", "branch_profiles"},
                    "portrait");

  Portrait p;
  p.degree = require_int(require(doc, "degree", "portrait"), "degree");

  const json& targets = require(doc, "target_marks", "portrait");
  if (!targets.is_array()) format_error("target_marks must be an array");
  std::set<std::string> seen;
  for (const auto& t : targets) {
    auto name = require_string(t, "target mark");
    if (!seen.insert(name).second) format_error("duplicate mark name '" + name + "'");
    p.target_marks.push_back(std::move(name));
  }

  const json& sources = require(doc, "source_marks", "portrait");
  if (!sources.is_array()) format_error("source_marks must be an array");
  for (const auto& s : sources) {
    if (!s.is_object()) format_error("each source mark must be an object");
    require_only_keys(s, {"name", "maps_to", "ram"}, "source mark");
    SourceMark a;
    a.name = require_string(require(s, "name", "source mark"), "source mark name");
    if (!seen.insert(a.name).second) format_error("duplicate mark name '" + a.name + "'");
    const auto target = require_string(require(s, "maps_to", "source mark"), "maps_to");
    a.maps_to = p.target_index(target);
    if (a.maps_to < 0) format_error("source mark '" + a.name + "' maps to unknown '" + target + "'");
    a.ram = require_int(require(s, "ram", "source mark"), "ram");
    p.source_marks.push_back(std::move(a));
  }

  const json& profiles = require(doc, "branch_profiles", "portrait");
  if (!profiles.is_object()) format_error("branch_profiles must be an object");
  for (const auto& [key, value] : profiles.items()) {
    if (p.target_index(key) < 0) format_error("branch profile for unknown mark '" + key + "'");
  }
  for (const auto& name : p.target_marks) {
    const json& parts = require(profiles, name, "branch_profiles");
    if (!parts.is_array()) format_error("branch profile of '" + name + "' must be an array");
    std::vector<int> values;
    for (const auto& v : parts) {
      const int part = require_int(v, "branch profile entry");
      if (part < 1) format_error("branch profile of '" + name + "' has a nonpositive part");
      values.push_back(part);
    }
    p.branch_profiles.emplace_back(std::move(values));
  }

  if (auto it = doc.find("genus"); it != doc.end()) {
    p.genus = require_int(*it, "genus");
  } else {
    try {
      p.genus = derived_genus(p.degree, p.branch_profiles);
    } catch (const InputError& e) {
      throw PortraitGenusError(e.what());
    }
  }
  return p;
}

Portrait parse_portrait(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PortraitFormatError(std::string("malformed JSON: ") + e.what());
  }
  return portrait_from_json(doc);
}

Portrait load_portrait(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PortraitFormatError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_portrait(buffer.str());
}

json portrait_to_json(const Portrait& p) {
  json doc;
  doc["degree"] = p.degree;
  doc["genus"] = p.genus;
  doc["target_marks"] = p.target_marks;
  json sources = json::array();
  for (const auto& a : p.source_marks) {
    const bool known = a.maps_to >= 0 && a.maps_to < p.num_target_marks();
    sources.push_back({{"name", a.name},
                       {"maps_to", known ? p.target_marks[a.maps_to] : std::string()},
                       {"ram", a.ram}});
  }
  doc["source_marks"] = std::move(sources);
  json profiles = json::object();
  for (std::size_t b = 0; b < p.target_marks.size() && b < p.branch_profiles.size(); ++b) {
    profiles[p.target_marks[b]] = p.branch_profiles[b].parts();
  }
  doc["branch_profiles"] = std::move(profiles);
  return doc;
}

std::string canonical_serialization(const Portrait& p) { return portrait_to_json(p).dump(); }

}  // namespace hurwitz
