#include "hurwitz/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include "CLI11.hpp"

#include "hurwitz/covers.hpp"
#include "hurwitz/strata.hpp"
#include "hurwitz/tropical.hpp"

namespace hurwitz::cli {

namespace {

/// Domain failure reported with exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// I/O failure reported with exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string out_path;
  std::string dot_path;
  std::string format = "json";
  std::optional<int> max_codim;
  int jobs = 1;
  std::optional<std::uint64_t> shuffle_seed;
  bool verbose = false;
  std::string class_id;
  std::vector<std::string> coords;
  bool from_target = false;
  std::string which = "hurwitz";
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw IoError("failed writing " + path);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file(o.out_path, text);
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

PortraitPtr load_valid(const Options& o) {
  auto p = std::make_shared<const Portrait>(load_portrait(o.input));
  const auto violations = validate_portrait(*p);
  if (!violations.empty()) {
    std::string message = "invalid portrait:";
    for (const auto& v : violations) message += "\n  " + v.kind + ": " + v.message;
    throw DomainError(message);
  }
  return p;
}

Stratification stratify_with(const Options& o, const PortraitPtr& p) {
  StratifyOptions so;
  so.max_codim = o.max_codim;
  so.jobs = o.jobs;
  so.shuffle_seed = o.shuffle_seed;
  return stratify(p, so);
}

std::size_t find_class(const Stratification& s, const std::string& id) {
  const long i = s.find(id);
  if (i < 0) throw DomainError("unknown class id " + id);
  return static_cast<std::size_t>(i);
}

int cmd_validate(const Options& o, std::ostream& out) {
  nlohmann::json violations = nlohmann::json::array();
  try {
    const auto p = load_portrait(o.input);
    for (const auto& v : validate_portrait(p)) {
      violations.push_back({{"kind", v.kind}, {"mark", v.mark}, {"message", v.message}});
    }
  } catch (const PortraitGenusError& e) {
    violations.push_back({{"kind", "riemann-hurwitz"}, {"mark", ""}, {"message", e.what()}});
  }
  if (o.format == "table") {
    std::string text = violations.empty() ? "valid\n" : "";
    for (const auto& v : violations) text += v["kind"].get<std::string>() + ": " + v["message"].get<std::string>() + "\n";
    emit(o, text, out);
  } else {
    emit(o, dump({{"valid", violations.empty()}, {"violations", violations}}), out);
  }
  return violations.empty() ? kOk : kDomainError;
}

int cmd_strata(const Options& o, std::ostream& out) {
  const auto p = load_valid(o);
  const auto s = stratify_with(o, p);
  const auto covers = covers_of(s);
  const auto pairs = cross_component_cover_pairs(s, covers);
  if (!o.dot_path.empty()) write_file(o.dot_path, poset_to_dot(s));
  if (o.format == "dot") {
    emit(o, poset_to_dot(s), out);
  } else if (o.format == "table") {
    std::string text = stratification_table(s);
    text += "same cover, different component: " + std::to_string(pairs.size()) + " pairs\n";
    emit(o, text, out);
  } else {
    auto j = stratification_to_json(s, o.verbose);
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& [a, b] : pairs) witnesses.push_back({s.classes[a].short_id, s.classes[b].short_id});
    j["same_cover_different_component"] = std::move(witnesses);
    emit(o, dump(j), out);
  }
  return kOk;
}

int cmd_cover(const Options& o, std::ostream& out) {
  const auto p = load_valid(o);
  const auto s = stratify_with(o, p);
  const auto& c = s.classes[find_class(s, o.class_id)];
  const CombCover cover = comb_cover(c);
  if (!o.dot_path.empty()) write_file(o.dot_path, cover_to_dot(cover));
  if (o.format == "dot") {
    emit(o, cover_to_dot(cover), out);
  } else if (o.format == "table") {
    const auto stable = source_stratum(cover);
    std::string text = "class " + c.short_id + " over " + tree_key(c.tree, p->target_marks) + "\n";
    text += "source: " + std::to_string(cover.source.vertices.size()) + " vertices, " +
            std::to_string(cover.source.edges.size()) + " edges, genus " +
            std::to_string(cover.source.genus()) + "\n";
    text += "stable: " + std::to_string(stable.num_vertices()) + " vertices, " +
            std::to_string(stable.num_edges()) + " edges\n";
    for (int e = 0; e < c.tree.num_edges(); ++e) {
      text += "L(" + split_label(c.tree.splits()[e], p->target_marks) + ") = " +
              std::to_string(expansion_lcm(cover, e)) + "\n";
    }
    text += std::string("harmonic: ") + (harmonicity_violations(cover).empty() ? "yes" : "no") + "\n";
    emit(o, text, out);
  } else {
    auto j = cover_to_json(cover);
    j["class"] = c.short_id;
    emit(o, dump(j), out);
  }
  return kOk;
}

int cmd_tropical(const Options& o, std::ostream& out) {
  const auto p = load_valid(o);
  const auto s = stratify_with(o, p);
  const auto& c = s.classes[find_class(s, o.class_id)];
  std::vector<ExtRational> input;
  for (const auto& text : o.coords) input.push_back(ExtRational::parse(text));
  if (static_cast<int>(input.size()) != c.codim) {
    throw DomainError("class " + c.short_id + " has " + std::to_string(c.codim) + " coordinates, got " +
                      std::to_string(input.size()));
  }
  const CombCover cover = comb_cover(c);
  const auto x = o.from_target ? trop_pi_f(cover, input) : input;
  const auto target = trop_target(cover, x);
  const auto source = trop_source(cover, x);
  if (o.format == "table") {
    std::string text = "class " + c.short_id + "\n";
    for (int e = 0; e < c.tree.num_edges(); ++e) {
      text += "x(" + split_label(c.tree.splits()[e], p->target_marks) + ") = " + x[e].to_string() +
              ", target length " + target.lengths[e].to_string() + "\n";
    }
    for (int e = 0; e < source.graph.num_edges(); ++e) {
      text += "source edge " + std::to_string(e) + " length " + source.lengths[e].to_string() + "\n";
    }
    emit(o, text, out);
  } else {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& v : x) coords.push_back(v.to_string());
    emit(o,
         dump({{"class", c.short_id},
               {"x", std::move(coords)},
               {"target", metric_tree_to_json(target, *p)},
               {"source", metric_graph_to_json(source, *p)}}),
         out);
  }
  return kOk;
}

int cmd_complex(const Options& o, std::ostream& out) {
  const auto p = load_valid(o);
  const auto s = stratify_with(o, p);
  const auto covers = covers_of(s);
  nlohmann::json j;
  if (o.which == "hurwitz") {
    j = complex_to_json(build_hurwitz_complex(s, covers));
  } else if (o.which == "target") {
    j = complex_to_json(build_target_complex(s));
  } else if (o.which == "source") {
    j = complex_to_json(build_source_complex(s, covers));
  } else {
    const auto forget = forget_to_cmr(build_hurwitz_complex(s, covers), s, covers);
    j = complex_to_json(forget.complex);
    nlohmann::json map = nlohmann::json::object();
    for (std::size_t i = 0; i < forget.cone_map.size(); ++i) {
      map[s.classes[i].short_id] = forget.complex.cones[forget.cone_map[i]].id;
    }
    j["forget"] = std::move(map);
  }
  emit(o, dump(j), out);
  return kOk;
}

void add_common(CLI::App* sub, Options& o, bool stratifies) {
  sub->add_option("portrait", o.input, "Portrait JSON file")->required();
  sub->add_option("--out", o.out_path, "Write the report here instead of stdout");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "dot", "table"}));
  if (!stratifies) return;
  sub->add_option("--max-codim", o.max_codim, "Only strata up to this codimension")->check(CLI::NonNegativeNumber);
  sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--shuffle-seed", o.shuffle_seed, "Shuffle the enumeration order (result unchanged)");
  sub->add_flag("--verbose", o.verbose, "Include full canonical encodings");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Irreducible strata of compactified Hurwitz spaces", "hurwitz-strata"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check a portrait");
  add_common(validate, o, false);

  auto* strata = app.add_subcommand("strata", "Enumerate strata and their contraction poset");
  add_common(strata, o, true);
  strata->add_option("--dot", o.dot_path, "Also write the poset as DOT");

  auto* cover = app.add_subcommand("cover", "Combinatorial admissible cover of a class");
  add_common(cover, o, true);
  cover->add_option("class", o.class_id, "Class id")->required();
  cover->add_option("--dot", o.dot_path, "Also write the cover as DOT");

  auto* tropical = app.add_subcommand("tropical", "Evaluate the tropical target and source maps");
  add_common(tropical, o, true);
  tropical->add_option("class", o.class_id, "Class id")->required();
  tropical->add_option("coords", o.coords, "Cone coordinates (integers, p/q or inf)");
  tropical->add_flag("--from-target", o.from_target, "Coordinates are target edge lengths");

  auto* complex = app.add_subcommand("complex", "Export an extended cone complex");
  add_common(complex, o, true);
  complex->add_option("--which", o.which, "Complex to export")
      ->check(CLI::IsMember({"hurwitz", "target", "source", "cmr"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (strata->parsed()) return cmd_strata(o, out);
    if (cover->parsed()) return cmd_cover(o, out);
    if (tropical->parsed()) return cmd_tropical(o, out);
    return cmd_complex(o, out);
  } catch (const PortraitFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PortraitGenusError& e) {
    err << "error: riemann-hurwitz: " << e.what() << "\n";
    return kDomainError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const DefectError& e) {
    err << "internal error: " << e.what() << "\n";
    return kDefect;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace hurwitz::cli
