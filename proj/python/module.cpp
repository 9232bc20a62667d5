#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hurwitz/cli.hpp"
#include "hurwitz/covers.hpp"
#include "hurwitz/strata.hpp"
#include "hurwitz/tropical.hpp"

namespace py = pybind11;
using namespace hurwitz;

namespace {

PortraitPtr portrait_from_text(const std::string& text) {
  return std::make_shared<const Portrait>(parse_portrait(text));
}

const HurwitzClass& lookup(const Stratification& s, const std::string& id) {
  const long i = s.find(id);
  if (i < 0) throw py::key_error("no class with id " + id);
  return s.classes[i];
}

std::vector<ExtRational> parse_coords(const std::vector<std::string>& coords) {
  std::vector<ExtRational> out;
  for (const auto& c : coords) out.push_back(ExtRational::parse(c));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Boundary strata of Hurwitz spaces of genus-g covers of the line";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PortraitFormatError>(m, "PortraitFormatError", PyExc_ValueError);
  py::register_exception<PortraitGenusError>(m, "PortraitGenusError", PyExc_ValueError);
  py::register_exception<DefectError>(m, "DefectError", PyExc_RuntimeError);

  m.def("validate", [](const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : validate_portrait(parse_portrait(text))) out.emplace_back(v.kind, v.message);
    return out;
  }, py::arg("portrait_json"), "Violations of a portrait as (kind, message) pairs.");

  m.def("canonical_serialization", [](const std::string& text) { return canonical_serialization(parse_portrait(text)); });

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line tool; returns (exit code, stdout, stderr).");

  py::class_<Stratification>(m, "Stratification")
      .def(py::init([](const std::string& text, std::optional<int> max_codim, int jobs) {
             StratifyOptions o;
             o.max_codim = max_codim;
             o.jobs = jobs;
             auto p = portrait_from_text(text);
             if (!validate_portrait(*p).empty()) throw InputError("portrait is invalid");
             py::gil_scoped_release release;
             return stratify(p, o);
           }),
           py::arg("portrait_json"), py::arg("max_codim") = py::none(), py::arg("jobs") = 1)
      .def("__len__", [](const Stratification& s) { return s.classes.size(); })
      .def_property_readonly("num_components", [](const Stratification& s) { return s.components.size(); })
      .def_property_readonly("short_ids", [](const Stratification& s) {
        std::vector<std::string> out;
        for (const auto& c : s.classes) out.push_back(c.short_id);
        return out;
      })
      .def_property_readonly("codims", [](const Stratification& s) {
        std::vector<int> out;
        for (const auto& c : s.classes) out.push_back(c.codim);
        return out;
      })
      .def("to_json", [](const Stratification& s, bool verbose) { return stratification_to_json(s, verbose).dump(); },
           py::arg("verbose") = false)
      .def("table", &stratification_table)
      .def("poset_dot", &poset_to_dot)
      .def("cover_json", [](const Stratification& s, const std::string& id) {
        return cover_to_json(comb_cover(lookup(s, id))).dump();
      })
      .def("trop_target", [](const Stratification& s, const std::string& id, const std::vector<std::string>& x) {
        const auto t = trop_target(comb_cover(lookup(s, id)), parse_coords(x));
        return metric_tree_to_json(t, *s.portrait).dump();
      })
      .def("trop_source", [](const Stratification& s, const std::string& id, const std::vector<std::string>& x) {
        const auto g = trop_source(comb_cover(lookup(s, id)), parse_coords(x));
        return metric_graph_to_json(g, *s.portrait).dump();
      })
      .def("cross_component_pairs", [](const Stratification& s) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [a, b] : cross_component_cover_pairs(s, covers_of(s))) {
          out.emplace_back(s.classes[a].short_id, s.classes[b].short_id);
        }
        return out;
      });
}
