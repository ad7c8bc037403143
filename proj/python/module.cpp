#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "twarrow/bisset.hpp"
#include "twarrow/common.hpp"
#include "twarrow/fincat.hpp"
#include "twarrow/fixtures.hpp"
#include "twarrow/formats.hpp"
#include "twarrow/gss.hpp"
#include "twarrow/sset.hpp"
#include "twarrow/suites.hpp"

namespace py = pybind11;
using namespace twarrow;

namespace {

std::vector<std::uint32_t> sset_counts(const formats::NamedSSet& s) {
  std::vector<std::uint32_t> counts;
  for (int n = 0; n <= s.sset.trunc(); ++n) counts.push_back(s.sset.count(n));
  return counts;
}

formats::NamedSSet colimit_twist(const formats::NamedSSet& s) {
  const int trunc = s.sset.trunc();
  const auto presentation = bisset::tw_presentation(bisset::cell_presentation(s.sset));
  const auto evaluated = bisset::evaluate(presentation, 2 * trunc + 1, 0);
  return formats::name_sset(bisset::underlying_sset(evaluated.bisset));
}

py::dict report_dict(const suites::SuiteReport& report) {
  py::list checks;
  for (const auto& c : report.checks) {
    py::dict check;
    check["name"] = c.name;
    check["pass"] = c.pass;
    check["witness"] = c.witness;
    check["detail"] = c.detail;
    checks.append(check);
  }
  py::dict out;
  out["suite"] = report.suite;
  out["pass"] = report.pass;
  out["checks"] = checks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "twisted arrow constructions for finite categories, simplicial sets, and "
            "groupoid-valued spaces";
  m.attr("__version__") = kVersion;
  py::register_exception<Error>(m, "TwarrowError");

  py::class_<formats::NamedCategory>(m, "Category",
                                     "A finite category with printable object/morphism names")
      .def_property_readonly("objects",
                             [](const formats::NamedCategory& c) { return c.objects; })
      .def_property_readonly("morphisms",
                             [](const formats::NamedCategory& c) { return c.morphisms; })
      .def_property_readonly(
          "object_count",
          [](const formats::NamedCategory& c) { return c.category.object_count(); })
      .def_property_readonly(
          "morphism_count",
          [](const formats::NamedCategory& c) { return c.category.morphism_count(); })
      .def("serialize",
           [](const formats::NamedCategory& c) { return formats::serialize_category(c); })
      .def("__eq__", [](const formats::NamedCategory& a,
                        const formats::NamedCategory& b) { return a == b; })
      .def("__repr__", [](const formats::NamedCategory& c) {
        return "<Category objects=" + std::to_string(c.category.object_count()) +
               " morphisms=" + std::to_string(c.category.morphism_count()) + ">";
      });

  py::class_<formats::NamedSSet>(m, "SSet",
                                 "A truncated simplicial set with printable cell names")
      .def_property_readonly("trunc",
                             [](const formats::NamedSSet& s) { return s.sset.trunc(); })
      .def_property_readonly("counts", &sset_counts)
      .def("serialize", [](const formats::NamedSSet& s) { return formats::serialize_sset(s); })
      .def("__eq__",
           [](const formats::NamedSSet& a, const formats::NamedSSet& b) { return a == b; })
      .def("__repr__", [](const formats::NamedSSet& s) {
        std::string out = "<SSet counts=[";
        for (int n = 0; n <= s.sset.trunc(); ++n)
          out += (n ? " " : "") + std::to_string(s.sset.count(n));
        return out + "]>";
      });

  py::class_<gss::GroupoidSimplicialSpace>(m, "Space",
                                           "A truncated simplicial object in groupoids")
      .def_property_readonly("trunc", &gss::GroupoidSimplicialSpace::trunc)
      .def("level_objects",
           [](const gss::GroupoidSimplicialSpace& w, int n) {
             return w.level(n).object_count();
           })
      .def("level_morphisms",
           [](const gss::GroupoidSimplicialSpace& w, int n) {
             return w.level(n).morphism_count();
           })
      .def("__eq__", [](const gss::GroupoidSimplicialSpace& a,
                        const gss::GroupoidSimplicialSpace& b) { return a == b; })
      .def("__repr__", [](const gss::GroupoidSimplicialSpace& w) {
        return "<Space trunc=" + std::to_string(w.trunc()) + ">";
      });

  // fixtures
  m.def("zoo_names", [] { return fixtures::zoo_names(); },
        "Names of the built-in fixture categories");
  m.def("zoo",
        [](const std::string& name) {
          return formats::name_category(fixtures::zoo_category(name));
        },
        py::arg("name"), "A built-in fixture category by name");

  // text formats
  m.def("parse_category", [](const std::string& t) { return formats::parse_category(t); },
        py::arg("text"));
  m.def("parse_sset", [](const std::string& t) { return formats::parse_sset(t); },
        py::arg("text"));
  m.def("build_space",
        [](const std::string& t) { return formats::build_space(formats::parse_space(t)); },
        py::arg("text"), "Build the space described by a recipe document");

  // constructions
  m.def("standard_simplex",
        [](int n, int trunc) { return formats::name_sset(sset::standard_simplex(n, trunc)); },
        py::arg("n"), py::arg("trunc"));
  m.def("nerve",
        [](const formats::NamedCategory& c, int trunc) {
          return formats::name_sset(sset::nerve(c.category, trunc).sset);
        },
        py::arg("category"), py::arg("trunc"));
  m.def("tw_category",
        [](const formats::NamedCategory& c) {
          const auto tw = fincat::tw_cat(c.category);
          return formats::name_category_with(tw.category, c.morphisms);
        },
        py::arg("category"),
        "The twisted arrow category; its objects are the input's morphisms");
  m.def("tw_sset", &colimit_twist, py::arg("sset"),
        "The twisted simplicial set (levels double: n-cells become (2n+1)-cells)");
  m.def("classifying_diagram",
        [](const formats::NamedCategory& c, int trunc) {
          return gss::classifying_diagram(c.category, trunc);
        },
        py::arg("category"), py::arg("trunc"));
  m.def("discrete_nerve",
        [](const formats::NamedCategory& c, int trunc) {
          return gss::discrete_embedding(sset::nerve(c.category, trunc).sset);
        },
        py::arg("category"), py::arg("trunc"));
  m.def("tw_space",
        [](const gss::GroupoidSimplicialSpace& w, int trunc) {
          return gss::tw_space(w, trunc);
        },
        py::arg("space"), py::arg("trunc"));

  // checks
  m.def("segal_check",
        [](const gss::GroupoidSimplicialSpace& w, int n_max) {
          const auto r = gss::segal_check(w, n_max);
          return py::make_tuple(r.pass, r.witness);
        },
        py::arg("space"), py::arg("n_max"));
  m.def("completeness_check",
        [](const gss::GroupoidSimplicialSpace& w) {
          const auto r = gss::completeness_check(w);
          return py::make_tuple(r.complete,
                                r.note.empty() ? r.equivalence.witness : r.note);
        },
        py::arg("space"));
  m.def("suite_names", [] { return suites::suite_names(); });
  m.def("run_suite",
        [](const std::string& suite, const std::optional<std::string>& recipe_text, int n_max,
           int k_max) {
          std::optional<formats::SpaceRecipe> recipe;
          if (recipe_text) recipe = formats::parse_space(*recipe_text);
          return report_dict(
              suites::run_suite(suite, recipe ? &*recipe : nullptr, {n_max, k_max}));
        },
        py::arg("suite"), py::arg("recipe_text") = std::nullopt, py::arg("n_max") = 4,
        py::arg("k_max") = 9, "Run a named check suite over an optional recipe document");
}
