#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coxlat/report.hpp"

namespace py = pybind11;
using namespace coxlat;

namespace {

std::string witnesses_json(const CoxeterSystem& sys) {
  Json out = Json::array();
  for (const auto& w : find_witnesses(sys)) {
    Json entry = witness_json(sys, w);
    entry["s1_index"] = w.s1;
    entry["s2_index"] = w.s2;
    entry["alpha1_perm"] = w.alpha1.perm;
    entry["alpha2_perm"] = w.alpha2.perm;
    out.push_back(entry);
  }
  return out.dump();
}

std::string nerve_json(const CoxeterSystem& sys) {
  auto nerve = build_nerve(sys);
  Json simplices = Json::array();
  for (GenSet t : nerve.simplices) {
    Json names = Json::array();
    for (int s : gs_members(t)) names.push_back(sys.name(s));
    simplices.push_back(names);
  }
  Json out{{"generators", sys.rank()},
           {"edges", nerve.edge_count()},
           {"simplices", simplices}};
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "chamber complexes, complexes of groups, and exact covolumes "
            "for Coxeter systems";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError",
                                        PyExc_RuntimeError);

  py::class_<CoxeterSystem>(m, "CoxeterSystem")
      .def_static("parse",
                  [](const std::string& text) { return parse_system(text); })
      .def_static("from_catalog", [](const std::string& spec) {
        return catalog_parse(spec);
      })
      .def_property_readonly("rank", &CoxeterSystem::rank)
      .def("generators",
           [](const CoxeterSystem& s) { return s.names(); })
      .def("label",
           [](const CoxeterSystem& s, int a, int b) -> py::object {
             unsigned label = s.label(a, b);
             if (label == kInfLabel) return py::none();
             return py::int_(label);
           })
      .def("__repr__", [](const CoxeterSystem& s) {
        return "<CoxeterSystem rank=" + std::to_string(s.rank()) + ">";
      });

  m.def("word_reduce",
        [](const CoxeterSystem& sys, const Word& w, int max_length) {
          return word_reduce(sys, w, max_length);
        },
        py::arg("system"), py::arg("word"), py::arg("max_length") = 16);
  m.def("words_equal",
        [](const CoxeterSystem& sys, const Word& u, const Word& v,
           int max_length) { return words_equal(sys, u, v, max_length); },
        py::arg("system"), py::arg("u"), py::arg("v"),
        py::arg("max_length") = 16);

  m.def("is_spherical_json",
        [](const CoxeterSystem& sys, const std::vector<int>& members) {
          auto t = is_spherical(sys, gs_from(members));
          if (!t) return std::string("null");
          Json components = Json::array();
          for (const auto& c : t->components)
            components.push_back(
                {{"type", finite_type_name(c.type, c.rank, c.label)},
                 {"rank", c.rank},
                 {"members", c.members}});
          Json out{{"order", spherical_order(*t).str()},
                   {"components", components}};
          return out.dump();
        });
  m.def("enumerate_order",
        [](const CoxeterSystem& sys, const std::vector<int>& members) {
          auto t = is_spherical(sys, gs_from(members));
          if (!t) throw std::invalid_argument("subset is not spherical");
          return enumerate_group(sys, *t)->size();
        });
  m.def("halving_order",
        [](const CoxeterSystem& sys, const std::vector<int>& members,
           int s) -> py::object {
          auto t = is_spherical(sys, gs_from(members));
          if (!t) throw std::invalid_argument("subset is not spherical");
          auto half = halving(sys, *t, s);
          if (!half) return py::none();
          return py::int_(half->members.size());
        });

  m.def("nerve_json", &nerve_json);
  m.def("witnesses_json", &witnesses_json);

  m.def("run_json",
        [](const std::string& command, const std::string& system_path,
           const std::string& catalog_spec, int n, int n_max, int witness,
           const std::string& system_text) {
          RunConfig config;
          config.command = command;
          config.system_file = system_path;
          config.system_text = system_text;
          config.catalog_spec = catalog_spec;
          config.n = n;
          config.n_max = n_max;
          config.witness_index = witness;
          return run_command(config).dump();
        },
        py::arg("command"), py::arg("system_path") = "",
        py::arg("catalog") = "", py::arg("n") = 1, py::arg("n_max") = 1,
        py::arg("witness") = 0, py::arg("system_text") = "");
}
