#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wcl/generator.hpp"
#include "wcl/montecarlo.hpp"
#include "wcl/parser.hpp"

namespace py = pybind11;
using namespace wcl;

namespace {

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json py_to_json(const py::object& o) {
  std::string text = py::module_::import("json").attr("dumps")(o).cast<std::string>();
  return Json::parse(text);
}

PredictableField field_arg(const py::object& z) {
  return field_from_json(py_to_json(z));
}

}  // namespace

PYBIND11_MODULE(_wcl, m) {
  m.doc() = "Exact chaos-expansion algebra and Cameron-Martin / Girsanov verifiers";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<AnticipatingFieldError>(m, "AnticipatingFieldError", PyExc_ValueError);

  py::class_<ChaosElement>(m, "ChaosElement")
      .def(py::init([](const std::string& text) { return parse_expression(text); }),
           py::arg("text"))
      .def_static("constant",
                  [](const std::string& c) { return ChaosElement::constant(parse_rational(c)); })
      .def_static("coordinate", &ChaosElement::coordinate, py::arg("i"))
      .def_static("hermite", &ChaosElement::hermite, py::arg("n"), py::arg("i"))
      .def("__add__", [](const ChaosElement& a, const ChaosElement& b) { return a + b; })
      .def("__sub__", [](const ChaosElement& a, const ChaosElement& b) { return a - b; })
      .def("__neg__", [](const ChaosElement& a) { return -a; })
      .def("__mul__", [](const ChaosElement& a, const ChaosElement& b) { return a * b; })
      .def("__pow__", [](const ChaosElement& a, unsigned n) { return a.pow(n); })
      .def("__eq__", [](const ChaosElement& a, const ChaosElement& b) { return a == b; })
      .def("__repr__", [](const ChaosElement& a) { return format_element(a); })
      .def("is_zero", &ChaosElement::is_zero)
      .def("total_degree", &ChaosElement::total_degree)
      .def("degree_in", &ChaosElement::degree_in, py::arg("coord"))
      .def("max_coord", &ChaosElement::max_coord)
      .def("to_json", [](const ChaosElement& a) { return json_to_py(chaos_to_json(a)); })
      .def_static("from_json",
                  [](const py::object& j) { return chaos_from_json(py_to_json(j)); });

  m.def("parse_expression", &parse_expression, py::arg("text"));
  m.def("format_element", &format_element, py::arg("f"));
  m.def("expectation",
        [](const ChaosElement& f) { return format_rational(expectation(f)); });
  m.def("inner_product", [](const ChaosElement& f, const ChaosElement& g) {
    return format_rational(inner_product(f, g));
  });
  m.def("evaluate", [](const ChaosElement& f, const std::map<int, double>& point) {
    return evaluate(f, point);
  });

  m.def("derive", [](const ChaosElement& f, const std::string& theta) {
    return derive(f, parse_direction(theta));
  });
  m.def("skorokhod", [](const ChaosElement& f, const std::string& theta) {
    return skorokhod(f, parse_direction(theta));
  });
  m.def("exp_derive", [](const ChaosElement& f, const std::string& theta) {
    return exp_derive(f, parse_direction(theta));
  });

  m.def("verify_cm", [](const std::string& f, const std::string& theta) {
    return json_to_py(verify_cm(parse_expression(f), parse_direction(theta)).to_json());
  });
  m.def("verify_adjoint",
        [](const std::string& f, const std::string& g, const std::string& theta) {
          return json_to_py(verify_adjoint(parse_expression(f), parse_expression(g),
                                           parse_direction(theta))
                                .to_json());
        });
  m.def("verify_mg", [](const std::string& f, const py::object& z) {
    return json_to_py(verify_mg(parse_expression(f), field_arg(z)).to_json());
  });
  m.def(
      "verify_ln",
      [](const std::string& f, const py::object& z, int n, bool allow_anticipating) {
        return json_to_py(
            verify_ln_duality(parse_expression(f), field_arg(z), n, allow_anticipating)
                .to_json());
      },
      py::arg("f"), py::arg("z"), py::arg("n"), py::arg("allow_anticipating") = false);
  m.def("verify_density", [](const std::string& f, const py::object& z) {
    return json_to_py(verify_density_expansion(parse_expression(f), field_arg(z)).to_json());
  });

  m.def(
      "check_nilpotent",
      [](const py::object& z, int dim) {
        PredictableField field = field_arg(z);
        int d = dim > 0 ? dim : field.frame.dimension();
        for (auto& [k, zk] : field.components) d = std::max({d, k, zk.max_coord()});
        Json j = nilpotency_to_json(nilpotency_check(field.as_field(), d));
        j["dim"] = d;
        return json_to_py(j);
      },
      py::arg("z"), py::arg("dim") = 0);

  m.def(
      "mc_verify_cm",
      [](const std::string& f, const std::string& theta, int level, long long count,
         std::uint64_t seed) {
        SampleBatch batch = sample_batch(level, count, seed);
        return json_to_py(
            mc_verify_cm(parse_expression(f), parse_direction(theta), batch).to_json());
      },
      py::arg("f"), py::arg("theta"), py::arg("level") = 1, py::arg("count") = 100000,
      py::arg("seed") = 0);
  m.def(
      "mc_verify_mg",
      [](const std::string& f, const py::object& z, int level, long long count,
         std::uint64_t seed) {
        SampleBatch batch = sample_batch(level, count, seed);
        return json_to_py(mc_verify_mg(parse_expression(f), field_arg(z), batch).to_json());
      },
      py::arg("f"), py::arg("z"), py::arg("level") = 1, py::arg("count") = 100000,
      py::arg("seed") = 0);

  m.def(
      "gen_instance",
      [](const std::string& kind, std::uint64_t seed, int level, int degree, int coords,
         int coeff_bound, bool anticipating) {
        InstanceSpec spec;
        spec.kind = kind;
        spec.seed = seed;
        spec.level = level;
        spec.degree = degree;
        spec.coords = coords;
        spec.coeff_bound = coeff_bound;
        spec.anticipating = anticipating;
        return json_to_py(gen_instance(spec));
      },
      py::arg("kind"), py::arg("seed") = 0, py::arg("level") = 1, py::arg("degree") = 3,
      py::arg("coords") = 3, py::arg("coeff_bound") = 9, py::arg("anticipating") = false);
}
