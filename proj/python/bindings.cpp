#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclelab/cyclemap.hpp"
#include "cyclelab/descriptor.hpp"
#include "cyclelab/error.hpp"
#include "cyclelab/hilbert.hpp"
#include "cyclelab/verify.hpp"

namespace py = pybind11;
using namespace cyclelab;

namespace {

// JSON crosses the boundary as text; the json module does the rest.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ExperimentDescriptor descriptor_arg(const py::object& d) {
  if (py::isinstance<py::str>(d)) return parse_descriptor(d.cast<std::string>());
  const std::string text = py::module_::import("json").attr("dumps")(d).cast<std::string>();
  return parse_descriptor(text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "cycle map on products of elliptic curves over p-adic fields";

  static py::object error_type = py::reinterpret_borrow<py::object>(
      PyErr_NewException("cyclelab._core.Error", PyExc_RuntimeError, nullptr));
  m.attr("Error") = error_type;
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& ex) {
      py::object err = error_type(std::string(to_string(ex.kind())) + " [" + ex.contract() + "]: " + ex.what());
      err.attr("kind") = std::string(to_string(ex.kind()));
      err.attr("contract") = ex.contract();
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  m.def("parse_descriptor", [](const py::object& d) { return to_py(descriptor_arg(d).to_json()); },
        "validate a descriptor (dict or JSON text) and return its normalized form", py::arg("descriptor"));
  m.def("cycle_image", [](const py::object& d) { return to_py(run_cycle_image(descriptor_arg(d))); },
        py::arg("descriptor"));
  m.def("kummer_image", [](const py::object& d) { return to_py(run_kummer_image(descriptor_arg(d))); },
        py::arg("descriptor"));
  m.def("grade_units",
        [](std::int64_t p, int e, int n, int f, bool oracle) { return to_py(run_grade_units(p, e, f, n, oracle)); },
        py::arg("p"), py::arg("e"), py::arg("n") = 1, py::arg("f") = 1, py::arg("oracle") = false);
  m.def(
      "isogeny_grades",
      [](std::int64_t p, int e, int n, std::optional<std::string> v_a, std::optional<std::vector<std::int64_t>> t,
         bool strict) {
        std::optional<Rational> va;
        if (v_a) {
          va = Rational::parse(*v_a);
          if (!va) throw Error(ErrorKind::ValidationError, "isogeny_grades", "v_a must be \"a/b\"");
        }
        return to_py(run_isogeny_grades(p, e, n, va, t, strict));
      },
      py::arg("p"), py::arg("e"), py::arg("n") = 1, py::arg("v_a") = py::none(), py::arg("t") = py::none(),
      py::arg("strict") = false);
  m.def("hilbert_orders", [](std::int64_t p, int e, int n) { return to_py(run_hilbert_orders(p, e, n)); },
        py::arg("p"), py::arg("e"), py::arg("n") = 1);
  m.def(
      "jumps",
      [](std::int64_t p, int e, int n, std::int64_t mm, std::optional<std::vector<std::int64_t>> t,
         std::optional<std::vector<std::int64_t>> eis) { return to_py(run_jumps(p, e, n, mm, t, eis)); },
      py::arg("p"), py::arg("e"), py::arg("n") = 1, py::arg("m") = 1, py::arg("t") = py::none(),
      py::arg("eisenstein") = py::none());
  m.def(
      "milnor",
      [](std::int64_t p, int e, int n, int q, std::optional<std::int64_t> mm, int r, std::int64_t window) {
        return to_py(run_milnor(p, e, n, q, mm, r, window));
      },
      py::arg("p"), py::arg("e"), py::arg("n") = 1, py::arg("q") = 2, py::arg("m") = py::none(), py::arg("r") = 1,
      py::arg("window") = 8);
  m.def(
      "verify",
      [](std::optional<int> only) {
        std::vector<CheckResult> rs;
        if (only) {
          rs.push_back(run_check(*only));
        } else {
          rs = run_acceptance();
        }
        py::list out;
        for (const auto& r : rs) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          d["budget"] = r.budget;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = py::none());

  m.def(
      "symbol_order",
      [](std::int64_t s, std::int64_t t, std::int64_t p, int e, int n) {
        return symbol_order(s, t, make_field_spec(p, e, 1, n, 0), n);
      },
      py::arg("s"), py::arg("t"), py::arg("p"), py::arg("e"), py::arg("n") = 1);
  m.def("hilbert_2adic", &hilbert_2adic, py::arg("a"), py::arg("b"));
  m.def("brute_hilbert_2adic", &brute_hilbert_2adic, py::arg("a"), py::arg("b"));
  m.def("minimal_supersingular_e", &minimal_supersingular_e, py::arg("p"), py::arg("n"));
  m.def("worked_example", [] {
    const WorkedExample w = worked_example();
    py::dict d;
    d["p"] = w.spec.p;
    d["e"] = w.spec.e;
    d["n"] = w.n;
    d["v_a"] = w.v_a.str();
    d["report"] = to_py(cycle_report_to_json(w.report));
    d["trace"] = w.trace;
    return d;
  });
}
