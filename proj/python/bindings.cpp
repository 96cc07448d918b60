// Python bindings. Structured values cross the boundary as JSON text, which
// the Python side decodes; exact numbers stay strings ("3/4", "inf").

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "goi/battery.hpp"
#include "goi/interpret.hpp"
#include "goi/json_io.hpp"

namespace py = pybind11;
using namespace goi;

namespace {

Quantifier quantifier(const std::string& name) {
  if (name == "default") return Quantifier();
  if (name == "identity") return Quantifier::identity();
  throw std::invalid_argument("unknown quantifier '" + name + "' (expected default or identity)");
}

std::string dump(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_goi, m) {
  m.doc() = "Exact geometry-of-interaction engine";

  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<SyntaxError>(m, "SyntaxError", PyExc_ValueError);
  py::register_exception<PolarityError>(m, "PolarityError", PyExc_ValueError);
  py::register_exception<ProofError>(m, "ProofError", PyExc_ValueError);

  m.def("check", [](const std::string& text) {
    CheckResult r = check_proof(*parse_proof(text));
    json j;
    j["ok"] = r.ok();
    j["conclusion"] = r.conclusion ? r.conclusion->str() : "";
    j["diagnostics"] = json::array();
    for (const auto& d : r.diagnostics) j["diagnostics"].push_back(to_json(d));
    return dump(j);
  }, py::arg("text"), "Check a proof given as text; JSON report.");

  m.def("interpret", [](const std::string& text, uint64_t fuel) {
    InterpretOptions opt;
    opt.fuel.rounds = fuel;
    return dump(to_json(interpret(*parse_proof(text), opt)));
  }, py::arg("text"), py::arg("fuel") = 10000, "Interpret a proof as a project; JSON.");

  m.def("verify", [](const std::string& text, uint64_t fuel) {
    InterpretOptions opt;
    opt.fuel.rounds = fuel;
    return dump(to_json(verify_soundness(*parse_proof(text), Basis{}, opt)));
  }, py::arg("text"), py::arg("fuel") = 10000, "Soundness report for a proof; JSON.");

  m.def("execute", [](const std::string& a, const std::string& b, uint64_t fuel) {
    Fuel f{fuel};
    return dump(to_json(execute_project(project_from_json(json::parse(a)), project_from_json(json::parse(b)),
                                        Quantifier(), f)));
  }, py::arg("a"), py::arg("b"), py::arg("fuel") = 10000, "Execute two projects given as JSON.");

  m.def("pairing", [](const std::string& a, const std::string& b, const std::string& q, uint64_t fuel) {
    Fuel f{fuel};
    return pairing(project_from_json(json::parse(a)), project_from_json(json::parse(b)), quantifier(q), f).str();
  }, py::arg("a"), py::arg("b"), py::arg("quantifier") = "default", py::arg("fuel") = 10000,
     "Exact pairing of two projects given as JSON.");

  m.def("success", [](const std::string& a) { return to_string(is_successful(project_from_json(json::parse(a)))); },
        py::arg("project"), "strict, weak or no.");

  m.def("battery", [](const std::string& name, uint64_t iters, uint64_t seed, uint64_t fuel) {
    BatteryOptions opt;
    opt.iters = iters;
    opt.seed = seed;
    opt.fuel.rounds = fuel;
    return dump(to_json(run_battery(name, opt)));
  }, py::arg("name"), py::arg("iters") = 100, py::arg("seed") = 42, py::arg("fuel") = 10000);

  m.def("battery_names", &battery_names);

  m.def("cell_measure", [](const std::string& cell) { return format_rational(Cell::parse(cell).measure()); },
        py::arg("cell"));
  m.def("cell_normalize", [](const std::string& cell) { return Cell::parse(cell).str(); }, py::arg("cell"));
}
