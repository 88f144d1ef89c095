#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sphereiso/cli.hpp"
#include "sphereiso/examples.hpp"
#include "sphereiso/isotopy.hpp"

// Thin JSON-in / JSON-out bindings: every value crosses the boundary in the
// same wire format the CLI speaks, so the python layer stays schema-free.
namespace py = pybind11;

namespace {

using namespace sphereiso;
using groups::ModelRef;
using nlohmann::json;

ModelRef model_from(const std::string& text) {
  return groups::GroupModel::from_json(json::parse(text), "group");
}

manifold::ManifoldScenario scenario_from(const std::string& text) {
  return manifold::load_scenario(json::parse(text));
}

homotopy::Track track_from(const std::string& text, const ModelRef& model) {
  return homotopy::Track::from_json(json::parse(text), model, "track");
}

std::string py_reduce(const std::string& element, const std::string& group) {
  ModelRef model = model_from(group);
  auto x = groupring::RingElement::from_json(json::parse(element), model, "element");
  return obstruction::reduce(x).to_json().dump();
}

std::string py_mu3(const std::string& track, const std::string& group) {
  ModelRef model = model_from(group);
  return homotopy::mu3(track_from(track, model)).to_json().dump();
}

std::string py_realize(const std::string& element, const std::string& group) {
  ModelRef model = model_from(group);
  auto x = groupring::RingElement::from_json(json::parse(element), model, "element");
  return homotopy::realize(x).to_json().dump();
}

std::string py_whitney(const std::string& track, const std::string& group) {
  ModelRef model = model_from(group);
  homotopy::Track t = track_from(track, model);
  try {
    return json{{"status", "ok"}, {"plan", homotopy::whitney_plan(t).to_json()}}.dump();
  } catch (const homotopy::NonVanishingObstruction& e) {
    return json{{"status", "obstruction"}, {"obstruction", e.obstruction.to_json()}}
        .dump();
  }
}

std::string py_fq_based(const std::string& track, const std::string& scenario) {
  auto scen = scenario_from(scenario);
  return isotopy::fq_based(track_from(track, scen.model), scen).to_json().dump();
}

std::string py_is_based(const std::string& t1, const std::string& t2,
                        const std::string& scenario) {
  auto scen = scenario_from(scenario);
  return isotopy::tri_name(isotopy::is_based_isotopic(
      track_from(t1, scen.model), track_from(t2, scen.model), scen));
}

std::string py_is_free(const std::string& t1, const std::string& t2,
                       const std::string& scenario) {
  auto scen = scenario_from(scenario);
  return isotopy::tri_name(isotopy::is_free_isotopic(
      track_from(t1, scen.model), track_from(t2, scen.model), scen));
}

std::string py_orbit(const std::string& a_class, const std::string& scenario) {
  auto scen = scenario_from(scenario);
  auto a = obstruction::AClass::from_json(json::parse(a_class), scen.model, "class");
  return isotopy::orbit_canonical(a, isotopy::stab_table_for(scen), scen)
      .to_json()
      .dump();
}

std::string py_validate(const std::string& scenario) {
  auto scen = scenario_from(scenario);
  json list = json::array();
  for (const auto& issue : manifold::validate_scenario(scen))
    list.push_back(json{{"where", issue.where}, {"message", issue.message}});
  return list.dump();
}

std::vector<std::string> py_example_names() {
  std::vector<std::string> names;
  for (const auto& info : examples::list()) names.push_back(info.name);
  return names;
}

py::tuple py_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Based and free isotopy decisions for embedded 2-spheres in "
            "5-manifolds, from group ring intersection data.";

  py::register_exception<sphereiso::Error>(m, "SphereisoError");

  m.def("reduce", &py_reduce, py::arg("element"), py::arg("group"),
        "Reduce a group ring element (JSON) into the obstruction quotient.");
  m.def("mu3", &py_mu3, py::arg("track"), py::arg("group"),
        "Self-intersection invariant of a track (JSON).");
  m.def("realize", &py_realize, py::arg("element"), py::arg("group"),
        "Build a track whose invariant is the class of the given element.");
  m.def("whitney", &py_whitney, py::arg("track"), py::arg("group"),
        "Plan a full double point cancellation, or report the obstruction.");
  m.def("fq_based", &py_fq_based, py::arg("track"), py::arg("scenario"),
        "Based isotopy invariant of a track against a scenario.");
  m.def("is_based_isotopic", &py_is_based, py::arg("track1"), py::arg("track2"),
        py::arg("scenario"), "YES / NO / UNKNOWN based isotopy decision.");
  m.def("is_free_isotopic", &py_is_free, py::arg("track1"), py::arg("track2"),
        py::arg("scenario"), "YES / NO / UNKNOWN free isotopy decision.");
  m.def("orbit", &py_orbit, py::arg("a_class"), py::arg("scenario"),
        "Canonical form of a class under the affine stabilizer action.");
  m.def("validate", &py_validate, py::arg("scenario"),
        "Consistency report for a scenario; empty list means clean.");
  m.def("example_names", &py_example_names, "Names of the bundled scenarios.");
  m.def("example_scenario", [](const std::string& name) {
          return examples::scenario_json(name);
        },
        py::arg("name"), "Raw JSON text of a bundled scenario.");
  m.def("run", &py_run, py::arg("args"),
        "Run the command line interface in-process; returns (code, out, err).");
}
