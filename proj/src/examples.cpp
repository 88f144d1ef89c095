#include "sphereiso/examples.hpp"

#include <array>
#include <utility>

namespace sphereiso::examples {

namespace {

const std::string kSimplyConnected = R"({
  "name": "simply-connected",
  "description": "Trivial fundamental group: the obstruction group vanishes and homotopic spheres are isotopic.",
  "group": {"kind": "finite_abelian", "moduli": []},
  "pi3": {"generators": [], "complete": true},
  "closure": {"mode": "all"},
  "stabilizer": {"mode": "full-trivial"}
})";

const std::string kAlgebraicDual = R"({
  "name": "algebraic-dual",
  "description": "A sphere with an algebraic dual over S3: the unit pairing value makes phi surjective, so the based obstruction quotient has a single element.",
  "group": {"kind": "permutation", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]], "symbols": ["a", "b"]},
  "pi3": {"generators": [{"label": "G", "mu3": [], "lambda_U": [[1, "1"]]}], "complete": true},
  "closure": {"mode": "all"},
  "stabilizer": {"mode": "full-trivial"}
})";

const std::string kProductSphere = R"({
  "name": "product-sphere",
  "description": "Sphere factor of a product with a 3-manifold: every translation vanishes, so free classification is plain conjugation of the based one.",
  "group": {"kind": "free", "rank": 2, "symbols": ["g", "h"]},
  "pi3": {"generators": [], "complete": true},
  "closure": {"mode": "ball", "radius": 2},
  "stabilizer": {"mode": "full-trivial", "radius": 2}
})";

const std::string kFingermove = R"({
  "name": "fingermove",
  "description": "Sphere finger-moved along g in free <g,h>: translations U_s = g - s g s^-1 are non-trivial, so based and free isotopy genuinely differ. The depth-3 table is asserted decision-complete: every translation keeps a zero coefficient sum over the conjugates of g.",
  "group": {"kind": "free", "rank": 2, "symbols": ["g", "h"]},
  "pi3": {"generators": [], "complete": true},
  "closure": {"mode": "ball", "radius": 2},
  "stabilizer": {
    "mode": "generated",
    "depth": 3,
    "generators": [
      {"s": "g", "U_s": {"int_part": [], "mod2_part": []}},
      {"s": "h", "U_s": {"int_part": [[1, "g"], [-1, "h g h^-1"]], "mod2_part": []}}
    ],
    "complete": true
  }
})";

const std::string kCyclicTwo = R"({
  "name": "cyclic-two",
  "description": "Cyclic group of order two: the single involution class carries a 2-torsion obstruction coordinate.",
  "group": {"kind": "finite_abelian", "moduli": [2], "symbols": ["t"]},
  "pi3": {"generators": [], "complete": true},
  "closure": {"mode": "all"},
  "stabilizer": {"mode": "full-trivial"}
})";

const std::string kSymThree = R"({
  "name": "sym-three",
  "description": "Symmetric group on three letters: conjugation folds the 3-cycle pair class and the three transposition classes into single orbits.",
  "group": {"kind": "permutation", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]], "symbols": ["a", "b"]},
  "pi3": {"generators": [], "complete": true},
  "closure": {"mode": "all"},
  "stabilizer": {"mode": "full-trivial"}
})";

const std::array<std::pair<const char*, const std::string*>, 6> kExamples = {{
    {"simply-connected", &kSimplyConnected},
    {"algebraic-dual", &kAlgebraicDual},
    {"product-sphere", &kProductSphere},
    {"fingermove", &kFingermove},
    {"cyclic-two", &kCyclicTwo},
    {"sym-three", &kSymThree},
}};

}  // namespace

std::vector<ExampleInfo> list() {
  std::vector<ExampleInfo> out;
  for (const auto& [name, text] : kExamples) {
    auto j = nlohmann::json::parse(*text);
    out.push_back({name, j.at("description").get<std::string>()});
  }
  return out;
}

const std::string& scenario_json(const std::string& name) {
  for (const auto& [key, text] : kExamples)
    if (name == key) return *text;
  throw SchemaError("unknown example '" + name +
                    "'; run the examples command for the list");
}

manifold::ManifoldScenario load(const std::string& name) {
  return manifold::load_scenario(nlohmann::json::parse(scenario_json(name)));
}

}  // namespace sphereiso::examples
