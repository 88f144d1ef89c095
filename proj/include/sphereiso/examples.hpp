#pragma once

#include <string>
#include <vector>

#include "sphereiso/manifold.hpp"

// Bundled ready-to-run scenarios, each a witness for one corner of the
// classification: trivial obstruction group, surjective phi, trivial vs
// non-trivial translations, and small finite groups for orbit enumeration.
namespace sphereiso::examples {

struct ExampleInfo {
  std::string name;
  std::string description;
};

std::vector<ExampleInfo> list();

// raw scenario JSON text; throws SchemaError for an unknown name
const std::string& scenario_json(const std::string& name);

manifold::ManifoldScenario load(const std::string& name);

}  // namespace sphereiso::examples
