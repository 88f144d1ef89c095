#include "sphereiso/isotopy.hpp"

#include <algorithm>

namespace sphereiso::isotopy {

using groups::GroupModel;

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "YES";
    case Tri::No: return "NO";
    case Tri::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

CosetClass::CosetClass(AClass rep, manifold::PhiImage img)
    : representative(img.coset_representative(rep)), image(std::move(img)) {}

bool CosetClass::operator==(const CosetClass& other) const {
  if (!(image.lattice == other.image.lattice)) return false;
  return image.contains(representative - other.representative);
}

nlohmann::json CosetClass::to_json() const {
  return nlohmann::json{{"representative", representative.to_json()},
                        {"complete", image.complete}};
}

std::string CosetClass::pretty() const { return representative.pretty(); }

nlohmann::json OrbitClass::to_json() const {
  return nlohmann::json{{"canonical", canonical.representative.to_json()},
                        {"complete", canonical.image.complete && table.complete}};
}

namespace {

void require_based(const Track& h) {
  if (!h.is_based())
    throw NotBased("track core is '" + h.core().str() + "', expected the identity");
}

Tri membership_verdict(bool member, bool complete) {
  if (member) return Tri::Yes;
  return complete ? Tri::No : Tri::Unknown;
}

}  // namespace

CosetClass fq_based(const Track& h, const ManifoldScenario& scenario) {
  GroupModel::require_same(h.model(), scenario.model, "fq_based");
  require_based(h);
  return CosetClass(homotopy::mu3(h), scenario.image);
}

Tri is_based_isotopic(const Track& h1, const Track& h2,
                      const ManifoldScenario& scenario) {
  GroupModel::require_same(h1.model(), h2.model(), "is_based_isotopic");
  GroupModel::require_same(h1.model(), scenario.model, "is_based_isotopic");
  require_based(h1);
  require_based(h2);
  const AClass diff = homotopy::mu3(h1) - homotopy::mu3(h2);
  return membership_verdict(scenario.image.contains(diff), scenario.image.complete);
}

StabTable stab_closure(const std::vector<StabEntry>& generators, int depth,
                       const ManifoldScenario& scenario) {
  StabTable table;
  table.entries =
      manifold::close_cocycle(scenario.model, generators, depth, scenario.image);
  table.complete = false;
  return table;
}

StabTable stab_table_for(const ManifoldScenario& scenario) {
  auto [entries, complete] = manifold::materialize_stabilizer(scenario);
  return StabTable{std::move(entries), complete};
}

AClass affine_act(const StabEntry& entry, const AClass& a) {
  GroupModel::require_same(entry.first.model(), a.model(), "affine_act");
  return entry.second + obstruction::conjugate(entry.first, a);
}

Tri is_free_isotopic(const Track& h1, const Track& h2,
                     const ManifoldScenario& scenario) {
  GroupModel::require_same(h1.model(), h2.model(), "is_free_isotopic");
  GroupModel::require_same(h1.model(), scenario.model, "is_free_isotopic");
  const AClass a1 = homotopy::mu3(h1);
  const AClass a2 = homotopy::mu3(h2);
  const StabTable table = stab_table_for(scenario);
  for (const auto& entry : table.entries)
    if (scenario.image.contains(a2 - affine_act(entry, a1))) return Tri::Yes;
  return (table.complete && scenario.image.complete) ? Tri::No : Tri::Unknown;
}

OrbitClass orbit_canonical(const AClass& a, const StabTable& table,
                           const ManifoldScenario& scenario) {
  GroupModel::require_same(a.model(), scenario.model, "orbit_canonical");
  std::optional<AClass> best;
  for (const auto& entry : table.entries) {
    AClass candidate = scenario.image.coset_representative(affine_act(entry, a));
    if (!best || AClass::serial_less(candidate, *best)) best = std::move(candidate);
  }
  if (!best) best = scenario.image.coset_representative(a);
  return OrbitClass{CosetClass(std::move(*best), scenario.image), table};
}

Tri validate_based_selfhomotopy(const Track& j, const ManifoldScenario& scenario) {
  GroupModel::require_same(j.model(), scenario.model, "validate_based_selfhomotopy");
  require_based(j);
  return membership_verdict(scenario.image.contains(homotopy::mu3(j)),
                            scenario.image.complete);
}

}  // namespace sphereiso::isotopy
