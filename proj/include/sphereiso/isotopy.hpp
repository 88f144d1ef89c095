#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sphereiso/homotopy.hpp"
#include "sphereiso/manifold.hpp"

// Decision layer: based and free isotopy classification of tracks against a
// scenario.  Answers are tri-state; NO is only ever emitted when the relevant
// data carries a completeness assertion, otherwise a failed search degrades
// to UNKNOWN.
namespace sphereiso::isotopy {

using groups::GroupElement;
using homotopy::Track;
using manifold::ManifoldScenario;
using obstruction::AClass;

enum class Tri { Yes, No, Unknown };

const char* tri_name(Tri t);

// An element of the quotient of pair classes by the indeterminacy subgroup.
// The representative is kept in canonical (residue) form so printed output
// is stable, but equality goes through lattice membership of the difference.
struct CosetClass {
  AClass representative;
  manifold::PhiImage image;

  CosetClass(AClass rep, manifold::PhiImage img);

  bool operator==(const CosetClass& other) const;
  bool operator!=(const CosetClass& other) const { return !(*this == other); }

  nlohmann::json to_json() const;
  std::string pretty() const;
};

using StabEntry = std::pair<GroupElement, AClass>;

struct StabTable {
  std::vector<StabEntry> entries;
  bool complete = false;
};

struct OrbitClass {
  CosetClass canonical;
  StabTable table;

  bool operator==(const OrbitClass& other) const { return canonical == other.canonical; }
  bool operator!=(const OrbitClass& other) const { return !(*this == other); }

  nlohmann::json to_json() const;
};

// the based invariant: class of mu3(h) modulo the scenario's subgroup
CosetClass fq_based(const Track& h, const ManifoldScenario& scenario);

Tri is_based_isotopic(const Track& h1, const Track& h2, const ManifoldScenario& scenario);

// products of the given translations (and their inverses) up to word
// length depth, propagated by the cocycle rule; never marked complete
StabTable stab_closure(const std::vector<StabEntry>& generators, int depth,
                       const ManifoldScenario& scenario);

// the stabilizer table the scenario declares, materialized
StabTable stab_table_for(const ManifoldScenario& scenario);

AClass affine_act(const StabEntry& entry, const AClass& a);

Tri is_free_isotopic(const Track& h1, const Track& h2, const ManifoldScenario& scenario);

OrbitClass orbit_canonical(const AClass& a, const StabTable& table,
                           const ManifoldScenario& scenario);

// a claimed based self-homotopy must have vanishing invariant
Tri validate_based_selfhomotopy(const Track& j, const ManifoldScenario& scenario);

}  // namespace sphereiso::isotopy
