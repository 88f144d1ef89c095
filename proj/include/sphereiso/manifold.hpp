#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sphereiso/intlinalg.hpp"
#include "sphereiso/obstruction.hpp"

namespace sphereiso::manifold {

using groupring::RingElement;
using groups::GroupElement;
using groups::ModelRef;
using intlinalg::LatticeBasis;
using obstruction::AClass;
using obstruction::PairClass;

/// One declared generator of the third homotopy group as a module over the
/// fundamental group, with its self-intersection lift and its intersection
/// with the dual sphere class.
struct Pi3Generator {
  std::string label;
  RingElement mu3_lift;
  RingElement lambda_u;

  Pi3Generator(std::string label_, RingElement mu3_, RingElement lambda_)
      : label(std::move(label_)), mu3_lift(std::move(mu3_)), lambda_u(std::move(lambda_)) {}
};

enum class ClosureMode { All, Explicit, Ball };

struct ClosurePolicy {
  ClosureMode mode = ClosureMode::All;
  std::vector<GroupElement> elements;  // explicit mode
  int radius = 0;                      // ball mode
};

enum class StabMode { FullTrivial, Table, Generated };

struct StabDeclaration {
  StabMode mode = StabMode::FullTrivial;
  std::vector<std::pair<GroupElement, AClass>> entries;  // table entries or generators
  int depth = 0;                                         // generated mode
  bool complete = false;
  int radius = 3;  // full-trivial materialization cutoff on infinite groups
};

/// An ordered embedding of finitely many pair classes into integer
/// coordinates; involution classes carry modulus 2.
struct ACoordSystem {
  std::vector<PairClass> classes;  // sorted by representative serial key
  std::vector<int> moduli;         // parallel: 2 for involutions, else 0

  size_t size() const { return classes.size(); }
  std::optional<size_t> index_of(const PairClass& pc) const;

  /// nullopt when the class has support outside these coordinates.
  std::optional<std::vector<Int>> vectorize(const AClass& a) const;
  AClass devectorize(const std::vector<Int>& v, const ModelRef& model) const;
};

/// The computed indeterminacy subgroup: the lattice spanned by the φ-values
/// over the closure set, in coordinates covering their supports. The
/// completeness flag records whether this is asserted to be the full image.
struct PhiImage {
  ACoordSystem coords;
  LatticeBasis lattice;
  bool complete = false;

  /// Exact membership of the computed subgroup.
  bool contains(const AClass& a) const;

  /// Canonical coset representative: the part over the coordinate system is
  /// reduced to the Hermite residue, support outside passes through
  /// untouched. Equal representatives iff the difference is a member.
  AClass coset_representative(const AClass& a) const;
};

struct ManifoldScenario {
  std::string name;
  std::string description;
  ModelRef model;
  std::vector<Pi3Generator> generators;
  bool pi3_complete = false;
  ClosurePolicy closure;
  StabDeclaration stab;
  std::map<std::pair<std::string, std::string>, RingElement> lambda3;

  // compiled at load:
  std::vector<GroupElement> closure_set;  // identity included, serial order
  PhiImage image;
};

/// phi(gen, g) = conjugate(g, [mu3 lift]) + [g · lambda_U]: the value of the
/// indeterminacy homomorphism on g · gen.
AClass phi(const Pi3Generator& gen, const GroupElement& g);

/// The subgroup generated by {phi(gen, g) : gen declared, g in the closure
/// set}; phi is treated as linear over the integers, so no cross-terms enter.
PhiImage build_phi_image(const ModelRef& model,
                         const std::vector<Pi3Generator>& generators,
                         const std::vector<GroupElement>& closure_set,
                         bool complete);

/// Resolves a closure policy to a concrete element set (identity always
/// included). Mode "all" needs a finite group: ClosureUnresolvable otherwise.
std::vector<GroupElement> resolve_closure(const ModelRef& model,
                                          const ClosurePolicy& policy);

/// Parses and fully validates a scenario document; resolves the closure set
/// and compiles the φ-image. See the README for the schema.
ManifoldScenario load_scenario(const nlohmann::json& j);

/// Consistency report: stabilizer cocycle violations (products of tabled
/// elements, modulo the φ-image), skew-hermitian violations in the λ₃
/// table, and quadratic-relation violations against the μ₃ lifts. Empty
/// means consistent.
std::vector<ValidationIssue> validate_scenario(const ManifoldScenario& scenario);

/// Closes stabilizer generators under products up to the given word length,
/// propagating translations by U_{s r} = U_s + s U_r s^-1 and
/// U_{s^-1} = -conjugate(s^-1, U_s). Conflicting arrivals are tolerated
/// exactly when they differ by a φ-image member; otherwise
/// InconsistentCocycle with the witness pair.
std::vector<std::pair<GroupElement, AClass>> close_cocycle(
    const ModelRef& model,
    const std::vector<std::pair<GroupElement, AClass>>& generators, int depth,
    const PhiImage& image);

/// The declared stabilizer as a concrete entry table plus completeness:
/// full-trivial enumerates the group (or a ball on infinite groups, which is
/// never complete), table mode passes through with the implicit identity
/// entry, generated mode runs close_cocycle.
std::pair<std::vector<std::pair<GroupElement, AClass>>, bool> materialize_stabilizer(
    const ManifoldScenario& scenario);

}  // namespace sphereiso::manifold
