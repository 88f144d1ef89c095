#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "sphereiso/obstruction.hpp"

namespace sphereiso::homotopy {

using groupring::RingElement;
using groups::GroupElement;
using groups::ModelRef;
using obstruction::AClass;

/// One transverse double point of a self-homotopy track: the sign of the
/// intersection, the loop class read off through the two sheets, and an
/// exact time in (0, 1).
struct DoublePoint {
  int sign = 1;  // +1 or -1
  GroupElement element;
  Rational time;
};

/// The combinatorial record of a generic self-homotopy: its double points
/// in time order (times pairwise distinct) plus the core, the loop class
/// traced out by the basepoint. A based track has trivial core. Immutable.
class Track {
 public:
  /// Sorts the points by time; rejects repeated times, signs outside
  /// {+1, -1}, times outside (0, 1), and foreign group elements.
  Track(GroupElement core, std::vector<DoublePoint> points);

  static Track trivial(const ModelRef& model);

  const ModelRef& model() const { return core_.model(); }
  const GroupElement& core() const { return core_; }
  const std::vector<DoublePoint>& points() const { return points_; }
  bool is_based() const { return core_.is_identity(); }

  /// {"core": "word", "points": [[sign, "word", "num/den"], ...]}.
  /// Times must be written as exact rational strings.
  nlohmann::json to_json() const;
  static Track from_json(const nlohmann::json& j, const ModelRef& model,
                         const std::string& path = "track");

  std::string pretty() const;

 private:
  GroupElement core_;
  std::vector<DoublePoint> points_;
};

/// The self-intersection invariant: the signed sum of double point loop
/// classes, read in the quotient target. Identity points drop out, a flip
/// g -> g^-1 costs a sign, involution classes count mod 2.
AClass mu3(const Track& track);

/// Pushes one sheet through the other: (sign, g) -> (-sign, g^-1).
DoublePoint flipped(const DoublePoint& p);

Track flip_point(const Track& track, size_t index);

/// Re-routes the whisker along w: core and every loop class conjugate.
Track change_whisker(const Track& track, const GroupElement& w);

/// Runs `first`, then `second` squeezed into the second half, with the
/// second leg's loop classes conjugated by the first core.
Track concat(const Track& first, const Track& second);

/// The same homotopy run backwards.
Track reverse(const Track& track);

/// A based track whose double points spell out the given ring element:
/// |c| points of sign(c) per term, at times i/(k+1).
Track realize(const RingElement& x);

/// realize of the canonical lift, so mu3(realize(a)) == a.
Track realize(const AClass& a);

/// One Whitney move: double points p and q cancel at a shared time after
/// optionally flipping q's sheet.
struct PairEntry {
  size_t p = 0;
  size_t q = 0;
  Rational common_time;
  bool flip_q = false;
};

/// One cusp move, absorbing a single identity-labeled double point.
/// The recorded sign is the cusp's own, opposite to the absorbed point.
struct CuspEntry {
  size_t index = 0;
  int sign = 1;
};

struct CancellationPlan {
  std::vector<PairEntry> pairs;
  std::vector<CuspEntry> cusps;

  nlohmann::json to_json() const;
  static CancellationPlan from_json(const nlohmann::json& j,
                                    const std::string& path = "plan");
};

/// Raised when a cancellation is requested for a track whose invariant is
/// not zero; carries the invariant as the witness.
struct NonVanishingObstruction : Error {
  explicit NonVanishingObstruction(AClass value)
      : Error("double points cannot be cancelled: mu3 = " + value.pretty()),
        obstruction(std::move(value)) {}

  AClass obstruction;
};

/// Deterministic full cancellation: pairs matching loop classes (flipping
/// sheets where the class only matches inversely), absorbs leftover
/// identity points with cusps. Throws NonVanishingObstruction iff mu3 is
/// nonzero; otherwise the returned plan consumes every double point and
/// passes verify_plan.
CancellationPlan whitney_plan(const Track& track);

/// Checks a plan against a track: every point consumed exactly once, each
/// pair cancellable after the recorded flip, common times pairwise
/// distinct, cusps only on identity points with matching signs.
bool verify_plan(const Track& track, const CancellationPlan& plan);

}  // namespace sphereiso::homotopy
