#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sphereiso/groupring.hpp"

namespace sphereiso::obstruction {

using groupring::RingElement;
using groups::GroupElement;
using groups::ModelRef;

/// The unordered pair {g, g^-1} for a non-identity g, named by its
/// serial-least member. Classes with g == g^-1 are flagged: their
/// coefficient in the quotient is only defined mod 2.
struct PairClass {
  GroupElement representative;
  bool involution = false;

  static PairClass of(const GroupElement& g);

  const std::string& serial_key() const { return representative.serial_key(); }
  bool operator==(const PairClass& other) const {
    return involution == other.involution &&
           representative == other.representative;
  }
};

/// An element of the quotient of the group ring by the identity and by
/// g + g^-1 for every g. Concretely: an integer per non-involution pair
/// class (measured against the serial-least representative) and a mod-2
/// bit per involution class. Terms sorted, zeros dropped, involution
/// coefficients stored as 1.
class AClass {
 public:
  explicit AClass(ModelRef model) : model_(std::move(model)) {}

  static AClass zero(ModelRef model) { return AClass(std::move(model)); }

  static AClass collect(ModelRef model, std::vector<std::pair<PairClass, Int>> terms);

  const ModelRef& model() const { return model_; }
  const std::vector<std::pair<PairClass, Int>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coefficient(const PairClass& pc) const;

  AClass operator-() const;
  friend AClass operator+(const AClass& a, const AClass& b);
  friend AClass operator-(const AClass& a, const AClass& b);

  bool operator==(const AClass& other) const;
  bool operator!=(const AClass& other) const { return !(*this == other); }

  /// Deterministic byte key; equal keys within a model mean equal classes.
  std::string serial_key() const;

  static bool serial_less(const AClass& a, const AClass& b) {
    return length_lex_less(a.serial_key(), b.serial_key());
  }

  /// Wire form: {"int_part": [[coef, "word"], ...], "mod2_part": ["word", ...]}.
  nlohmann::json to_json() const;
  static AClass from_json(const nlohmann::json& j, const ModelRef& model,
                          const std::string& path = "class");

  /// Human notation, e.g. "5{g} - 2{h g h^-1} + {t}_2". Zero prints "0".
  std::string pretty() const;

 private:
  ModelRef model_;
  std::vector<std::pair<PairClass, Int>> terms_;
};

/// Projection of the group ring onto the quotient: drops the identity,
/// folds g^-1 onto -g, and reads involution classes mod 2.
AClass reduce(const RingElement& x);

/// The conjugation action s . a, induced by g -> s g s^-1.
AClass conjugate(const GroupElement& s, const AClass& a);

/// The canonical section: + coefficient on the least representative for
/// integer classes, the representative itself for mod-2 classes.
/// reduce(lift(a)) == a always holds.
RingElement lift(const AClass& a);

}  // namespace sphereiso::obstruction
