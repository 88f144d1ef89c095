#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sphereiso/groups.hpp"

namespace sphereiso::groupring {

using groups::GroupElement;
using groups::ModelRef;

/// An element of the integral group ring: a finite formal sum of group
/// elements with integer coefficients. Terms are kept sorted by serial key
/// with no zero coefficients, so equal values have equal term lists.
class RingElement {
 public:
  explicit RingElement(ModelRef model) : model_(std::move(model)) {}

  static RingElement zero(ModelRef model) { return RingElement(std::move(model)); }
  static RingElement monomial(const GroupElement& g, Int coefficient);

  /// Builds from arbitrary (element, coefficient) pairs: merges duplicates,
  /// drops zeros, sorts.
  static RingElement collect(ModelRef model,
                             std::vector<std::pair<GroupElement, Int>> terms);

  const ModelRef& model() const { return model_; }
  const std::vector<std::pair<GroupElement, Int>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t support_size() const { return terms_.size(); }

  Int coefficient(const GroupElement& g) const;

  RingElement operator-() const;
  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);

  RingElement scaled(const Int& c) const;

  /// The involution: g -> g^-1 extended additively.
  RingElement bar() const;

  bool operator==(const RingElement& other) const;
  bool operator!=(const RingElement& other) const { return !(*this == other); }

  /// Wire form: [[coefficient, "word"], ...] in canonical term order.
  /// Coefficients that fit in 64 bits are numbers, larger ones strings.
  nlohmann::json to_json() const;
  static RingElement from_json(const nlohmann::json& j, const ModelRef& model,
                               const std::string& path = "ring");

  /// Human notation, e.g. "3 g - h^-1 + 2". Zero prints "0".
  std::string pretty() const;

 private:
  ModelRef model_;
  std::vector<std::pair<GroupElement, Int>> terms_;
};

inline RingElement left_multiply(const GroupElement& g, const RingElement& x) {
  return RingElement::monomial(g, 1) * x;
}

/// Checks lambda(j, i) == -bar(lambda(i, j)) for every declared pair of a
/// symmetric intersection table. Keys are label pairs; missing transposes
/// are reported rather than assumed.
std::vector<ValidationIssue> check_skew_hermitian(
    const std::map<std::pair<std::string, std::string>, RingElement>& lambda);

/// Checks lambda(i, i) == mu(i) - bar(mu(i)) away from the identity
/// coefficient, for generators carrying a self-intersection lift.
std::vector<ValidationIssue> check_quadratic_diagonal(
    const std::map<std::pair<std::string, std::string>, RingElement>& lambda,
    const std::map<std::string, RingElement>& mu);

}  // namespace sphereiso::groupring
