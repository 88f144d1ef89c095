#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sphereiso/errors.hpp"
#include "sphereiso/numeric.hpp"

namespace sphereiso::groups {

class GroupModel;
using ModelRef = std::shared_ptr<const GroupModel>;

enum class GroupKind {
  FiniteTable,
  Permutation,
  Free,
  Abelian,
  Product,
};

/// One syllable of a word: a named generator raised to an exponent.
struct Syllable {
  std::string symbol;
  Int exponent = 1;
};

using Word = std::vector<Syllable>;

/// A group element in canonical form, tied to the model that produced it.
/// Construction goes through GroupModel, which guarantees canonicality, so
/// equality is plain data equality. Immutable.
class GroupElement {
 public:
  GroupElement() = default;  // empty shell; only valid values come from a model

  const ModelRef& model() const { return model_; }
  bool valid() const { return model_ != nullptr; }

  bool is_identity() const;
  /// True iff g == g^-1 and g is not the identity.
  bool is_involution() const;

  GroupElement inverse() const;

  /// Canonical byte key; equal keys within one model mean equal elements.
  const std::string& serial_key() const { return key_; }

  /// Total order: length-lexicographic on the serial key.
  static bool serial_less(const GroupElement& a, const GroupElement& b) {
    return length_lex_less(a.key_, b.key_);
  }

  bool operator==(const GroupElement& other) const;
  bool operator!=(const GroupElement& other) const { return !(*this == other); }

  /// Word notation, e.g. "g h^-1 g^2"; identity prints as "1".
  std::string str() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

 private:
  friend class GroupModel;

  // Canonical data, interpretation depends on the model kind:
  //  - FiniteTable: index into the table (single-entry ints vector)
  //  - Permutation: image tuple (ints vector)
  //  - Free: reduced word as (generator index, exponent) pairs
  //  - Abelian: one exponent per generator, torsion entries in [0, m)
  //  - Product: component elements
  using FreeWord = std::vector<std::pair<int, Int>>;
  using Data = std::variant<std::vector<int>, std::vector<Int>, FreeWord,
                            std::vector<GroupElement>>;

  GroupElement(ModelRef model, Data data, std::string key)
      : model_(std::move(model)), data_(std::move(data)), key_(std::move(key)) {}

  ModelRef model_;
  Data data_;
  std::string key_;
};

/// Immutable description of a group with a decidable word problem. All
/// element-level operations live here; GroupElement methods forward to the
/// owning model. Share via ModelRef.
class GroupModel : public std::enable_shared_from_this<GroupModel> {
 public:
  /// Accepts kinds "free", "finite_abelian", "abelian", "permutation",
  /// "finite_table" and "direct_product". Rejects unknown kinds with
  /// UnsupportedGroupKind and malformed fragments with SchemaError.
  static ModelRef from_json(const nlohmann::json& j, const std::string& path = "group");

  nlohmann::json to_json() const;

  GroupKind kind() const;
  bool is_finite() const;
  bool is_abelian() const;

  /// Group order; throws InfiniteGroup when there is none.
  Int order() const;

  GroupElement identity() const;

  /// Canonical form of a word over the declared symbols. Unknown symbols
  /// raise UnknownGenerator.
  GroupElement normalize(const Word& word) const;

  /// Parses word notation: whitespace-separated symbols with optional
  /// integer exponents ("g h^-1 g^2"); "1" denotes the identity.
  GroupElement parse(std::string_view text) const;

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;

  /// All elements in serial-key order; throws InfiniteGroup.
  std::vector<GroupElement> enumerate() const;

  /// Elements reachable from the identity by at most `radius` factors drawn
  /// from the standard generators and their inverses, in serial-key order.
  std::vector<GroupElement> ball(int radius) const;

  /// The model's own generating set: declared symbols for free/abelian
  /// kinds, the given permutations, every non-identity element of a table,
  /// embedded factor generators for products.
  std::vector<GroupElement> standard_generators() const;

  /// Structural identity; equal signatures behave identically.
  const std::string& signature() const { return signature_; }

  static bool same_model(const ModelRef& a, const ModelRef& b) {
    return a == b || (a && b && a->signature_ == b->signature_);
  }

  /// Throws ModelMismatch unless both refs agree structurally.
  static void require_same(const ModelRef& a, const ModelRef& b,
                           const char* operation);

  std::string element_str(const GroupElement& e) const;

 private:
  struct TableData {
    int size = 0;
    std::vector<std::vector<int>> table;  // table[a][b] = a*b
    int identity = 0;
    std::vector<int> inverse;
    std::vector<std::string> names;  // names[identity] == "1"
    std::unordered_map<std::string, int> index_by_name;
  };

  struct PermData {
    int degree = 0;
    std::vector<std::vector<int>> generators;
    std::vector<std::string> symbols;
    // Full enumeration, sorted by image tuple; words hold a shortest
    // expression of each element in the declared generators.
    std::vector<std::vector<int>> elements;
    std::vector<std::string> words;
    std::unordered_map<std::string, int> index_by_key;
    int identity_index = 0;
  };

  struct FreeData {
    std::vector<std::string> symbols;
  };

  struct AbelianData {
    int rank = 0;                      // number of infinite coordinates
    std::vector<Int> moduli;           // torsion coordinates, each >= 2
    std::vector<std::string> symbols;  // rank + moduli.size() names
    bool finite_wire = false;          // came in as "finite_abelian"
  };

  struct ProductData {
    std::vector<ModelRef> factors;
    std::unordered_map<std::string, int> factor_by_symbol;
  };

  using Payload =
      std::variant<TableData, PermData, FreeData, AbelianData, ProductData>;

  explicit GroupModel(Payload payload);

  GroupElement make(GroupElement::Data data) const;
  std::string key_of(const GroupElement::Data& data) const;

  int symbol_index(const std::string& symbol, const std::vector<std::string>& pool) const;

  const TableData& table() const { return std::get<TableData>(payload_); }
  const PermData& perm() const { return std::get<PermData>(payload_); }
  const FreeData& free() const { return std::get<FreeData>(payload_); }
  const AbelianData& abelian() const { return std::get<AbelianData>(payload_); }
  const ProductData& product() const { return std::get<ProductData>(payload_); }

  Payload payload_;
  std::string signature_;
};

/// Convenience free functions mirroring the element methods.
inline GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  return a * b;
}
inline GroupElement invert(const GroupElement& a) { return a.inverse(); }

}  // namespace sphereiso::groups
