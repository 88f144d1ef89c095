#include "sphereiso/obstruction.hpp"

#include <algorithm>

#include "sphereiso/errors.hpp"

namespace sphereiso::obstruction {

using groups::GroupModel;

namespace {

nlohmann::json coefficient_to_json(const Int& c) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (c >= lo && c <= hi) return static_cast<long long>(c);
  return c.str();
}

// Shared accumulator: fold (group element, integer) contributions into
// canonical pair-class terms.
struct Accumulator {
  std::vector<std::pair<PairClass, Int>> raw;

  void add(const GroupElement& g, const Int& c) {
    if (g.is_identity() || c == 0) return;
    PairClass pc = PairClass::of(g);
    if (!pc.involution && !(pc.representative == g))
      raw.emplace_back(std::move(pc), -c);
    else
      raw.emplace_back(std::move(pc), c);
  }

  std::vector<std::pair<PairClass, Int>> finish() {
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
      return length_lex_less(a.first.serial_key(), b.first.serial_key());
    });
    std::vector<std::pair<PairClass, Int>> merged;
    for (auto& [pc, c] : raw) {
      if (!merged.empty() && merged.back().first.serial_key() == pc.serial_key())
        merged.back().second += c;
      else
        merged.emplace_back(std::move(pc), std::move(c));
    }
    for (auto& [pc, c] : merged) {
      if (pc.involution) {
        c %= 2;
        if (c < 0) c += 2;
      }
    }
    std::erase_if(merged, [](const auto& t) { return t.second == 0; });
    return merged;
  }
};

}  // namespace

PairClass PairClass::of(const GroupElement& g) {
  if (g.is_identity()) throw Error("the identity has no pair class");
  GroupElement inv = g.inverse();
  PairClass out;
  out.involution = inv == g;
  out.representative = GroupElement::serial_less(inv, g) ? std::move(inv) : g;
  return out;
}

AClass AClass::collect(ModelRef model, std::vector<std::pair<PairClass, Int>> terms) {
  Accumulator acc;
  for (auto& [pc, c] : terms) {
    GroupModel::require_same(model, pc.representative.model(), "class collect");
    acc.raw.emplace_back(std::move(pc), std::move(c));
  }
  AClass out(std::move(model));
  out.terms_ = acc.finish();
  return out;
}

Int AClass::coefficient(const PairClass& pc) const {
  for (const auto& [q, c] : terms_)
    if (q.serial_key() == pc.serial_key()) return c;
  return 0;
}

AClass AClass::operator-() const {
  AClass out(model_);
  out.terms_.reserve(terms_.size());
  for (const auto& [pc, c] : terms_)
    out.terms_.emplace_back(pc, pc.involution ? c : -c);
  return out;
}

AClass operator+(const AClass& a, const AClass& b) {
  GroupModel::require_same(a.model_, b.model_, "class add");
  std::vector<std::pair<PairClass, Int>> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  Accumulator acc;
  acc.raw = std::move(terms);
  AClass out(a.model_);
  out.terms_ = acc.finish();
  return out;
}

AClass operator-(const AClass& a, const AClass& b) { return a + (-b); }

bool AClass::operator==(const AClass& other) const {
  if (!GroupModel::same_model(model_, other.model_)) return false;
  if (terms_.size() != other.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].second != other.terms_[i].second) return false;
    if (!(terms_[i].first == other.terms_[i].first)) return false;
  }
  return true;
}

std::string AClass::serial_key() const {
  std::string key;
  for (const auto& [pc, c] : terms_) {
    const auto& rep = pc.serial_key();
    key.push_back(static_cast<char>((rep.size() >> 8) & 0xff));
    key.push_back(static_cast<char>(rep.size() & 0xff));
    key += rep;
    append_encoded_int(key, c);
  }
  return key;
}

nlohmann::json AClass::to_json() const {
  auto int_part = nlohmann::json::array();
  auto mod2_part = nlohmann::json::array();
  for (const auto& [pc, c] : terms_) {
    if (pc.involution)
      mod2_part.push_back(pc.representative.str());
    else
      int_part.push_back(nlohmann::json::array({coefficient_to_json(c),
                                                pc.representative.str()}));
  }
  return nlohmann::json{{"int_part", std::move(int_part)},
                        {"mod2_part", std::move(mod2_part)}};
}

AClass AClass::from_json(const nlohmann::json& j, const ModelRef& model,
                         const std::string& path) {
  if (!j.is_object()) throw SchemaError("class must be an object", path);
  Accumulator acc;
  if (j.contains("int_part")) {
    const auto& part = j.at("int_part");
    if (!part.is_array()) throw SchemaError("int_part must be a list", path + ".int_part");
    for (size_t i = 0; i < part.size(); ++i) {
      const std::string ipath = path + ".int_part[" + std::to_string(i) + "]";
      const auto& item = part[i];
      if (!item.is_array() || item.size() != 2)
        throw SchemaError("entry must be a [coef, word] pair", ipath);
      Int coef;
      if (item[0].is_number_integer())
        coef = Int(item[0].get<long long>());
      else if (item[0].is_string())
        coef = int_from_string(item[0].get<std::string>());
      else
        throw SchemaError("coefficient must be an integer", ipath);
      if (!item[1].is_string()) throw SchemaError("group word must be a string", ipath);
      try {
        acc.add(model->parse(item[1].get<std::string>()), coef);
      } catch (const UnknownGenerator& e) {
        throw SchemaError(e.what(), ipath);
      }
    }
  }
  if (j.contains("mod2_part")) {
    const auto& part = j.at("mod2_part");
    if (!part.is_array()) throw SchemaError("mod2_part must be a list", path + ".mod2_part");
    for (size_t i = 0; i < part.size(); ++i) {
      const std::string ipath = path + ".mod2_part[" + std::to_string(i) + "]";
      if (!part[i].is_string()) throw SchemaError("entry must be a group word", ipath);
      GroupElement g;
      try {
        g = model->parse(part[i].get<std::string>());
      } catch (const UnknownGenerator& e) {
        throw SchemaError(e.what(), ipath);
      }
      if (g.is_identity() || !g.is_involution())
        throw SchemaError("'" + part[i].get<std::string>() + "' is not an involution", ipath);
      acc.add(g, 1);
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "int_part" && it.key() != "mod2_part")
      throw SchemaError("unknown field \"" + it.key() + "\"", path);
  }
  AClass out(model);
  out.terms_ = acc.finish();
  return out;
}

std::string AClass::pretty() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [pc, c] : terms_) {
    const bool negative = c < 0;
    Int mag = negative ? Int(-c) : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (pc.involution) {
      out += "{" + pc.representative.str() + "}_2";
    } else {
      if (mag != 1) out += mag.str();
      out += "{" + pc.representative.str() + "}";
    }
  }
  return out;
}

AClass reduce(const RingElement& x) {
  Accumulator acc;
  for (const auto& [g, c] : x.terms()) acc.add(g, c);
  AClass out(x.model());
  out = AClass::collect(x.model(), acc.finish());
  return out;
}

AClass conjugate(const GroupElement& s, const AClass& a) {
  GroupModel::require_same(s.model(), a.model(), "class conjugate");
  const GroupElement s_inv = s.inverse();
  Accumulator acc;
  for (const auto& [pc, c] : a.terms())
    acc.add(s * pc.representative * s_inv, c);
  return AClass::collect(a.model(), acc.finish());
}

RingElement lift(const AClass& a) {
  std::vector<std::pair<GroupElement, Int>> terms;
  terms.reserve(a.terms().size());
  for (const auto& [pc, c] : a.terms()) terms.emplace_back(pc.representative, c);
  return RingElement::collect(a.model(), std::move(terms));
}

}  // namespace sphereiso::obstruction
