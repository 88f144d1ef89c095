#include "sphereiso/groupring.hpp"

#include <algorithm>

#include "sphereiso/errors.hpp"

namespace sphereiso::groupring {

using groups::GroupModel;

namespace {

void sort_and_merge(std::vector<std::pair<GroupElement, Int>>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return GroupElement::serial_less(a.first, b.first);
  });
  std::vector<std::pair<GroupElement, Int>> merged;
  for (auto& [g, c] : terms) {
    if (!merged.empty() && merged.back().first.serial_key() == g.serial_key())
      merged.back().second += c;
    else
      merged.emplace_back(std::move(g), std::move(c));
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0; });
  terms = std::move(merged);
}

nlohmann::json coefficient_to_json(const Int& c) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (c >= lo && c <= hi) return static_cast<long long>(c);
  return c.str();
}

}  // namespace

RingElement RingElement::monomial(const GroupElement& g, Int coefficient) {
  RingElement out(g.model());
  if (coefficient != 0) out.terms_.emplace_back(g, std::move(coefficient));
  return out;
}

RingElement RingElement::collect(ModelRef model,
                                 std::vector<std::pair<GroupElement, Int>> terms) {
  RingElement out(std::move(model));
  for (const auto& [g, c] : terms)
    GroupModel::require_same(out.model_, g.model(), "ring collect");
  sort_and_merge(terms);
  out.terms_ = std::move(terms);
  return out;
}

Int RingElement::coefficient(const GroupElement& g) const {
  for (const auto& [h, c] : terms_)
    if (h.serial_key() == g.serial_key()) return c;
  return 0;
}

RingElement RingElement::operator-() const {
  RingElement out(model_);
  out.terms_.reserve(terms_.size());
  for (const auto& [g, c] : terms_) out.terms_.emplace_back(g, -c);
  return out;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  GroupModel::require_same(a.model_, b.model_, "ring add");
  std::vector<std::pair<GroupElement, Int>> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  sort_and_merge(terms);
  RingElement out(a.model_);
  out.terms_ = std::move(terms);
  return out;
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
  GroupModel::require_same(a.model_, b.model_, "ring multiply");
  std::vector<std::pair<GroupElement, Int>> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [g, cg] : a.terms_)
    for (const auto& [h, ch] : b.terms_) terms.emplace_back(g * h, cg * ch);
  sort_and_merge(terms);
  RingElement out(a.model_);
  out.terms_ = std::move(terms);
  return out;
}

RingElement RingElement::scaled(const Int& c) const {
  RingElement out(model_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [g, cg] : terms_) out.terms_.emplace_back(g, cg * c);
  return out;
}

RingElement RingElement::bar() const {
  std::vector<std::pair<GroupElement, Int>> terms;
  terms.reserve(terms_.size());
  for (const auto& [g, c] : terms_) terms.emplace_back(g.inverse(), c);
  sort_and_merge(terms);
  RingElement out(model_);
  out.terms_ = std::move(terms);
  return out;
}

bool RingElement::operator==(const RingElement& other) const {
  if (!GroupModel::same_model(model_, other.model_)) return false;
  if (terms_.size() != other.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].second != other.terms_[i].second) return false;
    if (terms_[i].first.serial_key() != other.terms_[i].first.serial_key()) return false;
  }
  return true;
}

nlohmann::json RingElement::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& [g, c] : terms_)
    out.push_back(nlohmann::json::array({coefficient_to_json(c), g.str()}));
  return out;
}

RingElement RingElement::from_json(const nlohmann::json& j, const ModelRef& model,
                                   const std::string& path) {
  if (!j.is_array()) throw SchemaError("ring element must be a list of [coef, word] pairs", path);
  std::vector<std::pair<GroupElement, Int>> terms;
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& item = j[i];
    const std::string ipath = path + "[" + std::to_string(i) + "]";
    if (!item.is_array() || item.size() != 2)
      throw SchemaError("term must be a [coef, word] pair", ipath);
    Int coef;
    if (item[0].is_number_integer())
      coef = Int(item[0].get<long long>());
    else if (item[0].is_string())
      coef = int_from_string(item[0].get<std::string>());
    else
      throw SchemaError("coefficient must be an integer", ipath);
    if (!item[1].is_string()) throw SchemaError("group word must be a string", ipath);
    try {
      terms.emplace_back(model->parse(item[1].get<std::string>()), std::move(coef));
    } catch (const UnknownGenerator& e) {
      throw SchemaError(e.what(), ipath);
    }
  }
  return collect(model, std::move(terms));
}

std::string RingElement::pretty() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : terms_) {
    const bool negative = c < 0;
    Int mag = negative ? Int(-c) : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const std::string word = g.str();
    if (word == "1") {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + " ";
      out += word;
    }
  }
  return out;
}

std::vector<ValidationIssue> check_skew_hermitian(
    const std::map<std::pair<std::string, std::string>, RingElement>& lambda) {
  std::vector<ValidationIssue> issues;
  for (const auto& [key, value] : lambda) {
    const auto& [i, j] = key;
    auto transpose = lambda.find({j, i});
    const std::string where = "lambda(" + i + "," + j + ")";
    if (transpose == lambda.end()) {
      issues.push_back({where, "missing transpose entry lambda(" + j + "," + i + ")"});
      continue;
    }
    if (!(transpose->second == -value.bar()))
      issues.push_back({where,
                        "violates lambda(" + j + "," + i + ") == -bar(lambda(" + i + "," +
                            j + ")): got " + transpose->second.pretty() + ", expected " +
                            (-value.bar()).pretty()});
  }
  return issues;
}

std::vector<ValidationIssue> check_quadratic_diagonal(
    const std::map<std::pair<std::string, std::string>, RingElement>& lambda,
    const std::map<std::string, RingElement>& mu) {
  std::vector<ValidationIssue> issues;
  for (const auto& [label, mu_value] : mu) {
    auto diag = lambda.find({label, label});
    if (diag == lambda.end()) continue;
    RingElement expected = mu_value - mu_value.bar();
    RingElement difference = diag->second - expected;
    // The identity coefficient of the diagonal is not pinned down.
    const auto identity = mu_value.model()->identity();
    difference = difference - RingElement::monomial(identity, difference.coefficient(identity));
    if (!difference.is_zero())
      issues.push_back({"lambda(" + label + "," + label + ")",
                        "violates lambda(i,i) == mu(i) - bar(mu(i)) away from the identity; "
                        "difference " +
                            difference.pretty()});
  }
  return issues;
}

}  // namespace sphereiso::groupring
