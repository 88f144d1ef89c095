#include "sphereiso/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "sphereiso/errors.hpp"

namespace sphereiso::homotopy {

using groups::GroupModel;
using obstruction::PairClass;

Track::Track(GroupElement core, std::vector<DoublePoint> points)
    : core_(std::move(core)), points_(std::move(points)) {
  if (!core_.valid()) throw Error("track needs a core element");
  for (const auto& p : points_) {
    GroupModel::require_same(core_.model(), p.element.model(), "track");
    if (p.sign != 1 && p.sign != -1)
      throw SchemaError("double point sign must be +1 or -1");
    if (p.time <= 0 || p.time >= 1)
      throw SchemaError("double point time must lie strictly between 0 and 1");
  }
  std::sort(points_.begin(), points_.end(),
            [](const DoublePoint& a, const DoublePoint& b) { return a.time < b.time; });
  for (size_t i = 1; i < points_.size(); ++i) {
    if (points_[i - 1].time == points_[i].time)
      throw SchemaError("double point times must be pairwise distinct");
  }
}

Track Track::trivial(const ModelRef& model) { return Track(model->identity(), {}); }

nlohmann::json Track::to_json() const {
  auto points = nlohmann::json::array();
  for (const auto& p : points_)
    points.push_back(nlohmann::json::array(
        {p.sign, p.element.str(), rational_to_string(p.time)}));
  return nlohmann::json{{"core", core_.str()}, {"points", std::move(points)}};
}

Track Track::from_json(const nlohmann::json& j, const ModelRef& model,
                       const std::string& path) {
  if (!j.is_object()) throw SchemaError("track must be an object", path);
  if (!j.contains("core") || !j.at("core").is_string())
    throw SchemaError("track needs a \"core\" word", path);
  GroupElement core;
  try {
    core = model->parse(j.at("core").get<std::string>());
  } catch (const UnknownGenerator& e) {
    throw SchemaError(e.what(), path + ".core");
  }
  std::vector<DoublePoint> points;
  if (j.contains("points")) {
    if (!j.at("points").is_array())
      throw SchemaError("\"points\" must be a list", path + ".points");
    for (size_t i = 0; i < j.at("points").size(); ++i) {
      const auto& item = j.at("points")[i];
      const std::string ipath = path + ".points[" + std::to_string(i) + "]";
      if (!item.is_array() || item.size() != 3)
        throw SchemaError("point must be [sign, word, time]", ipath);
      if (!item[0].is_number_integer()) throw SchemaError("sign must be an integer", ipath);
      DoublePoint p;
      p.sign = item[0].get<int>();
      if (!item[1].is_string()) throw SchemaError("loop class must be a word", ipath);
      try {
        p.element = model->parse(item[1].get<std::string>());
      } catch (const UnknownGenerator& e) {
        throw SchemaError(e.what(), ipath);
      }
      if (!item[2].is_string())
        throw SchemaError("time must be an exact rational string like \"1/4\"", ipath);
      try {
        p.time = rational_from_string(item[2].get<std::string>());
      } catch (const SchemaError& e) {
        throw SchemaError(e.what(), ipath);
      }
      points.push_back(std::move(p));
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "core" && it.key() != "points")
      throw SchemaError("unknown field \"" + it.key() + "\"", path);
  }
  try {
    return Track(std::move(core), std::move(points));
  } catch (const SchemaError& e) {
    throw SchemaError(e.what(), path);
  }
}

std::string Track::pretty() const {
  std::string out = "core " + core_.str() + ";";
  if (points_.empty()) return out + " no double points";
  for (const auto& p : points_) {
    out += " (";
    out += p.sign > 0 ? "+" : "-";
    out += ", " + p.element.str() + ", " + rational_to_string(p.time) + ")";
  }
  return out;
}

AClass mu3(const Track& track) {
  std::vector<std::pair<GroupElement, Int>> terms;
  terms.reserve(track.points().size());
  for (const auto& p : track.points()) terms.emplace_back(p.element, p.sign);
  return obstruction::reduce(RingElement::collect(track.model(), std::move(terms)));
}

DoublePoint flipped(const DoublePoint& p) {
  return DoublePoint{-p.sign, p.element.inverse(), p.time};
}

Track flip_point(const Track& track, size_t index) {
  if (index >= track.points().size()) throw Error("flip index out of range");
  auto points = track.points();
  points[index] = flipped(points[index]);
  return Track(track.core(), std::move(points));
}

Track change_whisker(const Track& track, const GroupElement& w) {
  GroupModel::require_same(track.model(), w.model(), "change whisker");
  const GroupElement w_inv = w.inverse();
  auto points = track.points();
  for (auto& p : points) p.element = w * p.element * w_inv;
  return Track(w * track.core() * w_inv, std::move(points));
}

Track concat(const Track& first, const Track& second) {
  GroupModel::require_same(first.model(), second.model(), "concat");
  const GroupElement& s = first.core();
  const GroupElement s_inv = s.inverse();
  std::vector<DoublePoint> points;
  points.reserve(first.points().size() + second.points().size());
  for (const auto& p : first.points())
    points.push_back(DoublePoint{p.sign, p.element, p.time / 2});
  for (const auto& p : second.points())
    points.push_back(DoublePoint{p.sign, s * p.element * s_inv,
                                 Rational(1, 2) + p.time / 2});
  return Track(s * second.core(), std::move(points));
}

Track reverse(const Track& track) {
  const GroupElement c_inv = track.core().inverse();
  std::vector<DoublePoint> points;
  points.reserve(track.points().size());
  for (const auto& p : track.points())
    points.push_back(
        DoublePoint{-p.sign, c_inv * p.element * track.core(), Rational(1) - p.time});
  return Track(c_inv, std::move(points));
}

Track realize(const RingElement& x) {
  size_t total = 0;
  for (const auto& [g, c] : x.terms())
    total += static_cast<size_t>(boost::multiprecision::abs(c));
  std::vector<DoublePoint> points;
  points.reserve(total);
  size_t i = 1;
  for (const auto& [g, c] : x.terms()) {
    const int sign = c > 0 ? 1 : -1;
    Int count = boost::multiprecision::abs(c);
    for (Int k = 0; k < count; ++k)
      points.push_back(DoublePoint{
          sign, g, Rational(static_cast<long>(i++), static_cast<long>(total + 1))});
  }
  return Track(x.model()->identity(), std::move(points));
}

Track realize(const AClass& a) { return realize(obstruction::lift(a)); }

nlohmann::json CancellationPlan::to_json() const {
  auto pairs_json = nlohmann::json::array();
  for (const auto& e : pairs)
    pairs_json.push_back(nlohmann::json::array(
        {e.p, e.q, rational_to_string(e.common_time), e.flip_q}));
  auto cusps_json = nlohmann::json::array();
  for (const auto& e : cusps)
    cusps_json.push_back(nlohmann::json::array({e.index, e.sign}));
  return nlohmann::json{{"pairs", std::move(pairs_json)},
                        {"cusps", std::move(cusps_json)}};
}

CancellationPlan CancellationPlan::from_json(const nlohmann::json& j,
                                             const std::string& path) {
  if (!j.is_object()) throw SchemaError("plan must be an object", path);
  CancellationPlan plan;
  if (j.contains("pairs")) {
    if (!j.at("pairs").is_array()) throw SchemaError("\"pairs\" must be a list", path);
    for (size_t i = 0; i < j.at("pairs").size(); ++i) {
      const auto& item = j.at("pairs")[i];
      const std::string ipath = path + ".pairs[" + std::to_string(i) + "]";
      if (!item.is_array() || item.size() != 4)
        throw SchemaError("pair must be [p, q, time, flip_q]", ipath);
      if (!item[0].is_number_unsigned() || !item[1].is_number_unsigned())
        throw SchemaError("point indices must be non-negative integers", ipath);
      if (!item[2].is_string()) throw SchemaError("time must be a rational string", ipath);
      if (!item[3].is_boolean()) throw SchemaError("flip_q must be a boolean", ipath);
      plan.pairs.push_back(PairEntry{item[0].get<size_t>(), item[1].get<size_t>(),
                                     rational_from_string(item[2].get<std::string>()),
                                     item[3].get<bool>()});
    }
  }
  if (j.contains("cusps")) {
    if (!j.at("cusps").is_array()) throw SchemaError("\"cusps\" must be a list", path);
    for (size_t i = 0; i < j.at("cusps").size(); ++i) {
      const auto& item = j.at("cusps")[i];
      const std::string ipath = path + ".cusps[" + std::to_string(i) + "]";
      if (!item.is_array() || item.size() != 2)
        throw SchemaError("cusp must be [index, sign]", ipath);
      if (!item[0].is_number_unsigned())
        throw SchemaError("point index must be a non-negative integer", ipath);
      if (!item[1].is_number_integer()) throw SchemaError("sign must be an integer", ipath);
      plan.cusps.push_back(CuspEntry{item[0].get<size_t>(), item[1].get<int>()});
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "pairs" && it.key() != "cusps")
      throw SchemaError("unknown field \"" + it.key() + "\"", path);
  }
  return plan;
}

CancellationPlan whitney_plan(const Track& track) {
  AClass invariant = mu3(track);
  if (!invariant.is_zero()) throw NonVanishingObstruction(std::move(invariant));

  const auto& points = track.points();
  // bucket the double points; track order makes each bucket chronological
  std::map<std::string, std::vector<size_t>> by_class;  // rep serial -> indices
  std::vector<size_t> identity_points;
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].element.is_identity())
      identity_points.push_back(i);
    else
      by_class[PairClass::of(points[i].element).serial_key()].push_back(i);
  }

  CancellationPlan plan;

  for (const auto& [rep_key, indices] : by_class) {
    const PairClass pc = PairClass::of(points[indices.front()].element);
    if (!pc.involution) {
      // normalized sign: the contribution to the representative's coefficient
      auto normalized = [&](size_t i) {
        return points[i].element == pc.representative ? points[i].sign : -points[i].sign;
      };
      std::deque<size_t> plus, minus;
      for (size_t i : indices) {
        auto& same = normalized(i) > 0 ? plus : minus;
        auto& opposite = normalized(i) > 0 ? minus : plus;
        if (!opposite.empty()) {
          size_t p = opposite.front();
          opposite.pop_front();
          plan.pairs.push_back(PairEntry{
              p, i, Rational(0), !(points[p].element == points[i].element)});
        } else {
          same.push_back(i);
        }
      }
      // mu3 == 0 forces full matching here
    } else {
      // involution class: any two points can pair; prefer opposite signs,
      // then flip one of a same-signed pair
      std::deque<size_t> plus, minus;
      for (size_t i : indices) {
        auto& same = points[i].sign > 0 ? plus : minus;
        auto& opposite = points[i].sign > 0 ? minus : plus;
        if (!opposite.empty()) {
          size_t p = opposite.front();
          opposite.pop_front();
          plan.pairs.push_back(PairEntry{p, i, Rational(0), false});
        } else {
          same.push_back(i);
        }
      }
      for (auto* queue : {&plus, &minus}) {
        while (queue->size() >= 2) {
          size_t p = queue->front();
          queue->pop_front();
          size_t q = queue->front();
          queue->pop_front();
          plan.pairs.push_back(PairEntry{p, q, Rational(0), true});
        }
      }
      // mod-2 coefficient zero means nothing is left over
    }
  }

  {
    // identity points: opposite-sign pairs cancel, the rest are cusps
    std::deque<size_t> plus, minus;
    for (size_t i : identity_points) {
      auto& same = points[i].sign > 0 ? plus : minus;
      auto& opposite = points[i].sign > 0 ? minus : plus;
      if (!opposite.empty()) {
        size_t p = opposite.front();
        opposite.pop_front();
        plan.pairs.push_back(PairEntry{p, i, Rational(0), false});
      } else {
        same.push_back(i);
      }
    }
    for (auto* queue : {&plus, &minus}) {
      for (size_t i : *queue) plan.cusps.push_back(CuspEntry{i, -points[i].sign});
    }
    std::sort(plan.cusps.begin(), plan.cusps.end(),
              [](const CuspEntry& a, const CuspEntry& b) { return a.index < b.index; });
  }

  const long total = static_cast<long>(plan.pairs.size());
  for (long i = 0; i < total; ++i)
    plan.pairs[static_cast<size_t>(i)].common_time = Rational(i + 1, total + 1);
  return plan;
}

bool verify_plan(const Track& track, const CancellationPlan& plan) {
  const auto& points = track.points();
  std::vector<int> used(points.size(), 0);
  auto claim = [&](size_t i) {
    if (i >= points.size() || used[i]) return false;
    used[i] = 1;
    return true;
  };
  std::set<Rational> times;
  for (const auto& e : plan.pairs) {
    if (!claim(e.p) || !claim(e.q)) return false;
    if (!times.insert(e.common_time).second) return false;
    DoublePoint a = points[e.p];
    DoublePoint b = points[e.q];
    if (e.flip_q) b = flipped(b);
    if (a.sign != -b.sign) return false;
    if (!(a.element == b.element)) return false;
  }
  for (const auto& e : plan.cusps) {
    if (!claim(e.index)) return false;
    if (!points[e.index].element.is_identity()) return false;
    // the recorded cusp cancels the point, so it carries the opposite sign
    if (points[e.index].sign != -e.sign) return false;
  }
  for (int flag : used)
    if (!flag) return false;
  return true;
}

}  // namespace sphereiso::homotopy
