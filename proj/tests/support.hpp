#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sphereiso/examples.hpp"
#include "sphereiso/isotopy.hpp"

// Shared fixtures for the test binaries: canned group models, terse builders
// for ring elements / classes / tracks, and a seeded random source.
namespace ts {

using namespace sphereiso;
using groupring::RingElement;
using groups::GroupElement;
using groups::ModelRef;
using homotopy::DoublePoint;
using homotopy::Track;
using obstruction::AClass;

inline ModelRef model(const std::string& text) {
  return groups::GroupModel::from_json(nlohmann::json::parse(text), "group");
}

inline ModelRef trivial_group() { return model(R"({"kind": "finite_abelian", "moduli": []})"); }
inline ModelRef free1() { return model(R"({"kind": "free", "rank": 1, "symbols": ["g"]})"); }
inline ModelRef free2() { return model(R"({"kind": "free", "rank": 2, "symbols": ["g", "h"]})"); }
inline ModelRef zmodel() { return model(R"({"kind": "abelian", "rank": 1, "symbols": ["x"]})"); }
inline ModelRef z2() { return model(R"({"kind": "finite_abelian", "moduli": [2], "symbols": ["t"]})"); }
inline ModelRef z4() { return model(R"({"kind": "finite_abelian", "moduli": [4], "symbols": ["t"]})"); }
inline ModelRef s3() {
  return model(
      R"({"kind": "permutation", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]], "symbols": ["a", "b"]})");
}
inline ModelRef free2_x_z2() {
  return model(
      R"({"kind": "direct_product", "factors": [
            {"kind": "free", "rank": 2, "symbols": ["g", "h"]},
            {"kind": "finite_abelian", "moduli": [2], "symbols": ["t"]}]})");
}

inline RingElement ring(const ModelRef& m,
                        std::initializer_list<std::pair<long, const char*>> terms) {
  RingElement x = RingElement::zero(m);
  for (const auto& [c, w] : terms)
    x = x + RingElement::monomial(m->parse(w), Int(c));
  return x;
}

inline AClass cls(const ModelRef& m,
                  std::initializer_list<std::pair<long, const char*>> terms) {
  return obstruction::reduce(ring(m, terms));
}

inline Track track(const ModelRef& m, const char* core,
                   std::initializer_list<std::tuple<int, const char*, const char*>> pts) {
  std::vector<DoublePoint> points;
  for (const auto& [sign, word, time] : pts)
    points.push_back(DoublePoint{sign, m->parse(word), rational_from_string(time)});
  return Track(m->parse(core), std::move(points));
}

inline manifold::ManifoldScenario scenario(const std::string& text) {
  return manifold::load_scenario(nlohmann::json::parse(text));
}

// deterministic pseudo-random source for the property tests
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(uint64_t seed) : eng(seed) {}

  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(eng);
  }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[static_cast<size_t>(uniform(0, static_cast<long>(pool.size()) - 1))];
  }

  std::vector<GroupElement> pool(const ModelRef& m, int radius = 2) {
    return m->is_finite() ? m->enumerate() : m->ball(radius);
  }

  RingElement element(const ModelRef& m, const std::vector<GroupElement>& pool,
                      int max_terms = 6, long max_coef = 9) {
    RingElement x = RingElement::zero(m);
    long terms = uniform(0, max_terms);
    for (long i = 0; i < terms; ++i) {
      long c = uniform(-max_coef, max_coef);
      if (c == 0) c = 1;
      x = x + RingElement::monomial(pick(pool), Int(c));
    }
    return x;
  }

  Track based_track(const ModelRef& m, const std::vector<GroupElement>& pool,
                    int max_points = 5) {
    long n = uniform(0, max_points);
    std::vector<DoublePoint> points;
    for (long i = 0; i < n; ++i)
      points.push_back(DoublePoint{uniform(0, 1) ? 1 : -1, pick(pool),
                                   Rational(i + 1, n + 1)});
    return Track(m->identity(), std::move(points));
  }
};

}  // namespace ts
