#include "sphereiso/manifold.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace sphereiso::manifold {

using groups::GroupModel;

// ---------------------------------------------------------------------------
// coordinates over pair classes

std::optional<size_t> ACoordSystem::index_of(const PairClass& pc) const {
  auto it = std::lower_bound(
      classes.begin(), classes.end(), pc, [](const PairClass& a, const PairClass& b) {
        return length_lex_less(a.serial_key(), b.serial_key());
      });
  if (it == classes.end() || it->serial_key() != pc.serial_key()) return std::nullopt;
  return static_cast<size_t>(it - classes.begin());
}

std::optional<std::vector<Int>> ACoordSystem::vectorize(const AClass& a) const {
  std::vector<Int> v(classes.size(), Int(0));
  for (const auto& [pc, c] : a.terms()) {
    auto idx = index_of(pc);
    if (!idx) return std::nullopt;
    v[*idx] = c;
  }
  return v;
}

AClass ACoordSystem::devectorize(const std::vector<Int>& v, const ModelRef& model) const {
  if (v.size() != classes.size())
    throw DimensionMismatch("coordinate vector does not match the class list");
  std::vector<std::pair<PairClass, Int>> terms;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) terms.emplace_back(classes[i], v[i]);
  return AClass::collect(model, std::move(terms));
}

bool PhiImage::contains(const AClass& a) const {
  auto v = coords.vectorize(a);
  if (!v) return false;
  return lattice.membership(*v).has_value();
}

AClass PhiImage::coset_representative(const AClass& a) const {
  std::vector<Int> v(coords.size(), Int(0));
  std::vector<std::pair<PairClass, Int>> outside;
  for (const auto& [pc, c] : a.terms()) {
    if (auto idx = coords.index_of(pc))
      v[*idx] = c;
    else
      outside.emplace_back(pc, c);
  }
  AClass reduced = coords.devectorize(lattice.canonical_residue(std::move(v)), a.model());
  if (outside.empty()) return reduced;
  return reduced + AClass::collect(a.model(), std::move(outside));
}

// ---------------------------------------------------------------------------
// the indeterminacy homomorphism

AClass phi(const Pi3Generator& gen, const GroupElement& g) {
  GroupModel::require_same(gen.mu3_lift.model(), g.model(), "phi");
  return obstruction::conjugate(g, obstruction::reduce(gen.mu3_lift)) +
         obstruction::reduce(groupring::left_multiply(g, gen.lambda_u));
}

PhiImage build_phi_image(const ModelRef& model,
                         const std::vector<Pi3Generator>& generators,
                         const std::vector<GroupElement>& closure_set,
                         bool complete) {
  for (const auto& gen : generators)
    GroupModel::require_same(model, gen.mu3_lift.model(), "phi image");
  std::vector<AClass> values;
  values.reserve(generators.size() * closure_set.size());
  for (const auto& gen : generators)
    for (const auto& g : closure_set) values.push_back(phi(gen, g));

  PhiImage image;
  image.complete = complete;
  for (const auto& value : values)
    for (const auto& [pc, c] : value.terms()) image.coords.classes.push_back(pc);
  std::sort(image.coords.classes.begin(), image.coords.classes.end(),
            [](const PairClass& a, const PairClass& b) {
              return length_lex_less(a.serial_key(), b.serial_key());
            });
  image.coords.classes.erase(
      std::unique(image.coords.classes.begin(), image.coords.classes.end(),
                  [](const PairClass& a, const PairClass& b) {
                    return a.serial_key() == b.serial_key();
                  }),
      image.coords.classes.end());
  for (const auto& pc : image.coords.classes)
    image.coords.moduli.push_back(pc.involution ? 2 : 0);

  std::vector<std::vector<Int>> columns;
  columns.reserve(values.size());
  for (const auto& value : values) columns.push_back(*image.coords.vectorize(value));
  image.lattice = intlinalg::LatticeBasis::build(
      static_cast<int>(image.coords.size()), image.coords.moduli, columns);
  return image;
}

std::vector<GroupElement> resolve_closure(const ModelRef& model,
                                          const ClosurePolicy& policy) {
  switch (policy.mode) {
    case ClosureMode::All:
      if (!model->is_finite())
        throw ClosureUnresolvable(
            "closure mode \"all\" needs a finite group; use \"ball\" or \"explicit\"");
      return model->enumerate();
    case ClosureMode::Ball:
      return model->ball(policy.radius);
    case ClosureMode::Explicit: {
      std::vector<GroupElement> out = policy.elements;
      out.push_back(model->identity());
      std::sort(out.begin(), out.end(), GroupElement::serial_less);
      out.erase(std::unique(out.begin(), out.end(),
                            [](const GroupElement& a, const GroupElement& b) {
                              return a.serial_key() == b.serial_key();
                            }),
                out.end());
      return out;
    }
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// scenario loading

namespace {

void reject_unknown_fields(const nlohmann::json& j, const std::string& path,
                           std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* name : allowed)
      if (it.key() == name) ok = true;
    if (!ok) throw SchemaError("unknown field \"" + it.key() + "\"", path);
  }
}

GroupElement parse_word_field(const nlohmann::json& j, const ModelRef& model,
                              const std::string& path) {
  if (!j.is_string()) throw SchemaError("expected a group word string", path);
  try {
    return model->parse(j.get<std::string>());
  } catch (const UnknownGenerator& e) {
    throw SchemaError(e.what(), path);
  }
}

int parse_small_count(const nlohmann::json& j, const std::string& path, int max) {
  if (!j.is_number_integer()) throw SchemaError("expected a non-negative integer", path);
  long long v = j.get<long long>();
  if (v < 0 || v > max)
    throw SchemaError("value out of range [0, " + std::to_string(max) + "]", path);
  return static_cast<int>(v);
}

std::vector<std::pair<GroupElement, AClass>> parse_stab_entries(
    const nlohmann::json& j, const ModelRef& model, const std::string& path,
    bool reject_duplicates) {
  if (!j.is_array()) throw SchemaError("expected a list of stabilizer entries", path);
  std::vector<std::pair<GroupElement, AClass>> out;
  std::unordered_set<std::string> seen;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string ipath = path + "[" + std::to_string(i) + "]";
    const auto& item = j[i];
    if (!item.is_object()) throw SchemaError("entry must be an object", ipath);
    reject_unknown_fields(item, ipath, {"s", "U_s"});
    if (!item.contains("s") || !item.contains("U_s"))
      throw SchemaError("entry needs \"s\" and \"U_s\"", ipath);
    GroupElement s = parse_word_field(item.at("s"), model, ipath + ".s");
    AClass u = AClass::from_json(item.at("U_s"), model, ipath + ".U_s");
    if (reject_duplicates && !seen.insert(s.serial_key()).second)
      throw SchemaError("duplicate entry for element '" + s.str() + "'", ipath);
    out.emplace_back(std::move(s), std::move(u));
  }
  return out;
}

}  // namespace

ManifoldScenario load_scenario(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("scenario must be an object", "scenario");
  reject_unknown_fields(j, "scenario", {"group", "pi3", "closure", "stabilizer",
                                        "lambda3_table", "name", "description"});
  for (const char* field : {"group", "pi3", "closure", "stabilizer"})
    if (!j.contains(field))
      throw SchemaError(std::string("missing required field \"") + field + "\"", "scenario");

  ModelRef model = GroupModel::from_json(j.at("group"), "group");

  ManifoldScenario scenario;
  scenario.model = model;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw SchemaError("name must be a string", "name");
    scenario.name = j.at("name").get<std::string>();
  }
  if (j.contains("description")) {
    if (!j.at("description").is_string())
      throw SchemaError("description must be a string", "description");
    scenario.description = j.at("description").get<std::string>();
  }

  {
    const auto& pi3 = j.at("pi3");
    if (!pi3.is_object()) throw SchemaError("pi3 must be an object", "pi3");
    reject_unknown_fields(pi3, "pi3", {"generators", "complete"});
    if (!pi3.contains("generators") || !pi3.at("generators").is_array())
      throw SchemaError("pi3 needs a \"generators\" list", "pi3");
    if (!pi3.contains("complete") || !pi3.at("complete").is_boolean())
      throw SchemaError("pi3 needs a boolean \"complete\" flag", "pi3");
    scenario.pi3_complete = pi3.at("complete").get<bool>();
    std::unordered_set<std::string> labels;
    for (size_t i = 0; i < pi3.at("generators").size(); ++i) {
      const std::string gpath = "pi3.generators[" + std::to_string(i) + "]";
      const auto& gj = pi3.at("generators")[i];
      if (!gj.is_object()) throw SchemaError("generator must be an object", gpath);
      reject_unknown_fields(gj, gpath, {"label", "mu3", "lambda_U"});
      if (!gj.contains("label") || !gj.at("label").is_string())
        throw SchemaError("generator needs a string \"label\"", gpath);
      const std::string label = gj.at("label").get<std::string>();
      if (!labels.insert(label).second)
        throw SchemaError("duplicate generator label '" + label + "'", gpath);
      if (!gj.contains("mu3") || !gj.contains("lambda_U"))
        throw SchemaError("generator needs \"mu3\" and \"lambda_U\"", gpath);
      scenario.generators.emplace_back(
          label, RingElement::from_json(gj.at("mu3"), model, gpath + ".mu3"),
          RingElement::from_json(gj.at("lambda_U"), model, gpath + ".lambda_U"));
    }
  }

  {
    const auto& closure = j.at("closure");
    if (!closure.is_object()) throw SchemaError("closure must be an object", "closure");
    if (!closure.contains("mode") || !closure.at("mode").is_string())
      throw SchemaError("closure needs a \"mode\"", "closure");
    const std::string mode = closure.at("mode").get<std::string>();
    if (mode == "all") {
      reject_unknown_fields(closure, "closure", {"mode"});
      scenario.closure.mode = ClosureMode::All;
    } else if (mode == "explicit") {
      reject_unknown_fields(closure, "closure", {"mode", "elements"});
      if (!closure.contains("elements") || !closure.at("elements").is_array())
        throw SchemaError("explicit closure needs an \"elements\" list", "closure");
      scenario.closure.mode = ClosureMode::Explicit;
      for (size_t i = 0; i < closure.at("elements").size(); ++i)
        scenario.closure.elements.push_back(
            parse_word_field(closure.at("elements")[i], model,
                             "closure.elements[" + std::to_string(i) + "]"));
    } else if (mode == "ball") {
      reject_unknown_fields(closure, "closure", {"mode", "radius"});
      if (!closure.contains("radius"))
        throw SchemaError("ball closure needs a \"radius\"", "closure");
      scenario.closure.mode = ClosureMode::Ball;
      scenario.closure.radius = parse_small_count(closure.at("radius"), "closure.radius", 12);
    } else {
      throw SchemaError("unknown closure mode \"" + mode + "\"", "closure.mode");
    }
  }

  {
    const auto& stab = j.at("stabilizer");
    if (!stab.is_object()) throw SchemaError("stabilizer must be an object", "stabilizer");
    if (!stab.contains("mode") || !stab.at("mode").is_string())
      throw SchemaError("stabilizer needs a \"mode\"", "stabilizer");
    const std::string mode = stab.at("mode").get<std::string>();
    if (mode == "full-trivial") {
      reject_unknown_fields(stab, "stabilizer", {"mode", "radius"});
      scenario.stab.mode = StabMode::FullTrivial;
      if (stab.contains("radius"))
        scenario.stab.radius = parse_small_count(stab.at("radius"), "stabilizer.radius", 12);
    } else if (mode == "table") {
      reject_unknown_fields(stab, "stabilizer", {"mode", "complete", "entries"});
      if (!stab.contains("complete") || !stab.at("complete").is_boolean())
        throw SchemaError("table stabilizer needs a boolean \"complete\"", "stabilizer");
      if (!stab.contains("entries"))
        throw SchemaError("table stabilizer needs \"entries\"", "stabilizer");
      scenario.stab.mode = StabMode::Table;
      scenario.stab.complete = stab.at("complete").get<bool>();
      scenario.stab.entries =
          parse_stab_entries(stab.at("entries"), model, "stabilizer.entries", true);
    } else if (mode == "generated") {
      reject_unknown_fields(stab, "stabilizer", {"mode", "depth", "generators", "complete"});
      if (!stab.contains("depth"))
        throw SchemaError("generated stabilizer needs a \"depth\"", "stabilizer");
      if (!stab.contains("generators"))
        throw SchemaError("generated stabilizer needs \"generators\"", "stabilizer");
      scenario.stab.mode = StabMode::Generated;
      scenario.stab.depth = parse_small_count(stab.at("depth"), "stabilizer.depth", 12);
      scenario.stab.entries =
          parse_stab_entries(stab.at("generators"), model, "stabilizer.generators", false);
      if (stab.contains("complete")) {
        if (!stab.at("complete").is_boolean())
          throw SchemaError("complete must be a boolean", "stabilizer.complete");
        scenario.stab.complete = stab.at("complete").get<bool>();
      }
    } else {
      throw SchemaError("unknown stabilizer mode \"" + mode + "\"", "stabilizer.mode");
    }
  }

  if (j.contains("lambda3_table")) {
    const auto& table = j.at("lambda3_table");
    if (!table.is_object())
      throw SchemaError("lambda3_table must be an object", "lambda3_table");
    std::unordered_set<std::string> labels;
    for (const auto& gen : scenario.generators) labels.insert(gen.label);
    for (auto it = table.begin(); it != table.end(); ++it) {
      const std::string key = it.key();
      const std::string kpath = "lambda3_table[\"" + key + "\"]";
      if (key.size() < 3 || key.front() != '(' || key.back() != ')')
        throw SchemaError("key must look like \"(i,j)\"", kpath);
      const std::string inner = key.substr(1, key.size() - 2);
      auto comma = inner.find(',');
      if (comma == std::string::npos) throw SchemaError("key must look like \"(i,j)\"", kpath);
      auto trim = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
      };
      const std::string i_label = trim(inner.substr(0, comma));
      const std::string j_label = trim(inner.substr(comma + 1));
      for (const auto& label : {i_label, j_label})
        if (!labels.count(label))
          throw SchemaError("unknown generator label '" + label + "'", kpath);
      scenario.lambda3.emplace(std::make_pair(i_label, j_label),
                               RingElement::from_json(it.value(), model, kpath));
    }
  }

  scenario.closure_set = resolve_closure(model, scenario.closure);

  // The declared flag is the user's assertion that the computed subgroup is
  // the whole image; a closure set covering a finite group makes that
  // automatic.  An empty generator list alone does not: the flag still
  // decides whether negatives may be reported.
  bool whole_group = false;
  if (model->is_finite() && Int(static_cast<long>(scenario.closure_set.size())) == model->order())
    whole_group = true;
  const bool complete = scenario.pi3_complete || whole_group;
  scenario.image =
      build_phi_image(model, scenario.generators, scenario.closure_set, complete);
  return scenario;
}

// ---------------------------------------------------------------------------
// stabilizer machinery

std::vector<std::pair<GroupElement, AClass>> close_cocycle(
    const ModelRef& model,
    const std::vector<std::pair<GroupElement, AClass>>& generators, int depth,
    const PhiImage& image) {
  if (depth < 0) throw SchemaError("closure depth must be >= 0");

  using Entry = std::pair<GroupElement, AClass>;
  std::unordered_map<std::string, Entry> table;

  auto add = [&](const GroupElement& s, const AClass& u) -> bool {
    auto it = table.find(s.serial_key());
    if (it == table.end()) {
      table.emplace(s.serial_key(), Entry{s, u});
      return true;
    }
    if (!image.contains(u - it->second.second))
      throw InconsistentCocycle(
          "translation conflict at '" + s.str() + "'",
          s.str() + ": " + it->second.second.pretty() + " vs " + u.pretty());
    return false;
  };

  // letters: the declared generators and their inverses, translations
  // derived via U_{s^-1} = -conjugate(s^-1, U_s); duplicates must agree
  // modulo the image
  std::vector<Entry> letters;
  std::unordered_map<std::string, size_t> letter_index;
  auto add_letter = [&](const GroupElement& s, const AClass& u) {
    auto it = letter_index.find(s.serial_key());
    if (it == letter_index.end()) {
      letter_index.emplace(s.serial_key(), letters.size());
      letters.emplace_back(s, u);
      return;
    }
    if (!image.contains(u - letters[it->second].second))
      throw InconsistentCocycle(
          "conflicting generator translations at '" + s.str() + "'",
          s.str() + ": " + letters[it->second].second.pretty() + " vs " + u.pretty());
  };
  for (const auto& [s, u] : generators) {
    GroupModel::require_same(model, s.model(), "stabilizer closure");
    add_letter(s, u);
    GroupElement s_inv = s.inverse();
    add_letter(s_inv, -obstruction::conjugate(s_inv, u));
  }

  add(model->identity(), AClass::zero(model));
  std::deque<Entry> frontier;
  frontier.emplace_back(model->identity(), AClass::zero(model));
  for (int step = 0; step < depth; ++step) {
    std::deque<Entry> next;
    for (const auto& [x, ux] : frontier) {
      for (const auto& [l, ul] : letters) {
        GroupElement y = x * l;
        AClass uy = ux + obstruction::conjugate(x, ul);
        if (add(y, uy)) next.emplace_back(std::move(y), std::move(uy));
      }
    }
    frontier = std::move(next);
  }

  std::vector<Entry> out;
  out.reserve(table.size());
  for (auto& [key, entry] : table) out.push_back(std::move(entry));
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return GroupElement::serial_less(a.first, b.first);
  });
  return out;
}

std::pair<std::vector<std::pair<GroupElement, AClass>>, bool> materialize_stabilizer(
    const ManifoldScenario& scenario) {
  using Entry = std::pair<GroupElement, AClass>;
  std::vector<Entry> entries;
  bool complete = false;
  switch (scenario.stab.mode) {
    case StabMode::FullTrivial: {
      const bool finite = scenario.model->is_finite();
      auto elements =
          finite ? scenario.model->enumerate() : scenario.model->ball(scenario.stab.radius);
      entries.reserve(elements.size());
      for (auto& e : elements)
        entries.emplace_back(std::move(e), AClass::zero(scenario.model));
      complete = finite;
      break;
    }
    case StabMode::Table: {
      entries = scenario.stab.entries;
      const std::string id_key = scenario.model->identity().serial_key();
      bool has_identity = false;
      for (const auto& [s, u] : entries)
        if (s.serial_key() == id_key) has_identity = true;
      if (!has_identity)
        entries.emplace_back(scenario.model->identity(), AClass::zero(scenario.model));
      std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return GroupElement::serial_less(a.first, b.first);
      });
      complete = scenario.stab.complete;
      break;
    }
    case StabMode::Generated: {
      entries = close_cocycle(scenario.model, scenario.stab.entries, scenario.stab.depth,
                              scenario.image);
      complete = scenario.stab.complete;
      break;
    }
  }
  return {std::move(entries), complete};
}

std::vector<ValidationIssue> validate_scenario(const ManifoldScenario& scenario) {
  std::vector<ValidationIssue> issues;

  try {
    auto [entries, complete] = materialize_stabilizer(scenario);
    if (scenario.stab.mode == StabMode::Table) {
      std::unordered_map<std::string, const AClass*> by_key;
      for (const auto& [s, u] : entries) by_key.emplace(s.serial_key(), &u);
      for (const auto& [s, us] : entries) {
        for (const auto& [r, ur] : entries) {
          GroupElement product = s * r;
          auto it = by_key.find(product.serial_key());
          if (it == by_key.end()) continue;
          AClass expected = us + obstruction::conjugate(s, ur);
          if (!scenario.image.contains(*it->second - expected))
            issues.push_back(
                {"stabilizer(" + s.str() + " · " + r.str() + ")",
                 "cocycle violation: tabled U = " + it->second->pretty() +
                     ", propagated U = " + expected.pretty() +
                     "; difference is outside the computed indeterminacy subgroup"});
        }
      }
    }
  } catch (const InconsistentCocycle& e) {
    issues.push_back({"stabilizer", e.what()});
  }

  for (auto& issue : groupring::check_skew_hermitian(scenario.lambda3))
    issues.push_back(std::move(issue));

  std::map<std::string, RingElement> mu;
  for (const auto& gen : scenario.generators) mu.emplace(gen.label, gen.mu3_lift);
  for (auto& issue : groupring::check_quadratic_diagonal(scenario.lambda3, mu))
    issues.push_back(std::move(issue));

  return issues;
}

}  // namespace sphereiso::manifold
