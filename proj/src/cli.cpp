#include "sphereiso/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "sphereiso/examples.hpp"
#include "sphereiso/isotopy.hpp"

namespace sphereiso::cli {

namespace {

using groupring::RingElement;
using groups::GroupElement;
using groups::GroupModel;
using groups::ModelRef;
using homotopy::Track;
using isotopy::Tri;
using manifold::ManifoldScenario;
using nlohmann::json;
using obstruction::AClass;

struct Options {
  std::string scenario_ref;
  bool pretty = false;
  long long seed = 0;
};

// ---------------------------------------------------------------------------
// input plumbing

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t stop = e.byte > 0 ? std::min(text.size(), static_cast<size_t>(e.byte) - 1)
                             : size_t{0};
    int line = 1, col = 1;
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError(std::string("JSON syntax error: ") + e.what(),
                      origin + ":" + std::to_string(line) + ":" + std::to_string(col));
  }
}

json read_json_file(const std::string& path) {
  return parse_json_text(read_text_file(path), path);
}

std::optional<ManifoldScenario> load_scenario_opt(const Options& opts) {
  if (opts.scenario_ref.empty()) return std::nullopt;
  const std::string prefix = "example:";
  if (opts.scenario_ref.rfind(prefix, 0) == 0)
    return examples::load(opts.scenario_ref.substr(prefix.size()));
  return manifold::load_scenario(read_json_file(opts.scenario_ref));
}

ManifoldScenario require_scenario(const Options& opts, const char* command) {
  auto scenario = load_scenario_opt(opts);
  if (!scenario)
    throw SchemaError(std::string(command) +
                      " needs --scenario <path | example:name>");
  return std::move(*scenario);
}

void collect_symbols_from_word(const std::string& word, std::set<std::string>& out) {
  std::istringstream stream(word);
  std::string token;
  while (stream >> token) {
    auto caret = token.find('^');
    std::string symbol = caret == std::string::npos ? token : token.substr(0, caret);
    if (symbol.empty() || symbol == "1") continue;
    out.insert(symbol);
  }
}

// fallback model when a bare wire value arrives without a scenario: the free
// group on exactly the symbols the value mentions, in alphabetical order
ModelRef free_model_on(const std::set<std::string>& symbols) {
  json spec = {{"kind", "free"}, {"rank", symbols.size()}};
  if (!symbols.empty())
    spec["symbols"] = std::vector<std::string>(symbols.begin(), symbols.end());
  return GroupModel::from_json(spec, "implicit free group");
}

ModelRef model_for_words(const Options& opts, const std::vector<std::string>& words) {
  if (auto scenario = load_scenario_opt(opts)) return scenario->model;
  std::set<std::string> symbols;
  for (const auto& w : words) collect_symbols_from_word(w, symbols);
  return free_model_on(symbols);
}

std::vector<std::string> ring_words(const json& wire) {
  std::vector<std::string> words;
  if (wire.is_array())
    for (const auto& term : wire)
      if (term.is_array() && term.size() == 2 && term[1].is_string())
        words.push_back(term[1].get<std::string>());
  return words;
}

std::vector<std::string> track_words(const json& wire) {
  std::vector<std::string> words;
  if (wire.is_object()) {
    if (wire.contains("core") && wire.at("core").is_string())
      words.push_back(wire.at("core").get<std::string>());
    if (wire.contains("points") && wire.at("points").is_array())
      for (const auto& p : wire.at("points"))
        if (p.is_array() && p.size() == 3 && p[1].is_string())
          words.push_back(p[1].get<std::string>());
  }
  return words;
}

// A payload file is either the bare wire value (group taken from --scenario,
// or an implicit free group) or {"group": ..., "<field>": <wire value>}.
json unwrap_payload(const json& doc, const char* field, ModelRef& model,
                    const Options& opts,
                    std::vector<std::string> (*words)(const json&)) {
  if (doc.is_object() && doc.contains("group")) {
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (it.key() != "group" && it.key() != field)
        throw SchemaError("unknown field \"" + it.key() + "\"", "input");
    if (!doc.contains(field))
      throw SchemaError(std::string("wrapped input needs \"") + field + "\"", "input");
    model = GroupModel::from_json(doc.at("group"), "input.group");
    if (auto scenario = load_scenario_opt(opts))
      GroupModel::require_same(model, scenario->model, "input group vs --scenario");
    return doc.at(field);
  }
  model = model_for_words(opts, words(doc));
  return doc;
}

RingElement load_ring_input(const std::string& path, const Options& opts) {
  ModelRef model;
  json wire = unwrap_payload(read_json_file(path), "element", model, opts, ring_words);
  return RingElement::from_json(wire, model, "element");
}

Track load_track_input(const std::string& path, const Options& opts) {
  ModelRef model;
  json wire = unwrap_payload(read_json_file(path), "track", model, opts, track_words);
  return Track::from_json(wire, model, "track");
}

AClass load_aclass_input(const std::string& path, const ManifoldScenario& scenario) {
  json doc = read_json_file(path);
  json wire = doc;
  if (doc.is_object() && doc.contains("class")) wire = doc.at("class");
  return AClass::from_json(wire, scenario.model, "class");
}

// ---------------------------------------------------------------------------
// output plumbing

constexpr int kOk = 0;
constexpr int kObstruction = 1;
constexpr int kInvalid = 2;

int emit(json doc, const char* status, int code, const Options& opts,
         std::ostream& out) {
  doc["status"] = status;
  out << (opts.pretty ? doc.dump(2) : doc.dump()) << "\n";
  return code;
}

int emit_decision(json doc, Tri verdict, const Options& opts, std::ostream& out) {
  doc["decision"] = isotopy::tri_name(verdict);
  if (verdict == Tri::Yes) return emit(std::move(doc), "ok", kOk, opts, out);
  return emit(std::move(doc), "obstruction", kObstruction, opts, out);
}

// ---------------------------------------------------------------------------
// commands

int cmd_reduce(const std::string& file, const Options& opts, std::ostream& out) {
  AClass value = obstruction::reduce(load_ring_input(file, opts));
  json doc{{"command", "reduce"}, {"value", value.to_json()}, {"pretty", value.pretty()}};
  return emit(std::move(doc), "ok", kOk, opts, out);
}

int cmd_mu3(const std::string& file, const Options& opts, std::ostream& out) {
  AClass value = homotopy::mu3(load_track_input(file, opts));
  json doc{{"command", "mu3"}, {"value", value.to_json()}, {"pretty", value.pretty()}};
  return emit(std::move(doc), "ok", kOk, opts, out);
}

int cmd_realize(const std::string& file, const Options& opts, std::ostream& out) {
  Track track = homotopy::realize(load_ring_input(file, opts));
  json doc{{"command", "realize"},
           {"value", track.to_json()},
           {"pretty", track.pretty()}};
  return emit(std::move(doc), "ok", kOk, opts, out);
}

int cmd_whitney(const std::string& file, const Options& opts, std::ostream& out) {
  Track track = load_track_input(file, opts);
  try {
    homotopy::CancellationPlan plan = homotopy::whitney_plan(track);
    json doc{{"command", "whitney"}, {"value", plan.to_json()}};
    return emit(std::move(doc), "ok", kOk, opts, out);
  } catch (const homotopy::NonVanishingObstruction& e) {
    json doc{{"command", "whitney"},
             {"obstruction", e.obstruction.to_json()},
             {"pretty", e.obstruction.pretty()}};
    return emit(std::move(doc), "obstruction", kObstruction, opts, out);
  }
}

int cmd_fq(const std::vector<std::string>& files, bool based, bool free_mode,
           const Options& opts, std::ostream& out) {
  if (based == free_mode)
    throw SchemaError("fq needs exactly one of --based, --free");
  ManifoldScenario scenario = require_scenario(opts, "fq");
  json doc{{"command", "fq"}, {"mode", based ? "based" : "free"}};

  if (files.size() == 2) {
    Track h1 = load_track_input(files[0], opts);
    Track h2 = load_track_input(files[1], opts);
    Tri verdict = based ? isotopy::is_based_isotopic(h1, h2, scenario)
                        : isotopy::is_free_isotopic(h1, h2, scenario);
    return emit_decision(std::move(doc), verdict, opts, out);
  }

  Track h = load_track_input(files[0], opts);
  if (based) {
    isotopy::CosetClass value = isotopy::fq_based(h, scenario);
    doc["value"] = value.to_json();
    doc["pretty"] = value.pretty();
  } else {
    isotopy::OrbitClass value = isotopy::orbit_canonical(
        homotopy::mu3(h), isotopy::stab_table_for(scenario), scenario);
    doc["value"] = value.to_json();
    doc["pretty"] = value.canonical.pretty();
  }
  return emit(std::move(doc), "ok", kOk, opts, out);
}

int cmd_validate(const std::optional<std::string>& track_file, const Options& opts,
                 std::ostream& out) {
  ManifoldScenario scenario = require_scenario(opts, "validate");
  if (track_file) {
    Track j = load_track_input(*track_file, opts);
    json doc{{"command", "validate"}, {"subject", "based-self-homotopy"}};
    return emit_decision(std::move(doc), isotopy::validate_based_selfhomotopy(j, scenario),
                         opts, out);
  }
  auto issues = manifold::validate_scenario(scenario);
  json list = json::array();
  for (const auto& issue : issues)
    list.push_back(json{{"where", issue.where}, {"message", issue.message}});
  json doc{{"command", "validate"}, {"subject", "scenario"}, {"issues", list}};
  if (issues.empty()) return emit(std::move(doc), "ok", kOk, opts, out);
  return emit(std::move(doc), "obstruction", kObstruction, opts, out);
}

int cmd_orbit(const std::string& file, const Options& opts, std::ostream& out) {
  ManifoldScenario scenario = require_scenario(opts, "orbit");
  AClass a = load_aclass_input(file, scenario);
  isotopy::OrbitClass value =
      isotopy::orbit_canonical(a, isotopy::stab_table_for(scenario), scenario);
  json doc{{"command", "orbit"},
           {"value", value.to_json()},
           {"pretty", value.canonical.pretty()}};
  return emit(std::move(doc), "ok", kOk, opts, out);
}

int cmd_examples(const Options& opts, std::ostream& out) {
  json list = json::array();
  for (const auto& info : examples::list())
    list.push_back(json{{"name", info.name}, {"description", info.description}});
  json doc{{"command", "examples"}, {"examples", list}};
  return emit(std::move(doc), "ok", kOk, opts, out);
}

// ---------------------------------------------------------------------------
// randomized self test

struct SelfTest {
  std::mt19937_64 rng;
  long long checks = 0;

  explicit SelfTest(long long seed) : rng(static_cast<uint64_t>(seed)) {}

  Int coefficient(int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    return Int(dist(rng));
  }

  size_t pick(size_t n) {
    std::uniform_int_distribution<size_t> dist(0, n - 1);
    return dist(rng);
  }

  RingElement random_element(const ModelRef& model,
                             const std::vector<GroupElement>& pool) {
    std::uniform_int_distribution<int> count(0, 6);
    RingElement x = RingElement::zero(model);
    int terms = count(rng);
    for (int i = 0; i < terms; ++i)
      x = x + RingElement::monomial(pool[pick(pool.size())], coefficient(9));
    return x;
  }

  void require(bool ok, const std::string& what) {
    if (!ok) throw Error("self test failed: " + what);
    ++checks;
  }

  void run_algebra(const ModelRef& model) {
    std::vector<GroupElement> pool =
        model->is_finite() ? model->enumerate() : model->ball(2);
    for (int i = 0; i < 40; ++i) {
      RingElement x = random_element(model, pool);
      require(obstruction::reduce(x + x.bar()).is_zero(), "x + bar(x) reduces to zero");
      require(homotopy::mu3(homotopy::realize(x)) == obstruction::reduce(x),
              "mu3 of a realization returns the class");
      require(RingElement::from_json(x.to_json(), model, "roundtrip") == x,
              "ring wire format round-trips");
      AClass a = obstruction::reduce(x);
      require(AClass::from_json(a.to_json(), model, "roundtrip") == a,
              "class wire format round-trips");
      Track h = homotopy::realize(x);
      Track cancel = homotopy::concat(h, homotopy::reverse(h));
      auto plan = homotopy::whitney_plan(cancel);
      require(homotopy::verify_plan(cancel, plan), "self-cancelling plan verifies");
    }
  }

  void run_lattices() {
    std::uniform_int_distribution<int> entry(-4, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int iter = 0; iter < 60; ++iter) {
      const int n = 3;
      std::vector<int> moduli(n);
      for (auto& m : moduli) m = coin(rng) ? 2 : 0;
      std::vector<std::vector<Int>> gens(n, std::vector<Int>(n));
      for (auto& col : gens)
        for (auto& v : col) v = Int(entry(rng));
      auto basis = intlinalg::LatticeBasis::build(n, moduli, gens);
      std::vector<Int> combo(n, Int(0));
      for (const auto& col : gens) {
        Int c = coefficient(3);
        for (int r = 0; r < n; ++r) combo[r] += c * col[r];
      }
      require(basis.membership(combo).has_value(), "generated combination is a member");
      std::vector<Int> x(n);
      for (auto& v : x) v = Int(entry(rng));
      std::vector<Int> shifted = x;
      for (int r = 0; r < n; ++r) shifted[r] += gens[0][r];
      require(basis.canonical_residue(x) == basis.canonical_residue(shifted),
              "canonical residue is constant on cosets");
    }
  }
};

int cmd_selftest(const Options& opts, std::ostream& out) {
  const char* model_specs[] = {
      R"({"kind": "free", "rank": 2, "symbols": ["g", "h"]})",
      R"({"kind": "abelian", "rank": 1})",
      R"({"kind": "finite_abelian", "moduli": [4], "symbols": ["t"]})",
      R"({"kind": "permutation", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]], "symbols": ["a", "b"]})",
  };
  SelfTest test(opts.seed);
  json doc{{"command", "selftest"}, {"seed", opts.seed}};
  try {
    for (const char* spec : model_specs)
      test.run_algebra(GroupModel::from_json(json::parse(spec), "selftest"));
    test.run_lattices();
  } catch (const Error& e) {
    doc["checks"] = test.checks;
    doc["failure"] = e.what();
    return emit(std::move(doc), "obstruction", kObstruction, opts, out);
  }
  doc["checks"] = test.checks;
  return emit(std::move(doc), "ok", kOk, opts, out);
}

}  // namespace

// ---------------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"based and free isotopy decisions for 2-spheres in 5-manifolds"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--scenario", opts.scenario_ref,
                 "scenario JSON file, or example:<name> for a bundled one");
  app.add_flag("--pretty", opts.pretty, "indent output and keep notation fields");
  app.add_option("--seed", opts.seed, "seed for the randomized self test");

  std::string ring_file, track_file, class_file;
  std::vector<std::string> fq_files;
  std::optional<std::string> validate_track;
  std::string validate_track_raw;
  bool fq_based = false, fq_free = false;

  auto* reduce = app.add_subcommand("reduce", "reduce a group ring element");
  reduce->add_option("file", ring_file, "ring element JSON")->required();

  auto* mu3 = app.add_subcommand("mu3", "self-intersection invariant of a track");
  mu3->add_option("file", track_file, "track JSON")->required();

  auto* realize = app.add_subcommand("realize", "build a track realizing a ring element");
  realize->add_option("file", ring_file, "ring element JSON")->required();

  auto* whitney = app.add_subcommand("whitney", "plan a full double point cancellation");
  whitney->add_option("file", track_file, "track JSON")->required();

  auto* fq = app.add_subcommand(
      "fq", "isotopy invariant of one track, or decision between two");
  fq->add_option("files", fq_files, "one or two track JSON files")
      ->expected(1, 2)
      ->required();
  fq->add_flag("--based", fq_based, "based isotopy");
  fq->add_flag("--free", fq_free, "free isotopy");

  auto* validate = app.add_subcommand(
      "validate", "check scenario consistency, or a claimed based self-homotopy");
  validate->add_option("track", validate_track_raw, "optional track JSON");

  auto* orbit = app.add_subcommand("orbit", "canonical form under the affine action");
  orbit->add_option("file", class_file, "class JSON")->required();

  app.add_subcommand("examples", "list the bundled scenarios");
  app.add_subcommand("selftest", "run the seeded randomized consistency suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, out, err);
    return kInvalid;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(ring_file, opts, out);
    if (mu3->parsed()) return cmd_mu3(track_file, opts, out);
    if (realize->parsed()) return cmd_realize(ring_file, opts, out);
    if (whitney->parsed()) return cmd_whitney(track_file, opts, out);
    if (fq->parsed()) return cmd_fq(fq_files, fq_based, fq_free, opts, out);
    if (validate->parsed()) {
      if (!validate_track_raw.empty()) validate_track = validate_track_raw;
      return cmd_validate(validate_track, opts, out);
    }
    if (orbit->parsed()) return cmd_orbit(class_file, opts, out);
    if (app.get_subcommand("examples")->parsed()) return cmd_examples(opts, out);
    if (app.get_subcommand("selftest")->parsed()) return cmd_selftest(opts, out);
    throw SchemaError("no command given");
  } catch (const Error& e) {
    json doc{{"status", "invalid-input"}, {"error", e.what()}};
    out << (opts.pretty ? doc.dump(2) : doc.dump()) << "\n";
    return kInvalid;
  }
}

}  // namespace sphereiso::cli
