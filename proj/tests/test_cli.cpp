#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sphereiso/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;

  json doc() const { return json::parse(out); }
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = sphereiso::cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// temp-file fixture; files are cleaned up when the process exits normally
class TempFiles {
 public:
  TempFiles() {
    dir_ = std::filesystem::temp_directory_path() /
           ("sphereiso-cli-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempFiles() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }

  std::string write(const std::string& name, const std::string& content) {
    auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace

TEST_CASE("reduce folds a bare wire element") {
  TempFiles files;
  auto cancel = files.write("cancel.json", R"([[1, "g"], [1, "g^-1"]])");
  CliResult r = run({"reduce", cancel});
  CHECK(r.code == 0);
  json doc = r.doc();
  CHECK(doc.at("status") == "ok");
  CHECK(doc.at("command") == "reduce");
  CHECK(doc.at("value").at("int_part").empty());
  CHECK(doc.at("value").at("mod2_part").empty());
  CHECK(doc.at("pretty") == "0");

  auto fold = files.write("fold.json", R"([[3, "g"], [-2, "g^-1"]])");
  r = run({"reduce", fold});
  CHECK(r.code == 0);
  CHECK(r.doc().at("value").at("int_part") == json::parse(R"([[5, "g"]])"));
}

TEST_CASE("a wrapped payload carries its own group") {
  TempFiles files;
  auto wrapped = files.write("wrapped.json",
                             R"({"group": {"kind": "finite_abelian", "moduli": [2], "symbols": ["t"]},
                                 "element": [[1, "t"], [1, "t"]]})");
  CliResult r = run({"reduce", wrapped});
  CHECK(r.code == 0);
  CHECK(r.doc().at("value").at("mod2_part").empty());  // 2t dies mod 2

  auto stray = files.write("stray.json",
                           R"({"group": {"kind": "free", "rank": 1, "symbols": ["g"]},
                               "element": [], "noise": 1})");
  CHECK(run({"reduce", stray}).code == 2);

  // wrapped group must agree with --scenario when both are given
  auto clash = files.write("clash.json",
                           R"({"group": {"kind": "free", "rank": 1, "symbols": ["g"]},
                               "element": []})");
  CHECK(run({"--scenario", "example:cyclic-two", "reduce", clash}).code == 2);
}

TEST_CASE("mu3 and realize invert each other through files") {
  TempFiles files;
  auto element = files.write("element.json", R"([[2, "g"], [-1, "h"]])");
  CliResult realized = run({"realize", element});
  REQUIRE(realized.code == 0);

  auto track = files.write("track.json", realized.doc().at("value").dump());
  CliResult invariant = run({"mu3", track});
  REQUIRE(invariant.code == 0);
  CHECK(invariant.doc().at("value") ==
        json::parse(R"({"int_part": [[2, "g"], [-1, "h"]], "mod2_part": []})"));
}

TEST_CASE("whitney reports a plan or the obstruction") {
  TempFiles files;
  auto good = files.write("good.json",
                          R"({"core": "1", "points": [[1, "g", "1/4"], [-1, "g", "3/4"]]})");
  CliResult r = run({"whitney", good});
  CHECK(r.code == 0);
  CHECK(r.doc().at("value").at("pairs").size() == 1);
  CHECK(r.doc().at("value").at("cusps").empty());

  auto bad = files.write("bad.json", R"({"core": "1", "points": [[1, "g", "1/2"]]})");
  r = run({"whitney", bad});
  CHECK(r.code == 1);
  json doc = r.doc();
  CHECK(doc.at("status") == "obstruction");
  CHECK(doc.at("obstruction").at("int_part") == json::parse(R"([[1, "g"]])"));
}

TEST_CASE("fq decides based and free isotopy against a scenario") {
  TempFiles files;
  auto zero = files.write("zero.json", R"({"core": "1", "points": []})");
  auto moved = files.write(
      "moved.json",
      R"({"core": "1", "points": [[1, "g", "1/3"], [-1, "h g h^-1", "2/3"]]})");
  auto gee = files.write("gee.json", R"({"core": "1", "points": [[1, "g", "1/2"]]})");

  CliResult r = run({"--scenario", "example:fingermove", "fq", "--free", zero, moved});
  CHECK(r.code == 0);
  CHECK(r.doc().at("decision") == "YES");
  CHECK(r.doc().at("mode") == "free");

  r = run({"--scenario", "example:fingermove", "fq", "--based", zero, moved});
  CHECK(r.code == 1);
  CHECK(r.doc().at("decision") == "NO");

  r = run({"--scenario", "example:fingermove", "fq", "--free", zero, gee});
  CHECK(r.code == 1);
  CHECK(r.doc().at("decision") == "NO");

  // one track: the invariant itself
  r = run({"--scenario", "example:fingermove", "fq", "--based", gee});
  CHECK(r.code == 0);
  CHECK(r.doc().at("value").at("representative").at("int_part") ==
        json::parse(R"([[1, "g"]])"));

  r = run({"--scenario", "example:fingermove", "fq", "--free", moved});
  CHECK(r.code == 0);
  CHECK(r.doc().at("value").at("canonical").at("int_part").empty());
  CHECK(r.doc().at("value").at("complete") == true);

  // flags are mandatory and exclusive
  CHECK(run({"--scenario", "example:fingermove", "fq", zero}).code == 2);
  CHECK(run({"--scenario", "example:fingermove", "fq", "--based", "--free", zero}).code == 2);
  // and a scenario is required at all
  CHECK(run({"fq", "--based", zero}).code == 2);
}

TEST_CASE("an incomplete search prints UNKNOWN with the obstruction code") {
  TempFiles files;
  auto zero = files.write("zero.json", R"({"core": "1", "points": []})");
  auto gee = files.write("gee.json", R"({"core": "1", "points": [[1, "g", "1/2"]]})");
  CliResult r = run({"--scenario", "example:product-sphere", "fq", "--free", zero, gee});
  CHECK(r.code == 1);
  CHECK(r.doc().at("decision") == "UNKNOWN");
}

TEST_CASE("validate reports scenario issues and self-homotopy verdicts") {
  TempFiles files;
  CliResult r = run({"--scenario", "example:fingermove", "validate"});
  CHECK(r.code == 0);
  CHECK(r.doc().at("issues").empty());
  CHECK(r.doc().at("subject") == "scenario");

  auto broken = files.write("broken.json", R"({
    "group": {"kind": "free", "rank": 2, "symbols": ["g", "h"]},
    "pi3": {"generators": [], "complete": true},
    "closure": {"mode": "ball", "radius": 2},
    "stabilizer": {"mode": "table", "complete": false, "entries": [
      {"s": "1", "U_s": {"int_part": [[1, "g"]], "mod2_part": []}}]}
  })");
  r = run({"--scenario", broken, "validate"});
  CHECK(r.code == 1);
  CHECK(!r.doc().at("issues").empty());

  auto loop = files.write("loop.json",
                          R"({"core": "1", "points": [[1, "g", "1/4"], [-1, "g", "1/2"]]})");
  r = run({"--scenario", "example:fingermove", "validate", loop});
  CHECK(r.code == 0);
  CHECK(r.doc().at("subject") == "based-self-homotopy");
  CHECK(r.doc().at("decision") == "YES");

  auto knot = files.write("knot.json", R"({"core": "1", "points": [[1, "g", "1/2"]]})");
  r = run({"--scenario", "example:fingermove", "validate", knot});
  CHECK(r.code == 1);
  CHECK(r.doc().at("decision") == "NO");
}

TEST_CASE("orbit canonicalizes conjugate classes to identical bytes") {
  TempFiles files;
  auto b_class = files.write("b.json", R"({"int_part": [[1, "b"]], "mod2_part": []})");
  auto b2_class = files.write("b2.json", R"({"int_part": [[1, "b^2"]], "mod2_part": []})");
  CliResult rb = run({"--scenario", "example:sym-three", "orbit", b_class});
  CliResult rb2 = run({"--scenario", "example:sym-three", "orbit", b2_class});
  CHECK(rb.code == 0);
  CHECK(rb2.code == 0);
  CHECK(rb.out == rb2.out);

  // the wrapped form is accepted too
  auto wrapped = files.write("wrapped_class.json",
                             R"({"class": {"int_part": [[1, "b"]], "mod2_part": []}})");
  CliResult rw = run({"--scenario", "example:sym-three", "orbit", wrapped});
  CHECK(rw.out == rb.out);
}

TEST_CASE("examples lists the bundled scenarios") {
  CliResult r = run({"examples"});
  CHECK(r.code == 0);
  json list = r.doc().at("examples");
  REQUIRE(list.size() == 6);
  bool has_fingermove = false;
  for (const auto& item : list) has_fingermove |= item.at("name") == "fingermove";
  CHECK(has_fingermove);
}

TEST_CASE("selftest runs clean and deterministically") {
  CliResult a = run({"--seed", "7", "selftest"});
  CHECK(a.code == 0);
  CHECK(a.doc().at("checks").get<long long>() > 0);
  CliResult b = run({"--seed", "7", "selftest"});
  CHECK(a.out == b.out);
}

TEST_CASE("outputs are byte-identical across repeated runs") {
  TempFiles files;
  auto element = files.write("element.json", R"([[4, "w"], [-4, "z"], [1, "w z"]])");
  CliResult first = run({"reduce", element});
  CliResult second = run({"reduce", element});
  CHECK(first.code == 0);
  CHECK(first.out == second.out);

  CliResult pretty = run({"--pretty", "reduce", element});
  CHECK(pretty.code == 0);
  CHECK(pretty.out != first.out);            // indentation differs
  CHECK(json::parse(pretty.out) == first.doc());  // content does not
}

TEST_CASE("diagnostics carry input positions and exit code 2") {
  TempFiles files;
  auto mangled = files.write("mangled.json", "{\n  \"core\": \"1\",\n  oops\n}\n");
  CliResult r = run({"mu3", mangled});
  CHECK(r.code == 2);
  json doc = r.doc();
  CHECK(doc.at("status") == "invalid-input");
  std::string error = doc.at("error").get<std::string>();
  CHECK(error.find(":3:") != std::string::npos);  // line of the bad token
  CHECK(error.find("JSON syntax error") != std::string::npos);

  auto missing = files.write("missing.json", R"({"points": []})");
  r = run({"mu3", missing});
  CHECK(r.code == 2);
  CHECK(r.doc().at("error").get<std::string>().find("core") != std::string::npos);

  CHECK(run({"mu3", "/no/such/file.json"}).code == 2);
  CHECK(run({"--scenario", "example:nowhere", "validate"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("reduce") != std::string::npos);
}
