#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hgeom/checker.hpp"
#include "hgeom/cli.hpp"
#include "hgeom/constructions.hpp"
#include "hgeom/serialize.hpp"
#include "support.hpp"

using namespace hgeom;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hgeom-cli-" + std::to_string(std::rand()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("build: examples") {
    auto r = run({"build", "mn", "4"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "11 points, 11 long lines"));
    r = run({"build", "lift0", "--group", "3"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "10 points, 12 long lines"));
    r = run({"build", "lift0", "--group", "2,2"});
    CHECK(contains(r.out, "13 points, 19 long lines"));
    CHECK(run({"build", "mn", "1"}).code == kExitUsage);
    CHECK(run({"build", "lift0", "--group", "1,3"}).code == kExitUsage);
    CHECK(run({"build", "torus", "3"}).code == kExitUsage);
    CHECK(run({"build"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("geometry documents round-trip and are byte-deterministic") {
    TempDir tmp;
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"build", "mn", "5"}, {"build", "lift0", "2,3"}, {"build", "lift", "--group", "4"}}) {
      auto a = args, b = args;
      a.insert(a.end(), {"--out", tmp.file("a.json")});
      b.insert(b.end(), {"--out", tmp.file("b.json")});
      REQUIRE(run(a).code == kExitOk);
      REQUIRE(run(b).code == kExitOk);
      CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));
      const auto doc = geometry_document_from_json(read_json_file(tmp.file("a.json")));
      CHECK(validate(doc.geometry).empty());
      CHECK(doc.provenance.has_value());
      CHECK(canonical_dump(to_json(doc)) == slurp(tmp.file("a.json")));
    }
    const auto doc = geometry_document_from_json(read_json_file(tmp.file("a.json")));
    CHECK(testing::line_names(doc.geometry) == testing::line_names(lift(FiniteAbelianGroup::cyclic(4))));
  }

  TEST_CASE("geometry documents that fail validation are rejected") {
    TempDir tmp;
    std::ofstream(tmp.file("bad.json")) << R"({"schema":"1","kind":"geometry",
      "points":[{"id":0,"name":"a"},{"id":1,"name":"b"},{"id":2,"name":"c"},{"id":3,"name":"d"},{"id":4,"name":"e"}],
      "long_lines":[[0,1,2],[0,1,3]]})";
    CHECK_THROWS_AS(geometry_document_from_json(read_json_file(tmp.file("bad.json"))), DocumentError);
    CHECK(run({"linrep", tmp.file("bad.json"), "--field", "2", "--search"}).code == kExitUsage);
  }

  TEST_CASE("derive: examples") {
    TempDir tmp;
    auto r = run({"derive", "verdict-mn", "6", "--out", tmp.file("v6.json")});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "NOT-EMBEDDABLE"));
    CHECK(run({"check", tmp.file("v6.json")}).code == kExitOk);

    r = run({"derive", "extend", "5", "--geometry-out", tmp.file("e5.json"), "--out", tmp.file("t5.json")});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "EXTENDED"));
    const auto ext = geometry_document_from_json(read_json_file(tmp.file("e5.json"))).geometry;
    CHECK(ext.point_count() == 16);
    CHECK(are_isomorphic(ext, lift0(FiniteAbelianGroup::cyclic(5))).has_value());
    CHECK(run({"check", tmp.file("t5.json")}).code == kExitOk);

    r = run({"derive", "verdict-group", "3,3"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "EMBEDDABLE"));
    CHECK_FALSE(contains(r.out, "NOT-EMBEDDABLE"));

    r = run({"derive", "verdict-mn", "5"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "EMBEDDABLE"));
    CHECK_FALSE(contains(r.out, "NOT-EMBEDDABLE"));

    r = run({"derive", "verdict-group", "4", "--out", tmp.file("g4.json")});
    CHECK(contains(r.out, "NOT-EMBEDDABLE"));
    CHECK(run({"check", tmp.file("g4.json")}).code == kExitOk);

    r = run({"derive", "two-primes", "2", "3", "--show"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "identify B_(0,0) = x_3"));

    CHECK(run({"derive", "prime-power", "4", "2"}).code == kExitUsage);
    CHECK(run({"derive", "two-primes", "5", "3"}).code == kExitUsage);
    CHECK(run({"derive", "extend"}).code == kExitUsage);
    CHECK(run({"derive", "galois", "3"}).code == kExitUsage);
  }

  TEST_CASE("derive: budget exhaustion exits 3 via flag and environment") {
    CHECK(run({"derive", "prime-power", "3", "2", "--budget", "10"}).code == kExitBudget);
    ::setenv("HGEOM_BUDGET", "10", 1);
    CHECK(run({"derive", "prime-power", "3", "2"}).code == kExitBudget);
    CHECK(run({"derive", "prime-power", "3", "2", "--budget", "100000"}).code == kExitOk);
    ::setenv("HGEOM_BUDGET", "lots", 1);
    CHECK(run({"derive", "prime-power", "2", "2"}).code == kExitUsage);
    ::unsetenv("HGEOM_BUDGET");
    CHECK(run({"derive", "prime-power", "3", "2"}).code == kExitOk);
  }

  TEST_CASE("check: examples") {
    TempDir tmp;
    REQUIRE(run({"derive", "prime-power", "2", "2", "--out", tmp.file("z4.json")}).code == kExitOk);
    const auto r = run({"check", tmp.file("z4.json")});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "VALID"));

    // One step deleted: the replay fails.
    auto j = read_json_file(tmp.file("z4.json"));
    auto& steps = j["phases"][0]["trace"]["steps"];
    steps.erase(steps.begin() + 3);
    write_json_file(tmp.file("cut.json"), j);
    CHECK(run({"check", tmp.file("cut.json")}).code == kExitNegative);

    std::ofstream(tmp.file("empty.json")).flush();
    CHECK(run({"check", tmp.file("empty.json")}).code == kExitUsage);
    std::ofstream(tmp.file("junk.json")) << "{\"schema\": \"1\", \"kind\": \"trace\"";
    CHECK(run({"check", tmp.file("junk.json")}).code == kExitUsage);
    std::ofstream(tmp.file("geom.json")) << canonical_dump(to_json(GeometryDocument{m_matroid(2), std::nullopt}));
    CHECK(run({"check", tmp.file("geom.json")}).code == kExitUsage);
    CHECK(run({"check", tmp.file("missing.json")}).code == kExitUsage);
  }

  TEST_CASE("trace documents round-trip losslessly") {
    TempDir tmp;
    REQUIRE(run({"derive", "verdict-mn", "12", "--out", tmp.file("a.json")}).code == kExitOk);
    REQUIRE(run({"derive", "verdict-mn", "12", "--out", tmp.file("b.json")}).code == kExitOk);
    CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));
    const auto cert = certificate_from_json(read_json_file(tmp.file("a.json")));
    CHECK(canonical_dump(to_json(cert)) == slurp(tmp.file("a.json")));
    CHECK(check_certificate(cert).ok);
  }

  TEST_CASE("linrep: examples") {
    auto r = run({"linrep", "mn", "2", "--field", "2", "--search"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "FOUND"));
    CHECK(contains(r.out, "a_0"));
    r = run({"linrep", "mn", "2", "--field", "3", "--search"});
    CHECK(r.code == kExitNegative);
    CHECK(contains(r.out, "NONE-EXHAUSTIVE"));
    r = run({"linrep", "lift", "6", "--explicit", "--field", "5,2"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "VERIFIED"));
    r = run({"linrep", "lift0", "2,2", "--explicit", "--field", "2,2"});
    CHECK(r.code == kExitOk);
    CHECK(run({"linrep", "lift", "6", "--explicit", "--field", "5"}).code == kExitUsage);
    CHECK(run({"linrep", "mn", "2", "--field", "4", "--search"}).code == kExitUsage);
    CHECK(run({"linrep", "mn", "2", "--field", "2"}).code == kExitUsage);
    CHECK(run({"linrep", "lift", "6", "--field", "3,2", "--search", "--budget", "5"}).code == kExitBudget);
  }

  TEST_CASE("linrep: search over a geometry file and representation output") {
    TempDir tmp;
    REQUIRE(run({"build", "lift", "3", "--out", tmp.file("l3.json")}).code == kExitOk);
    const auto r = run({"linrep", tmp.file("l3.json"), "--field", "7", "--search", "--out", tmp.file("rep.json")});
    CHECK(r.code == kExitOk);
    const auto rep = read_json_file(tmp.file("rep.json"));
    CHECK(rep["kind"] == "representation");
    CHECK(rep["coordinates"].size() == 9);
  }

  TEST_CASE("charset: examples") {
    TempDir tmp;
    auto r = run({"charset", "6", "--prime-bound", "13", "--out", tmp.file("c6.json")});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "{0, 5, 7, 11, 13}"));
    CHECK(contains(r.out, "bounded evidence"));
    const auto j = read_json_file(tmp.file("c6.json"));
    CHECK(j["predicted"] == Json::array({0, 5, 7, 11, 13}));
    CHECK(j["consistent"] == true);

    r = run({"charset", "5"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "chi_A(M(5)) = chi_A(L0(Z_5 K3)) = {5}"));
    r = run({"charset", "4"});
    CHECK(contains(r.out, "chi_A(M(4)) = chi_A(L0(Z_4 K3)) = ∅"));
    CHECK(run({"charset", "1"}).code == kExitUsage);
  }
}
