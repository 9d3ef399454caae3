#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oligocat/cli.hpp"

using namespace oligo;
namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  RunResult r;
  r.code = run_cli(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

njson json_of(const RunResult& r) { return njson::parse(r.out); }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// A cache directory that starts absent; the tool creates it on demand.
fs::path fresh_cache(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("oligocli-" + tag);
  fs::remove_all(p);
  setenv("OLIGO_CACHE_DIR", p.c_str(), 1);
  return p;
}

long long lines_in(const fs::path& file) {
  std::ifstream in(file);
  long long n = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

}  // namespace

TEST_CASE("request keys: canonical form and stability") {
  const Request a{"gset.orbits", njson{{"class", "linord"}, {"n", 2}, {"m", 2}}};
  const Request b{"gset.orbits", njson{{"class", "linord"}, {"n", 2}, {"m", 2}}};
  CHECK(a.canonical() == b.canonical());
  CHECK(a.key() == b.key());
  CHECK(a.key().size() == 16);

  const Request c{"gset.orbits", njson{{"class", "linord"}, {"n", 2}, {"m", 3}}};
  const Request d{"gset.product", a.params};
  CHECK(a.key() != c.key());
  CHECK(a.key() != d.key());
}

TEST_CASE("documented examples") {
  const RunResult orbits = run({"orbits", "--class", "linord", "2", "2"});
  CHECK(orbits.code == 0);
  CHECK(contains(orbits.out, "orbits: 13"));

  const RunResult solve =
      run({"measure", "solve", "--class", "cycord", "--depth", "3"});
  CHECK(solve.code == 0);
  CHECK(contains(solve.out, "solutions: 1"));

  const RunResult count = run({"finctr", "count", "S3"});
  CHECK(count.code == 0);
  CHECK(contains(count.out, "order: 6"));
  CHECK(contains(count.out, "simples: 8"));
}

TEST_CASE("json and plain output are deterministic across runs") {
  const std::vector<std::string> cmd = {"orbits", "--class", "linord",
                                        "3",      "2",       "--json"};
  const RunResult a = run(cmd), b = run(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const njson j = json_of(a);
  CHECK(j["orbits"] == "25");

  const RunResult p1 = run({"gset", "product", "--class", "finset", "2", "2"});
  const RunResult p2 = run({"gset", "product", "--class", "finset", "2", "2"});
  CHECK(p1.code == 0);
  CHECK(p1.out == p2.out);
}

TEST_CASE("cache transparency: on/off and hit/miss never change output") {
  const fs::path dir = fresh_cache("transparency");
  const std::vector<std::string> cmd = {"orbits", "--class", "linord", "2",
                                        "2",      "--json",  "--cache"};

  std::vector<std::string> off = cmd;
  off.push_back("off");
  std::vector<std::string> on = cmd;
  on.push_back("on");

  const RunResult r_off = run(off);
  CHECK(r_off.code == 0);
  CHECK_FALSE(fs::exists(dir));  // cache defaults to off and writes nothing

  const RunResult r_miss = run(on);
  CHECK(r_miss.code == 0);
  CHECK(fs::exists(dir / "gset.jsonl"));
  CHECK(lines_in(dir / "gset.jsonl") == 1);

  const RunResult r_hit = run(on);
  CHECK(r_hit.code == 0);
  CHECK(lines_in(dir / "gset.jsonl") == 1);  // hits do not append

  CHECK(r_off.out == r_miss.out);
  CHECK(r_miss.out == r_hit.out);
  CHECK(json_of(r_hit)["orbits"] == "13");
  unsetenv("OLIGO_CACHE_DIR");
}

TEST_CASE("semantically identical spellings share one cache record") {
  const fs::path dir = fresh_cache("alias");
  const RunResult a =
      run({"orbits", "--class", "linord", "2", "2", "--cache", "on"});
  const RunResult b =
      run({"gset", "orbits", "--class", "linord", "2", "2", "--cache", "on"});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines_in(dir / "gset.jsonl") == 1);  // the alias was a cache hit
  unsetenv("OLIGO_CACHE_DIR");
}

TEST_CASE("append-only cache: the last matching record wins; failures exit 1") {
  const fs::path dir = fresh_cache("poison");
  const std::vector<std::string> cmd = {"gset",    "level", "--class", "linord",
                                        "--bound", "2",     "--cache", "on"};
  const RunResult first = run(cmd);
  CHECK(first.code == 0);
  CHECK(contains(first.out, "pass: true"));

  // Append a newer record for the same request whose result reports failure.
  const fs::path file = dir / "gset.jsonl";
  std::string line, last;
  {
    std::ifstream in(file);
    while (std::getline(in, line))
      if (!line.empty()) last = line;
  }
  njson rec = njson::parse(last);
  rec["result"]["pass"] = "false";
  {
    std::ofstream out(file, std::ios::app);
    out << rec.dump() << "\n";
  }

  const RunResult poisoned = run(cmd);
  CHECK(poisoned.code == 1);  // verification-failure results map to exit 1
  CHECK(contains(poisoned.out, "pass: false"));

  // Stale-version records are ignored even when newer.
  rec["result"]["pass"] = "true";
  rec["version"] = "oligocat 0.0.0";
  rec["result"]["detail"] = "stale";
  {
    std::ofstream out(file, std::ios::app);
    out << rec.dump() << "\n";
  }
  const RunResult gated = run(cmd);
  CHECK(gated.code == 1);  // still the poisoned current-version record
  CHECK(contains(gated.out, "pass: false"));
  unsetenv("OLIGO_CACHE_DIR");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"orbits", "--class", "nosuch", "2", "2"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"orbits", "--class", "linord", "2"}).code == 2);  // missing m
  CHECK(run({"measure"}).code == 2);  // operation required
  CHECK(run({"glfq", "classify", "--q", "2", "1,0;x,1"}).code == 2);
  CHECK(run({"finctr", "count", "Q8"}).code == 2);  // unknown group name
  CHECK(run({"conj", "cfunctor", "--class", "finset", "--types", "one"}).code ==
        2);
  CHECK(run({"cantor", "witness", "--swap", "01"}).code == 2);  // no colon
  CHECK(run({"finctr", "opi", "S3", "--module", "weird"}).code == 2);

  const RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "oligocat"));
}

TEST_CASE("resource limits exit 3") {
  CHECK(run({"cantor", "ample", "7", "7"}).code == 3);
  CHECK(run({"finctr", "count", "C201"}).code == 3);

  setenv("OLIGO_MAX_SIZE", "4", 1);
  CHECK(run({"fraisse", "enumerate", "--class", "linord", "6"}).code == 3);
  unsetenv("OLIGO_MAX_SIZE");
  CHECK(run({"fraisse", "enumerate", "--class", "linord", "6"}).code == 0);
}

TEST_CASE("report: orbit-count table") {
  const RunResult r = run({"report", "delannoy-table", "--bound", "3", "--json"});
  CHECK(r.code == 0);
  const njson j = json_of(r);
  CHECK(j["kind"] == "delannoy-table");
  CHECK(j["table"].size() == 4);
  CHECK(j["table"][0][0] == "1");
  CHECK(j["table"][1][1] == "3");
  CHECK(j["table"][2][2] == "13");
  CHECK(j["table"][3][3] == "63");
  CHECK(j["table"][3][0] == "1");  // one-sided rows are constant
}

TEST_CASE("report: measure summary") {
  const RunResult r = run({"report", "measure-summary", "linord", "--json"});
  CHECK(r.code == 0);
  const njson j = json_of(r);
  CHECK(j["measures"] == "4");
  CHECK(j["rows"].size() == 4);
  int regular = 0;
  for (const auto& row : j["rows"])
    if (row["regular"] == "true") ++regular;
  CHECK(regular == 1);
}

TEST_CASE("report: smallness audit") {
  const RunResult r =
      run({"report", "smallness-audit", "finset", "--rank", "2", "--json"});
  CHECK(r.code == 0);
  const njson j = json_of(r);
  CHECK(j["rows"].size() >= 1);
  bool saw_transposition = false;
  for (const auto& row : j["rows"]) {
    if (row["rank"] == "2") {
      saw_transposition = true;
      CHECK(std::stoi(row["gap"].get<std::string>()) <= 2);
      CHECK(row["bounded"] == "true");
      CHECK(row["isolated"] == "true");
    }
  }
  CHECK(saw_transposition);
}

TEST_CASE("operation smoke checks with pinned values") {
  const njson dim = json_of(
      run({"permcat", "dim", "--class", "finset", "--depth", "3", "2", "--json"}));
  CHECK(dim["equals_measure"] == "true");

  const njson rb = json_of(run({"conj", "rankbound", "--class", "finset",
                                "--type", "2", "--slack", "1", "--json"}));
  CHECK(rb["violation"] == "false");
  CHECK(rb["rank_within_bound"] == "true");

  const njson wit = json_of(
      run({"cantor", "witness", "--swap", "0:1", "--n", "2", "--json"}));
  CHECK(wit["level"] == "4");

  const njson g0 = json_of(run({"glfq", "growth", "--q", "2", "--slack", "0",
                                "1,0;1,1", "--json"}));
  CHECK(g0["certificate"] == "false");
  CHECK(g0["span_dim"] == "2");
  const std::string transvection6 =
      "1,0,0,0,0,0;1,1,0,0,0,0;0,0,1,0,0,0;"
      "0,0,0,1,0,0;0,0,0,0,1,0;0,0,0,0,0,1";
  const njson g1 = json_of(run({"glfq", "growth", "--q", "2", "--slack", "1",
                                transvection6, "--json"}));
  CHECK(g1["certificate"] == "true");
  CHECK(g1["alpha"] == "1");
  CHECK(g1["rank"] == "1");

  const njson br =
      json_of(run({"finctr", "braidings", "S3", "--set", "point", "--json"}));
  CHECK(br["count"] == "1");
  CHECK(br["crossed"] == "1");

  const njson sup = json_of(
      run({"finctr", "support", "S3", "--module", "trivial", "--json"}));
  CHECK(sup["trivial"] == "true");
  const njson sup2 = json_of(
      run({"finctr", "support", "S3", "--module", "adjoint", "--json"}));
  CHECK(sup2["size"] == "6");

  const njson ten = json_of(run({"finctr", "tensor", "S3", "--order1", "2",
                                 "--order2", "2", "--json"}));
  CHECK(ten["pass"] == "true");
  CHECK(ten["product_set"].size() == 3);

  const njson rec = json_of(run({"conj", "reconstruct", "--class", "finset",
                                 "--types", "2", "--closure", "--depth", "6",
                                 "--max-rank", "2", "--json"}));
  CHECK(rec["recovered"].size() == 1);
  CHECK(rec["inconclusive"] == "false");
}
