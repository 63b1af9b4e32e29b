// Copyright 2026 The coarsekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coarsekit/cli.hpp"
#include "coarsekit/experiments.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace coarsekit;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const Assertion* find_assertion(const ScenarioReport& r, std::string_view prefix) {
  for (const auto& a : r.assertions) {
    if (a.description.rfind(prefix, 0) == 0) return &a;
  }
  return nullptr;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("coarsekit_test_" + name)).string();
}

}  // namespace

TEST_CASE("registry is sorted and complete") {
  const auto& reg = scenario_registry();
  std::vector<std::string> names;
  for (const auto& s : reg) names.push_back(s.name);
  CHECK(names == std::vector<std::string>{"aj_family", "heisenberg_pseudometric",
                                          "heisenberg_separation", "powers_of_ten",
                                          "rho_plus_demo", "smith_uniqueness_probe",
                                          "z_quotient_metric"});
  CHECK(find_scenario("nope") == nullptr);
}

TEST_CASE("run_scenario validates parameters") {
  CHECK_THROWS_AS(run_scenario("nope", {}), ConfigError);
  CHECK_THROWS_AS(run_scenario("powers_of_ten", {{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(run_scenario("powers_of_ten", {{"N", 5}}), ConfigError);
  CHECK_THROWS_AS(run_scenario("z_quotient_metric", {{"k", 1}}), ConfigError);
}

TEST_CASE("heisenberg_separation rows") {
  auto r = heisenberg_separation(1);
  CHECK(r.all_pass());
  REQUIRE(r.rows.size() == 1);
  bool saw = false;
  for (const auto& [k, v] : r.rows[0].values) {
    if (k == "rho(A_n,B_n)") CHECK(v == "1");
    if (k == "norm") {
      CHECK(v == "2");
      saw = true;
    }
  }
  CHECK(saw);
  auto r3 = heisenberg_separation(3);
  for (const auto& [k, v] : r3.rows[2].values) {
    if (k == "B_n^-1 A_n") CHECK(v == "(-1,-1,4)");
  }
  auto r50 = heisenberg_separation(50);
  CHECK(r50.all_pass());
  CHECK(r50.rows.size() == 50);
}

TEST_CASE("every assertion carries a tag and exact pass flag") {
  for (const auto& s : scenario_registry()) {
    auto r = run_scenario(s.name, {});
    CHECK_MESSAGE(r.all_pass(), s.name);
    for (const auto& a : r.assertions) {
      CHECK(a.pass == (a.expected == a.observed));
      const std::string t = to_string(a.tag);
      CHECK((t == "PAPER" || t == "TRIVIAL" || t == "DERIVED"));
    }
  }
}

TEST_CASE("scenario examples at other parameters") {
  auto q = z_quotient_metric(2, 10);
  CHECK(q.all_pass());
  auto a = find_assertion(q, "pseudometric diameter of [-R,R] at R=10");
  REQUIRE(a);
  CHECK(a->observed == "1");
  auto q5 = z_quotient_metric(5, 50);
  auto w = find_assertion(q5, "word diameter of [-R,R] at R=50");
  REQUIRE(w);
  CHECK(w->observed == "100");
  CHECK(find_assertion(q5, "pseudometric diameter of [-R,R] at R=50")->observed == "2");

  CHECK(powers_of_ten(3, 50).all_pass());
  CHECK(aj_family(2, 3).all_pass());
  CHECK(aj_family(3, 2).all_pass());
  CHECK(smith_uniqueness_probe(12).all_pass());
  CHECK(rho_plus_demo(5).all_pass());
  CHECK(heisenberg_pseudometric(2).all_pass());
}

TEST_CASE("report emitters") {
  auto r = run_scenario("powers_of_ten", {});
  const std::string tsv = format_tsv(r);
  CHECK(tsv.rfind("record\tkey\tvalue\texpected\ttag\tpass\n", 0) == 0);
  CHECK(tsv.find("wall_time") == std::string::npos);
  CHECK(format_tsv(r, true).find("timing\twall_time_seconds") != std::string::npos);
  auto j = nlohmann::json::parse(format_json(r));
  CHECK(j["scenario"] == "powers_of_ten");
  CHECK(j["pass"] == true);
  CHECK(j["parameters"]["N"] == "50");
  CHECK_FALSE(j.contains("wall_time_seconds"));
  CHECK(nlohmann::json::parse(format_json(r, true)).contains("wall_time_seconds"));
  for (const auto& a : j["assertions"]) CHECK(a.contains("tag"));
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto& s : scenario_registry()) {
    auto a = run_scenario(s.name, {});
    auto b = run_scenario(s.name, {});
    CHECK(format_tsv(a) == format_tsv(b));
    CHECK(format_json(a) == format_json(b));
  }
}

TEST_CASE("cli list and run") {
  auto l = cli({"list"});
  CHECK(l.code == kExitOk);
  CHECK(l.out.find("powers_of_ten") != std::string::npos);

  auto r = cli({"run", "powers_of_ten", "-p", "depth=2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("param\tdepth\t2") != std::string::npos);

  auto j = cli({"run", "heisenberg_separation", "--format", "json", "-p", "N=5"});
  CHECK(j.code == kExitOk);
  CHECK(nlohmann::json::parse(j.out)["rows"].size() == 5);

  CHECK(cli({"run", "no_such_scenario"}).code == kExitConfigError);
  CHECK(cli({"run", "powers_of_ten", "-p", "zzz=1"}).code == kExitConfigError);
  CHECK(cli({"run", "powers_of_ten", "-p", "depth"}).code == kExitConfigError);
  CHECK(cli({"run", "powers_of_ten", "--format", "xml"}).code == kExitConfigError);
  CHECK(cli({}).code == kExitConfigError);
  CHECK(cli({"bogus"}).code == kExitConfigError);
}

TEST_CASE("cli config files") {
  const std::string cfg = temp_path("cfg.json");
  const std::string outp = temp_path("out.tsv");
  {
    std::ofstream f(cfg);
    f << R"({"scenario": "aj_family", "parameters": {"depth": 2}, "output": ")" << outp << R"("})";
  }
  auto r = cli({"run", "--config", cfg});
  CHECK(r.code == kExitOk);
  std::ifstream in(outp);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("param\tdepth\t2") != std::string::npos);

  auto over = cli({"run", "--config", cfg, "-p", "depth=1", "--output", outp + ".2"});
  CHECK(over.code == kExitOk);
  std::ifstream in2(outp + ".2");
  std::stringstream ss2;
  ss2 << in2.rdbuf();
  CHECK(ss2.str().find("param\tdepth\t1") != std::string::npos);

  {
    std::ofstream f(cfg);
    f << R"({"scenario": "aj_family", "colour": "blue"})";
  }
  CHECK(cli({"run", "--config", cfg}).code == kExitConfigError);
  {
    std::ofstream f(cfg);
    f << "{not json";
  }
  CHECK(cli({"run", "--config", cfg}).code == kExitConfigError);
  CHECK(cli({"run", "--config", temp_path("missing.json")}).code == kExitConfigError);
  std::remove(cfg.c_str());
  std::remove(outp.c_str());
  std::remove((outp + ".2").c_str());
}

TEST_CASE("cli distance") {
  auto q = cli({"distance", "--group", "Z", "--metric", "quotient", "--lattice", "<(5)>", "0", "3"});
  CHECK(q.code == kExitOk);
  CHECK(q.out == "2\n");
  CHECK(cli({"distance", "--group", "Z^2", "(0,0)", "(2,3)"}).out == "5\n");
  CHECK(cli({"distance", "--group", "H", "--metric", "max-entry", "(2,1,1)", "(1,0,1)"}).out == "1\n");
  CHECK(cli({"distance", "--group", "Z", "--generators", "{2,3}", "0", "1"}).out == "2\n");
  CHECK(cli({"distance", "--group", "Z/5", "0", "3"}).out == "2\n");
  CHECK(cli({"distance", "--group", "Z", "0", "1000"}).out == "horizon-exceeded\n");
  CHECK(cli({"distance", "--group", "Z", "--metric", "max-entry", "0", "1"}).code == kExitConfigError);
  CHECK(cli({"distance", "--group", "Q", "0", "1"}).code == kExitConfigError);
  CHECK(cli({"distance", "--group", "Z", "0"}).code == kExitConfigError);
}

TEST_CASE("cli member") {
  auto m = cli({"member", "--group", "Z", "--basis", "generated(geometric(10,6))", "--set",
                "{0,10,100}", "--depth", "1"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("status\tMember\n") != std::string::npos);
  auto n = cli({"member", "--group", "Z", "--basis", "<geometric(10,6); cap=3>", "--set",
                "range(0,50,2)", "--depth", "3"});
  CHECK(n.code == kExitOk);
  CHECK(n.out.find("status\tNotCoveredAtDepth\n") != std::string::npos);
  auto b = cli({"member", "--group", "Z", "--basis", "balls(word)", "--set", "{-2,3}", "--depth", "3"});
  CHECK(b.out.find("status\tMember\n") != std::string::npos);
  CHECK(cli({"member", "--group", "Z", "--basis", "weird", "--set", "{1}"}).code == kExitConfigError);
  CHECK(cli({"member", "--group", "Z", "--basis", "minimal", "--set", "{1}", "--depth", "0"}).code ==
        kExitConfigError);
}
