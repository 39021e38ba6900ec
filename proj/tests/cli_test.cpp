// Copyright 2026 The ocf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "ocf/ocf.hpp"

namespace ocf {
namespace {

namespace fs = std::filesystem;

const std::string kSamples = OCF_SAMPLES_DIR;
const std::string kGame = kSamples + "/g1.json";
const std::string kOutcome = kSamples + "/o1.json";
const std::string kLbg = kSamples + "/l1.json";

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ocf_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::string p = path(name);
    write_json_file(p, Json::parse(text));
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, TreeOptValThreshold) {
  CliRun yes = run({"tree", "optval", "--game", kGame, "--all", "--threshold", "5"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_NE(yes.out.find("value: 5"), std::string::npos);
  CliRun no = run({"tree", "optval", "--game", kGame, "--threshold", "11/2"});
  EXPECT_EQ(no.code, 1);
  CliRun part = run({"tree", "optval", "--game", kGame, "--coalition", "1,0",
                  "--format", "machine"});
  EXPECT_EQ(part.code, 0);
  EXPECT_EQ(Json::parse(part.out)["value"], "1");
}

TEST_F(CliTest, OracleCheckCoreSample) {
  CliRun r = run({"oracle", "checkcore", "--game", kGame, "--outcome", kOutcome,
               "--arb", "refined"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("in core"), std::string::npos);
}

TEST_F(CliTest, ViolationIsReported) {
  std::string bad = write("bad.json", R"({"structure": [[1, 1], [1, 0]],
                                         "imputation": [["4", "0"], ["1", "0"]]})");
  for (const char* solver : {"oracle", "tree", "tw"}) {
    CliRun r = run({solver, "checkcore", "--game", kGame, "--outcome", bad,
                 "--format", "machine"});
    EXPECT_EQ(r.code, 1) << solver;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["in_core"], false);
    EXPECT_EQ(j["excess"], "2");
    EXPECT_EQ(j["set"], Json::array({1}));
  }
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  CliRun missing = run({"oracle", "optval", "--game", path("nope.json")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(missing.out.empty());
  EXPECT_FALSE(missing.err.empty());
  EXPECT_EQ(run({"tree", "optval", "--game", kGame, "--bogus"}).code, 2);
  EXPECT_EQ(run({"tree"}).code, 2);
  EXPECT_EQ(run({"tree", "arbval", "--game", kGame, "--outcome", kOutcome,
                 "--set", "0", "--arb", "sensitive"})
                .code,
            2);
  EXPECT_EQ(run({"tree", "arbval", "--game", kGame, "--outcome", kOutcome,
                 "--set", "7"})
                .code,
            2);
  EXPECT_EQ(run({"tree", "optval", "--game", kGame, "--threshold", "1/0"}).code, 2);
  EXPECT_EQ(run({"oracle", "optval", "--game", kGame, "--budget-agents", "1"}).code,
            3);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(CliTest, MachineOutputIsDeterministic) {
  std::vector<std::string> args{"tw", "arbval", "--game", kGame, "--outcome",
                                kOutcome, "--set", "0", "--arb", "optimistic",
                                "--format", "machine"};
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  Json j = Json::parse(a.out);
  EXPECT_EQ(j["version"], cli::kVersion);
  EXPECT_EQ(j["command"], "tw arbval");
  EXPECT_EQ(j["value"], "3");
  EXPECT_FALSE(j.contains("timing"));
  args.push_back("--timing");
  EXPECT_TRUE(Json::parse(run(args).out).contains("timing"));
}

TEST_F(CliTest, OptValWitnessRoundTrip) {
  for (const char* solver : {"oracle", "tree", "tw"}) {
    std::string w = path(std::string(solver) + "_witness.json");
    ASSERT_EQ(run({solver, "optval", "--game", kGame, "--out", w}).code, 0);
    CliRun v = run({"validate", "--game", kGame, "--outcome", w});
    EXPECT_EQ(v.code, 0) << solver << v.out << v.err;
    EXPECT_NE(v.out.find("value 5"), std::string::npos);
  }
}

TEST_F(CliTest, StableOutcomeRoundTrip) {
  std::string cs = write("cs.json", R"({"structure": [[1, 1], [1, 0]]})");
  for (const char* solver : {"oracle", "tree"}) {
    std::string out = path(std::string(solver) + "_stable.json");
    ASSERT_EQ(run({solver, "is-stable", "--game", kGame, "--outcome", cs, "--out",
                   out})
                  .code,
              0);
    EXPECT_EQ(run({"validate", "--game", kGame, "--outcome", out}).code, 0);
    EXPECT_EQ(run({"oracle", "checkcore", "--game", kGame, "--outcome", out}).code, 0);
  }
  std::string idle = write("idle.json", R"({"structure": [[2, 0]]})");
  EXPECT_EQ(run({"tree", "is-stable", "--game", kGame, "--outcome", idle}).code, 1);
}

TEST_F(CliTest, ValidateReportsViolations) {
  std::string bad = write("bad.json", R"({"structure": [[1, 1], [1, 0]],
                                         "imputation": [["2", "1"], ["1", "0"]]})");
  CliRun r = run({"validate", "--game", kGame, "--outcome", bad, "--format", "machine"});
  EXPECT_EQ(r.code, 1);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["violations"][0]["kind"], "efficiency");
}

TEST_F(CliTest, DecompositionFile) {
  std::string d = write("d.json", R"({"bags": [[0, 1]], "edges": [], "root": 0})");
  EXPECT_EQ(run({"tw", "optval", "--game", kGame, "--decomp", d, "--threshold", "5"})
                .code,
            0);
  std::string broken = write("broken.json", R"({"bags": [[0], [1]], "edges": [[0, 1]]})");
  EXPECT_EQ(run({"tw", "optval", "--game", kGame, "--decomp", broken}).code, 2);
  EXPECT_EQ(run({"tw", "optval", "--game", kGame, "--decomp", d, "--auto"}).code, 2);
}

TEST_F(CliTest, LbgCommands) {
  CliRun s = run({"lbg", "solve", "--lbg", kLbg, "--format", "machine"});
  ASSERT_EQ(s.code, 0);
  Json j = Json::parse(s.out);
  EXPECT_EQ(j["value"], "4");
  EXPECT_EQ(j["duals"], Json::array({"1", "2"}));
  std::string out = path("core.json");
  ASSERT_EQ(run({"lbg", "core", "--lbg", kLbg, "--out", out}).code, 0);
  CliRun v = run({"lbg", "verify", "--lbg", kLbg, "--outcome", out, "--grid", "1/2"});
  EXPECT_EQ(v.code, 0) << v.out << v.err;
  std::string unpaid = write("unpaid.json", R"({"levels": ["1", "1", "0"],
      "payoff": [["0", "0"], ["0", "0"], ["0", "0"]]})");
  EXPECT_EQ(run({"lbg", "verify", "--lbg", kLbg, "--outcome", unpaid}).code, 1);
}

TEST_F(CliTest, LbgGenerators) {
  std::string flow = write("flow.json", R"({"nodes": 2,
      "edges": [{"from": 0, "to": 1, "capacity": "1"}],
      "suppliers": [{"source": 0, "sink": 1, "weight": "1", "price": "5"}]})");
  std::string inst = path("flow_lbg.json");
  CliRun r = run({"lbg", "gen-flow", "--input", flow, "--out", inst, "--solve",
               "--threshold", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run({"lbg", "solve", "--lbg", inst, "--threshold", "5"}).code, 0);
  std::string market = write("market.json", R"({"a_weights": ["1", "1"],
      "b_weights": ["1"], "edges": [{"u": 0, "v": 2, "price": "3"},
                                    {"u": 1, "v": 2, "price": "1"}]})");
  EXPECT_EQ(run({"lbg", "gen-market", "--input", market, "--solve", "--threshold", "3"})
                .code,
            0);
  std::string routing = write("routing.json", R"({"nodes": 3, "arcs": [[0, 1], [1, 2]],
      "capacities": ["1", "1", "1"],
      "demands": [{"source": 0, "sink": 2, "price": "1"}]})");
  EXPECT_EQ(run({"lbg", "gen-routing", "--input", routing, "--solve", "--threshold",
                 "2"})
                .code,
            1);
  std::string bad = write("bad.json", R"({"nodes": 3})");
  EXPECT_EQ(run({"lbg", "gen-routing", "--input", bad}).code, 2);
}

TEST_F(CliTest, GadgetGenerators) {
  std::string x = write("x.json", R"({"elements": 6, "subsets": [[0, 1, 2], [3, 4, 5]]})");
  std::string game = path("x_game.json");
  EXPECT_EQ(run({"gen", "x3c", "--input", x, "--out", game, "--solve",
                 "--budget-agents", "12"})
                .code,
            0);
  EXPECT_EQ(run({"validate", "--game", game}).code, 0);
  EXPECT_EQ(run({"tree", "optval", "--game", game, "--threshold", "12"}).code, 0);
  std::string nx = write("nx.json", R"({"elements": 6, "subsets": [[0, 1, 2], [0, 1, 3]]})");
  EXPECT_EQ(run({"gen", "x3c", "--input", nx, "--solve", "--budget-agents", "12"}).code,
            1);
  std::string is = write("is.json", R"({"n": 3, "edges": [[0, 1], [1, 2]], "m": 2})");
  EXPECT_EQ(run({"gen", "indep-set", "--input", is, "--solve"}).code, 0);
  std::string sc = write("sc.json", R"({"elements": 1, "sets": [[0]], "l": 1})");
  std::string sg = path("sc_game.json"), so = path("sc_outcome.json");
  EXPECT_EQ(run({"gen", "set-cover", "--input", sc, "--out", sg, "--outcome-out", so})
                .code,
            0);
  EXPECT_EQ(run({"validate", "--game", sg, "--outcome", so, "--ir-mode", "unit"}).code,
            0);
  std::string nsc = write("nsc.json", R"({"elements": 2, "sets": [[0], [1]], "l": 1})");
  EXPECT_EQ(run({"gen", "set-cover", "--input", nsc}).code, 1);
}

}  // namespace
}  // namespace ocf
