// Copyright 2026 The GramAttack Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.h"
#include "json.hpp"

#include "gramattack/campaign_io.h"
#include "gramattack/resources.h"
#include "toy_fixtures.h"

namespace gramattack {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kData = GRAMATTACK_TEST_DATA;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<json> jsonl(const fs::path& p) {
  std::vector<json> out;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("gramattack-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
    unsetenv("GRAMATTACK_SEED");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Toy dataset plus the classifier that labelled it.
  void write_toy(std::size_t n, std::uint64_t seed) {
    const LanguageResources res = LanguageResources::bundled();
    std::ofstream out(path("toy.jsonl"));
    write_dataset_jsonl(out, fixtures::toy_dataset(n, seed, res));
    out.close();
    fixtures::toy_sentiment_oracle().save(path("model.json"));
  }

  fs::path dir_;
};

TEST_F(CliTest, EstimateWritesConfusionFile) {
  const CliRun r = run({"estimate", "--pairs", kData + "/pairs_hand_counted.jsonl", "--out",
                     path("conf.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json conf = json::parse(slurp(path("conf.json")));
  EXPECT_NEAR(conf["distribution"]["ArtOrDet"].get<double>(), 4.0 / 9.0, 1e-12);
  EXPECT_TRUE(fs::exists(path("conf.json.config.json")));
  EXPECT_NE(r.err.find("Rloc-"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingInputIsValidationError) {
  const CliRun r = run({"estimate", "--pairs", path("nope.jsonl"), "--out", path("c.json")});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, PairsWithoutSupportedEdits) {
  std::ofstream(path("empty.jsonl")) << "";
  const CliRun r = run({"estimate", "--pairs", path("empty.jsonl"), "--out", path("c.json")});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("no supported edits"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitValidation);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"attack", "--data", "x"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  write_toy(5, 1);
  EXPECT_EQ(run({"attack", "--data", path("toy.jsonl"), "--oracle", "builtin:" + path("model.json"),
                 "--out", path("r.jsonl"), "--jobs", "0"})
                .code,
            cli::kExitValidation);
  EXPECT_EQ(run({"attack", "--data", path("toy.jsonl"), "--oracle", "carrier-pigeon:x", "--out",
                 path("r.jsonl")})
                .code,
            cli::kExitValidation);
}

TEST_F(CliTest, PerturbIsReproducible) {
  write_toy(30, 2);
  const std::vector<std::string> args = {"perturb", "--data", path("toy.jsonl"), "--out",
                                         path("p1.jsonl"), "--seed", "17"};
  ASSERT_EQ(run(args).code, 0);
  std::vector<std::string> again = args;
  again[4] = path("p2.jsonl");
  ASSERT_EQ(run(again).code, 0);
  EXPECT_EQ(slurp(path("p1.jsonl")), slurp(path("p2.jsonl")));
  const auto recs = jsonl(path("p1.jsonl"));
  ASSERT_EQ(recs.size(), 30u);
  EXPECT_EQ(recs[0]["error_positions"].size(), 1u);
  const json cfg = json::parse(slurp(path("p1.jsonl.config.json")));
  EXPECT_EQ(cfg["seed"], 17);
  EXPECT_EQ(cfg["subcommand"], "perturb");
}

TEST_F(CliTest, SeedFromEnvironment) {
  write_toy(10, 3);
  setenv("GRAMATTACK_SEED", "17", 1);
  ASSERT_EQ(run({"perturb", "--data", path("toy.jsonl"), "--out", path("env.jsonl")}).code, 0);
  unsetenv("GRAMATTACK_SEED");
  ASSERT_EQ(run({"perturb", "--data", path("toy.jsonl"), "--out", path("flag.jsonl"), "--seed",
                 "17"})
                .code,
            0);
  EXPECT_EQ(slurp(path("env.jsonl")), slurp(path("flag.jsonl")));
  setenv("GRAMATTACK_SEED", "banana", 1);
  EXPECT_EQ(run({"perturb", "--data", path("toy.jsonl"), "--out", path("x.jsonl")}).code,
            cli::kExitValidation);
  unsetenv("GRAMATTACK_SEED");
}

TEST_F(CliTest, PerturbTargetType) {
  write_toy(20, 4);
  const CliRun r = run({"perturb", "--data", path("toy.jsonl"), "--out", path("p.jsonl"),
                     "--target-type", "Worder"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"perturb", "--data", path("toy.jsonl"), "--out", path("p.jsonl"),
                 "--target-type", "Spelling"})
                .code,
            cli::kExitValidation);
}

TEST_F(CliTest, ProbeDataHalfCorrupted) {
  const LanguageResources res = LanguageResources::bundled();
  std::vector<TaskInstance> long_ones;
  for (const TaskInstance& t : fixtures::toy_dataset(400, 5, res)) {
    if (t.segments[0].size() >= 10) long_ones.push_back(t);
    if (long_ones.size() == 50) break;
  }
  ASSERT_EQ(long_ones.size(), 50u);
  {
    std::ofstream out(path("long.jsonl"));
    write_dataset_jsonl(out, long_ones);
  }
  const CliRun r = run({"probe-data", "--data", path("long.jsonl"), "--out", path("probe.jsonl"),
                     "--target-type", "ArtOrDet"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t bad = 0;
  for (const json& rec : jsonl(path("probe.jsonl"))) {
    if (rec["label"] == "unacceptable") {
      ++bad;
      EXPECT_FALSE(rec["error_positions"].empty());
    } else {
      EXPECT_EQ(rec["label"], "acceptable");
    }
  }
  EXPECT_EQ(bad, 25u);
}

TEST_F(CliTest, AttackWritesReport) {
  write_toy(30, 6);
  const CliRun r = run({"attack", "--data", path("toy.jsonl"), "--oracle",
                     "builtin:" + path("model.json"), "--out", path("r.jsonl"), "--jobs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const CampaignReport rep = load_report(path("r.jsonl"));
  EXPECT_EQ(rep.summary.instances, 30u);
  EXPECT_EQ(rep.records.size(), 30u);
  EXPECT_GT(rep.summary.successes, 0u);
  const json cfg = json::parse(slurp(path("r.jsonl.config.json")));
  EXPECT_EQ(cfg["attack"]["algorithm"], "greedy");
  EXPECT_EQ(cfg["jobs"], 2);
}

TEST_F(CliTest, BeamWidthOneMatchesGreedy) {
  write_toy(40, 7);
  const std::string model = "builtin:" + path("model.json");
  ASSERT_EQ(run({"attack", "--data", path("toy.jsonl"), "--oracle", model, "--out",
                 path("g.jsonl"), "--budget", "0.25"})
                .code,
            0);
  ASSERT_EQ(run({"attack", "--data", path("toy.jsonl"), "--oracle", model, "--out",
                 path("b.jsonl"), "--budget", "0.25", "--algorithm", "beam", "--beam-size", "1"})
                .code,
            0);
  EXPECT_EQ(slurp(path("g.jsonl")), slurp(path("b.jsonl")));
}

TEST_F(CliTest, UnreachableRemoteOracle) {
  write_toy(3, 8);
  const CliRun r = run({"attack", "--data", path("toy.jsonl"), "--oracle", "remote:http://127.0.0.1:9",
                     "--out", path("r.jsonl"), "--retries", "0", "--timeout", "1"});
  EXPECT_EQ(r.code, cli::kExitOracle) << r.err;
}

TEST_F(CliTest, SweepWritesCsvAndPerBudgetReports) {
  write_toy(30, 9);
  const CliRun r = run({"sweep", "--data", path("toy.jsonl"), "--oracle",
                     "builtin:" + path("model.json"), "--out", path("sweep.csv"), "--fractions",
                     "0.15,0.35"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("sweep.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_TRUE(fs::exists(path("sweep.csv.budget-0.15.jsonl")));
  EXPECT_TRUE(fs::exists(path("sweep.csv.budget-0.35.jsonl")));
  EXPECT_EQ(run({"sweep", "--data", path("toy.jsonl"), "--oracle", "builtin:" + path("model.json"),
                 "--out", path("s2.csv"), "--fractions", "0.35,0.15"})
                .code,
            cli::kExitValidation);
}

TEST_F(CliTest, ClozeTable) {
  const CliRun r = run({"cloze", "--pairs", kData + "/cloze_pairs.jsonl", "--mlm",
                     "builtin:" + kData + "/cloze_corpus.jsonl", "--out", path("cloze.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(path("cloze.tsv")).find("0.263736 (1)"), std::string::npos);
  EXPECT_NE(r.err.find("c3"), std::string::npos);
}

TEST_F(CliTest, AugmentAndTrain) {
  write_toy(20, 10);
  CliRun r = run({"augment", "--data", path("toy.jsonl"), "--oracle", "builtin:" + path("model.json"),
               "--out", path("aug.jsonl"), "--proportion", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(jsonl(path("aug.jsonl")).size(), 30u);
  EXPECT_EQ(run({"augment", "--data", path("toy.jsonl"), "--oracle",
                 "builtin:" + path("model.json"), "--out", path("aug.jsonl"), "--proportion", "0"})
                .code,
            cli::kExitValidation);
  r = run({"train-oracle", "--data", path("aug.jsonl"), "--out", path("m2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NO_THROW(LinearClassifier::load(path("m2.json")));
}

TEST_F(CliTest, ReportMergesFiles) {
  write_toy(20, 11);
  const std::string model = "builtin:" + path("model.json");
  ASSERT_EQ(run({"attack", "--data", path("toy.jsonl"), "--oracle", model, "--out",
                 path("a.jsonl")})
                .code,
            0);
  ASSERT_EQ(run({"attack", "--data", path("toy.jsonl"), "--oracle", model, "--out",
                 path("b.jsonl"), "--algorithm", "genetic"})
                .code,
            0);
  const CliRun r = run({"report", path("a.jsonl"), path("b.jsonl"), "--per-file-out",
                     path("per.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("instances,40"), std::string::npos) << r.out;
  const std::string per = slurp(path("per.csv"));
  EXPECT_EQ(std::count(per.begin(), per.end(), '\n'), 3);
  std::ofstream(path("bad.jsonl")) << "{oops\n";
  EXPECT_EQ(run({"report", path("bad.jsonl")}).code, cli::kExitValidation);
}

}  // namespace
}  // namespace gramattack
