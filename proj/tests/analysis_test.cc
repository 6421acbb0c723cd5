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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "gramattack/analysis.h"
#include "gramattack/error.h"
#include "gramattack/resources.h"
#include "gramattack/toy_oracle.h"
#include "toy_fixtures.h"

namespace gramattack {
namespace {

const LanguageResources& res() {
  static const LanguageResources r = LanguageResources::bundled();
  return r;
}

const std::string kData = GRAMATTACK_TEST_DATA;

BigramMaskedLM cloze_lm() {
  const auto corpus = load_dataset(kData + "/cloze_corpus.jsonl", DatasetFormat::kJsonl, res().pos);
  EXPECT_TRUE(corpus.ok());
  std::vector<TaggedSentence> sentences;
  for (const TaskInstance& inst : corpus.items) sentences.push_back(inst.segments[0]);
  return BigramMaskedLM::from_sentences(sentences);
}

std::vector<MinimalEditPair> cloze_pairs() {
  auto pairs = load_minimal_pairs(kData + "/cloze_pairs.jsonl", res().pos);
  EXPECT_TRUE(pairs.ok());
  return pairs.items;
}

TEST(BudgetSweep, PointsPerFraction) {
  LinearClassifier o = fixtures::toy_sentiment_oracle();
  const auto data = fixtures::toy_dataset(80, 21, res());
  const std::vector<double> fractions = {0.15, 0.25, 0.35, 0.45};
  const SweepResult s = budget_sweep(data, o, res(), fractions, AttackConfig{}, 2);
  ASSERT_EQ(s.points.size(), 4u);
  for (std::size_t k = 1; k < s.points.size(); ++k) {
    EXPECT_GE(*s.points[k].summary.success_rate, *s.points[k - 1].summary.success_rate);
    EXPECT_EQ(s.points[k].results.size(), s.points[0].results.size());
  }
  EXPECT_EQ(s.points[0].summary.instances, 80u);
  const std::string csv = sweep_csv(s);
  EXPECT_EQ(csv.rfind("fraction,attacked,successes,success_rate,mean_modified_fraction\n0.1500,", 0),
            0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(BudgetSweep, SingleFractionMatchesCampaign) {
  LinearClassifier o = fixtures::toy_sentiment_oracle();
  const auto data = fixtures::toy_dataset(50, 22, res());
  const std::vector<double> fractions = {0.25};
  AttackConfig cfg;
  cfg.budget_fraction = 0.25;
  const SweepResult s = budget_sweep(data, o, res(), fractions, cfg);
  const Campaign c = run_campaign(data, o, res(), cfg);
  ASSERT_EQ(s.points[0].results.size(), c.results.size());
  for (std::size_t i = 0; i < c.results.size(); ++i) {
    EXPECT_EQ(s.points[0].results[i].applied_ops, c.results[i].applied_ops);
    EXPECT_EQ(s.points[0].results[i].success, c.results[i].success);
  }
  EXPECT_EQ(s.points[0].summary.successes, c.summary.successes);
  EXPECT_EQ(s.skipped, c.skipped);
}

TEST(BudgetSweep, RejectsBadFractionLists) {
  LinearClassifier o = fixtures::toy_sentiment_oracle();
  const auto data = fixtures::toy_dataset(5, 23, res());
  EXPECT_THROW(budget_sweep(data, o, res(), std::vector<double>{}, AttackConfig{}), ValidationError);
  EXPECT_THROW(budget_sweep(data, o, res(), std::vector<double>{0.3, 0.2}, AttackConfig{}),
               ValidationError);
  EXPECT_THROW(budget_sweep(data, o, res(), std::vector<double>{0.2, 1.2}, AttackConfig{}),
               ValidationError);
}

TEST(Cloze, HandComputedDrops) {
  BigramMaskedLM lm = cloze_lm();
  const auto pairs = cloze_pairs();
  const ClozeResult r = cloze_drop(pairs, lm);
  EXPECT_EQ(r.usable_pairs, 2u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("c3"), std::string::npos);
  const double v = 24.0 / 91.0;
  EXPECT_NEAR(*r.matrix.mean(ErrorType::kPrep, -1), v, 1e-9);
  EXPECT_NEAR(*r.matrix.mean(ErrorType::kPrep, 1), v, 1e-9);
  EXPECT_NEAR(*r.matrix.mean(ErrorType::kArtOrDet, 1), v, 1e-9);
  EXPECT_NEAR(*r.matrix.mean(ErrorType::kArtOrDet, 2), 0.0, 1e-9);
  EXPECT_FALSE(r.matrix.mean(ErrorType::kArtOrDet, -1));
  EXPECT_EQ(r.matrix.total_count(), 4u);
}

TEST(Cloze, WindowIsSixEachSide) {
  std::vector<std::string> words;
  for (int i = 0; i < 21; ++i) words.push_back("w" + std::to_string(i));
  std::vector<std::string> bad = words;
  bad[10] = "zz";
  std::vector<std::vector<std::string>> corpus = {words};
  BigramMaskedLM lm(corpus);
  MinimalEditPair pair{"p", TaggedSentence::from_surfaces(bad, res().pos),
                       TaggedSentence::from_surfaces(words, res().pos),
                       {Edit{{10, 11}, {10, 11}, ErrorType::kNn}}};
  const std::vector<MinimalEditPair> pairs = {pair};
  const ClozeResult r = cloze_drop(pairs, lm);
  EXPECT_EQ(r.matrix.total_count(), 12u);
  for (int off = -6; off <= 6; ++off) {
    if (off == 0) continue;
    EXPECT_EQ(r.matrix.count(ErrorType::kNn, off), 1u) << off;
  }
  EXPECT_THROW(r.matrix.count(ErrorType::kNn, 0), std::out_of_range);
  EXPECT_THROW(r.matrix.count(ErrorType::kNn, 7), std::out_of_range);
}

TEST(Cloze, EditAtSentenceStart) {
  BigramMaskedLM lm = cloze_lm();
  const auto pairs = cloze_pairs();
  const std::vector<MinimalEditPair> c2 = {pairs[1]};
  const ClozeResult r = cloze_drop(c2, lm);
  EXPECT_EQ(r.matrix.total_count(), 2u);
  for (int off = -6; off <= -1; ++off) EXPECT_EQ(r.matrix.count(ErrorType::kArtOrDet, off), 0u);
}

TEST(Cloze, PairOrderDoesNotMatter) {
  BigramMaskedLM lm = cloze_lm();
  auto pairs = cloze_pairs();
  const std::string forward = cloze_table_tsv(cloze_drop(pairs, lm).matrix);
  std::reverse(pairs.begin(), pairs.end());
  EXPECT_EQ(cloze_table_tsv(cloze_drop(pairs, lm).matrix), forward);
}

TEST(Cloze, TableLayout) {
  BigramMaskedLM lm = cloze_lm();
  const auto pairs = cloze_pairs();
  const std::string tsv = cloze_table_tsv(cloze_drop(pairs, lm).matrix);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')),
            "error_type\t-6\t-5\t-4\t-3\t-2\t-1\t1\t2\t3\t4\t5\t6");
  EXPECT_NE(tsv.find("Prep\tNA\tNA\tNA\tNA\tNA\t0.263736 (1)\t0.263736 (1)\tNA"),
            std::string::npos)
      << tsv;
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 9);
}

TEST(Augment, CountsAndRecords) {
  LinearClassifier o = fixtures::toy_sentiment_oracle();
  const auto train = fixtures::toy_dataset(100, 31, res());
  AttackConfig cfg;
  cfg.seed = 5;
  const AugmentResult r = augment(train, o, res(), 0.5, cfg, 2);
  EXPECT_EQ(r.selected, 50u);
  EXPECT_EQ(r.records.size(), 150u);
  EXPECT_TRUE(r.failures.empty());
  for (std::size_t i = 0; i < train.size(); ++i) EXPECT_EQ(r.records[i], train[i]);
  std::set<std::string> ids;
  for (const TaskInstance& t : train) ids.insert(t.id);
  for (std::size_t i = train.size(); i < r.records.size(); ++i) {
    const TaskInstance& copy = r.records[i];
    ASSERT_GE(copy.id.size(), 4u);
    EXPECT_EQ(copy.id.substr(copy.id.size() - 4), "#adv");
    const std::string src = copy.id.substr(0, copy.id.size() - 4);
    EXPECT_TRUE(ids.count(src));
    const auto it = std::find_if(train.begin(), train.end(),
                                 [&](const TaskInstance& t) { return t.id == src; });
    EXPECT_EQ(copy.gold_label, it->gold_label);
  }
  EXPECT_GT(r.flipped, 0u);
  EXPECT_LE(r.flipped, r.selected);
}

TEST(Augment, SameSeedSameSelection) {
  LinearClassifier o = fixtures::toy_sentiment_oracle();
  const auto train = fixtures::toy_dataset(30, 32, res());
  AttackConfig cfg;
  cfg.seed = 9;
  const AugmentResult a = augment(train, o, res(), 0.3, cfg);
  const AugmentResult b = augment(train, o, res(), 0.3, cfg, 3);
  EXPECT_EQ(a.records, b.records);
}

TEST(Augment, ProportionRules) {
  EXPECT_EQ(augment_count(100, 0.5), 50u);
  EXPECT_EQ(augment_count(10, 0.25), 3u);
  EXPECT_EQ(augment_count(10, 2.0), 10u);
  EXPECT_THROW(augment_count(10, 0.0), ValidationError);
  EXPECT_THROW(augment_count(10, -1.0), ValidationError);
}

}  // namespace
}  // namespace gramattack
