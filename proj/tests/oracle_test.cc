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

#include <cmath>
#include <filesystem>
#include <thread>

#include <gtest/gtest.h>

#include "gramattack/error.h"
#include "gramattack/oracle.h"
#include "gramattack/resources.h"
#include "gramattack/toy_oracle.h"
#include "toy_fixtures.h"

namespace gramattack {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<Prediction> ask(Oracle& o, std::vector<OracleInput> batch) {
  return o.predict(batch);
}

// Counts forwarded inputs.
class CountingOracle : public Oracle {
 public:
  explicit CountingOracle(Oracle& inner) : inner_(inner) {}
  std::vector<Prediction> predict(std::span<const OracleInput> batch) override {
    seen += batch.size();
    ++calls;
    return inner_.predict(batch);
  }
  std::size_t max_batch() const override { return 3; }
  std::size_t seen = 0;
  std::size_t calls = 0;

 private:
  Oracle& inner_;
};

TEST(LinearClassifier, KeywordProbability) {
  LinearClassifier o = fixtures::keyword_oracle({{"the", 2.0}, {"a", -1.0}});
  const auto p = ask(o, {{"The cat sleeps", std::nullopt}});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p[0].probs.at("1"), sigmoid(2.0), 1e-12);
  EXPECT_NEAR(p[0].probs.at("1"), 0.881, 5e-4);
  EXPECT_NEAR(p[0].probs.at("0") + p[0].probs.at("1"), 1.0, 1e-12);
  const auto q = ask(o, {{"a cat sleeps", std::nullopt}});
  EXPECT_NEAR(q[0].probs.at("1"), 0.269, 5e-4);
}

TEST(LinearClassifier, OutOfVocabularyWeighsNothing) {
  LinearClassifier o = fixtures::keyword_oracle({{"the", 2.0}});
  const auto p = ask(o, {{"the cat", std::nullopt}, {"the zyzzyva cat", std::nullopt}});
  EXPECT_EQ(p[0], p[1]);
}

TEST(LinearClassifier, PairSegmentsBothCount) {
  LinearClassifier o = fixtures::keyword_oracle({{"the", 1.0}});
  const auto p = ask(o, {{"the cat", std::string("the dog")}});
  EXPECT_NEAR(p[0].probs.at("1"), sigmoid(2.0), 1e-12);
}

TEST(LinearClassifier, EmptyBatchRejected) {
  LinearClassifier o = fixtures::keyword_oracle({});
  EXPECT_THROW(ask(o, {}), OracleError);
}

TEST(LinearClassifier, IdenticalInputsIdenticalRows) {
  LinearClassifier o = fixtures::toy_sentiment_oracle();
  const auto p = ask(o, {{"the film is good", std::nullopt}, {"the film is good", std::nullopt}});
  EXPECT_EQ(p[0], p[1]);
}

TEST(LinearClassifier, TrainFitsSeparableData) {
  const PosLexicon& pos = LanguageResources::bundled().pos;
  std::vector<TaskInstance> data;
  const std::vector<std::string> good = {"a good film", "good acting here", "really good plot",
                                         "the food was good"};
  const std::vector<std::string> bad = {"a bad film", "bad acting here", "really bad plot",
                                        "the food was bad"};
  for (std::size_t i = 0; i < good.size(); ++i) {
    data.push_back(fixtures::single("g" + std::to_string(i), good[i], "pos", pos));
    data.push_back(fixtures::single("b" + std::to_string(i), bad[i], "neg", pos));
  }
  LinearClassifier o = LinearClassifier::train(data);
  for (const TaskInstance& inst : data) {
    const auto p = ask(o, {{inst.segments[0].text(), std::nullopt}});
    EXPECT_EQ(argmax(p[0].probs), inst.gold_label) << inst.id;
  }
}

TEST(LinearClassifier, TrainNeedsTwoLabels) {
  const PosLexicon& pos = LanguageResources::bundled().pos;
  std::vector<TaskInstance> data = {fixtures::single("x", "a b", "pos", pos)};
  EXPECT_THROW(LinearClassifier::train(data), ValidationError);
}

TEST(LinearClassifier, JsonRoundTrip) {
  LinearClassifier o = fixtures::toy_sentiment_oracle();
  LinearClassifier back = LinearClassifier::parse(o.to_json());
  const std::vector<OracleInput> in = {{"the film is not good at all", std::nullopt}};
  EXPECT_EQ(o.predict(in), back.predict(in));
  EXPECT_THROW(LinearClassifier::parse("{\"labels\": 3}"), ValidationError);
  EXPECT_THROW(LinearClassifier::parse("not json"), ValidationError);
  EXPECT_THROW(LinearClassifier::load("/nonexistent/model.json"), ValidationError);
}

TEST(LinearClassifier, TaggingRows) {
  LinearClassifier o({"O", "X"}, {}, {{"X", {{"cat", 3.0}}}}, LinearClassifier::Kind::kTagging);
  const auto p = ask(o, {{"the cat sleeps", std::nullopt}});
  ASSERT_TRUE(p[0].tagging());
  ASSERT_EQ(p[0].token_probs.size(), 3u);
  EXPECT_EQ(argmax(p[0].token_probs[1]), "X");
  EXPECT_EQ(argmax(p[0].token_probs[0]), "O");
}

TEST(Distribution, Validation) {
  EXPECT_NO_THROW(validate_distribution({{"a", 0.25}, {"b", 0.75}}));
  EXPECT_THROW(validate_distribution({{"a", 0.5}, {"b", 0.3}}), OracleError);
  EXPECT_THROW(validate_distribution({{"a", 1.5}, {"b", -0.5}}), OracleError);
  EXPECT_THROW(validate_distribution({{"a", std::nan("")}, {"b", 1.0}}), OracleError);
  try {
    validate_distribution({{"a", 0.5}, {"b", 0.3}});
  } catch (const OracleError& e) {
    EXPECT_FALSE(e.retriable());
  }
}

TEST(Distribution, ArgmaxTiesGoToFirstLabel) {
  EXPECT_EQ(argmax({{"b", 0.5}, {"a", 0.5}}), "a");
  EXPECT_EQ(argmax({{"b", 0.6}, {"a", 0.4}}), "b");
}

TEST(Distribution, PredictionsMustShareLabels) {
  const std::vector<OracleInput> batch = {{"x", std::nullopt}, {"y", std::nullopt}};
  std::vector<Prediction> rows(2);
  rows[0].probs = {{"a", 1.0}};
  rows[1].probs = {{"b", 1.0}};
  EXPECT_THROW(validate_predictions(batch, rows), OracleError);
  rows.pop_back();
  EXPECT_THROW(validate_predictions(batch, rows), OracleError);
}

TEST(CachingOracle, HitsAndMisses) {
  LinearClassifier inner = fixtures::toy_sentiment_oracle();
  CachingOracle cache(inner);
  const auto a = ask(cache, {{"good film", std::nullopt}, {"bad film", std::nullopt}});
  const auto b = ask(cache, {{"good film", std::nullopt}, {"good film", std::nullopt}});
  EXPECT_EQ(cache.misses(), 2u);
  EXPECT_EQ(cache.hits(), 2u);
  EXPECT_EQ(a[0], b[0]);
  EXPECT_EQ(b[0], b[1]);
}

TEST(CachingOracle, PairKeyDistinguishesSegments) {
  LinearClassifier inner = fixtures::keyword_oracle({{"x", 1.0}});
  CachingOracle cache(inner);
  const auto p = ask(cache, {{"x y", std::nullopt}, {"x", std::string("y")}, {"x y", std::string("")}});
  EXPECT_EQ(cache.misses(), 3u);
  EXPECT_EQ(p.size(), 3u);
}

TEST(CachingOracle, ConcurrentUse) {
  LinearClassifier inner = fixtures::toy_sentiment_oracle();
  CachingOracle cache(inner);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&cache, t] {
      for (int i = 0; i < 50; ++i) {
        std::vector<OracleInput> in = {{"film " + std::to_string((i + t) % 10), std::nullopt}};
        cache.predict(in);
      }
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(cache.misses() + cache.hits(), 200u);
  EXPECT_LE(cache.misses(), 40u);
}

TEST(PredictAll, SplitsIntoBatches) {
  LinearClassifier inner = fixtures::toy_sentiment_oracle();
  CountingOracle counting(inner);
  std::vector<OracleInput> in;
  for (int i = 0; i < 7; ++i) in.push_back({"w" + std::to_string(i), std::nullopt});
  const auto out = predict_all(counting, in);
  EXPECT_EQ(out.size(), 7u);
  EXPECT_EQ(counting.calls, 3u);
  EXPECT_EQ(counting.seen, 7u);
}

std::vector<std::vector<std::string>> corpus() {
  return {{"a", "b", "c"}, {"a", "b"}, {"b", "c", "c"}};
}

TEST(BigramMaskedLM, HandComputedProbabilities) {
  const auto c = corpus();
  BigramMaskedLM lm(c);
  EXPECT_EQ(lm.vocabulary_size(), 4u);  // a b c <unk>
  const std::vector<std::string> abc = {"a", "b", "c"};
  double total = 0.0;
  for (const std::string w : {"a", "b", "c", "<unk>"}) total += lm.probability(abc, 1, w);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(lm.probability(abc, 1, "b"), 9.0 / 13.0, 1e-12);
  for (const std::string w : {"a", "c", "<unk>"}) {
    EXPECT_LT(lm.probability(abc, 1, w), lm.probability(abc, 1, "b"));
  }
  const std::vector<std::string> axc = {"x", "b", "c"};
  EXPECT_NEAR(lm.mask_fill(axc, 1, "b"), 3.0 / 7.0, 1e-12);
}

TEST(BigramMaskedLM, SentenceEdges) {
  const auto c = corpus();
  BigramMaskedLM lm(c);
  const std::vector<std::string> ab = {"a", "b"};
  EXPECT_NEAR(lm.probability(std::vector<std::string>{"a", "b", "c"}, 0, "a"), 9.0 / 13.0, 1e-12);
  EXPECT_GT(lm.probability(ab, 1, "b"), 0.0);
  EXPECT_THROW(lm.probability(ab, 2, "b"), ValidationError);
}

TEST(BigramMaskedLM, UnknownTargetStillPositive) {
  const auto c = corpus();
  BigramMaskedLM lm(c);
  const std::vector<std::string> abc = {"a", "b", "c"};
  const double p = lm.probability(abc, 1, "zebra");
  EXPECT_GT(p, 0.0);
  EXPECT_DOUBLE_EQ(p, lm.probability(abc, 1, "<unk>"));
  EXPECT_DOUBLE_EQ(lm.probability(abc, 1, "B"), lm.probability(abc, 1, "b"));
}

TEST(BigramMaskedLM, EmptyCorpusRejected) {
  std::vector<std::vector<std::string>> none;
  EXPECT_THROW(BigramMaskedLM lm(none), ValidationError);
}

}  // namespace
}  // namespace gramattack
