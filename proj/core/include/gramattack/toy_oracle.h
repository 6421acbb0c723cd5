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
#ifndef GRAMATTACK_TOY_ORACLE_H_
#define GRAMATTACK_TOY_ORACLE_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramattack/oracle.h"
#include "gramattack/text_model.h"

namespace gramattack {

// Bag-of-tokens linear model: p(label) = softmax_l(bias[l] + sum_t w[l][t]).
// Tokens are lowercased whitespace tokens of every segment; unseen tokens
// weigh 0. In tagging mode each token is scored alone:
// p(label | t) = softmax_l(bias[l] + w[l][t]).
//
// Weights file:
//   {"kind": "sequence"|"tagging", "labels": [...], "bias": {label: b},
//    "weights": {label: {token: w}}}
// "kind", "bias" and any label's weight map may be omitted.
class LinearClassifier : public Oracle {
 public:
  enum class Kind { kSequence, kTagging };

  LinearClassifier(std::vector<std::string> labels,
                   std::map<std::string, double> bias,
                   std::map<std::string, std::map<std::string, double>> weights,
                   Kind kind = Kind::kSequence);

  // Naive-Bayes log-likelihoods with add-one smoothing, centered per token
  // across labels; bias is the centered log prior. Token-level counts for
  // tagging data. Throws ValidationError with fewer than two labels.
  static LinearClassifier train(std::span<const TaskInstance> data);

  static LinearClassifier parse(std::string_view json_text);
  static LinearClassifier load(const std::filesystem::path& path);
  std::string to_json() const;
  void save(const std::filesystem::path& path) const;

  std::vector<Prediction> predict(std::span<const OracleInput> batch) override;

  LabelProbs score(const OracleInput& input) const;
  std::vector<LabelProbs> score_tokens(std::string_view text) const;

  const std::vector<std::string>& labels() const { return labels_; }
  Kind kind() const { return kind_; }
  double weight(const std::string& label, const std::string& token) const;

 private:
  LabelProbs softmax(const std::map<std::string, double>& logits) const;

  std::vector<std::string> labels_;
  std::map<std::string, double> bias_;
  std::map<std::string, std::map<std::string, double>> weights_;
  Kind kind_;
};

// Bigram mask-filler with add-one smoothing:
//   P(w | l _ r) = (c(l,w)+1)(c(w,r)+1) / sum_v (c(l,v)+1)(c(v,r)+1)
// over the corpus vocabulary plus <unk>. Sentence edges are <s> and </s>;
// words are lowercased and unseen words map to <unk>.
class BigramMaskedLM : public MaskFillOracle {
 public:
  static constexpr std::string_view kStart = "<s>";
  static constexpr std::string_view kEnd = "</s>";
  static constexpr std::string_view kUnknown = "<unk>";

  // Throws ValidationError on an empty corpus.
  explicit BigramMaskedLM(std::span<const std::vector<std::string>> corpus);
  static BigramMaskedLM from_sentences(std::span<const TaggedSentence> corpus);

  double mask_fill(std::span<const std::string> tokens, std::size_t mask_index,
                   std::string_view target) override;

  double probability(std::span<const std::string> tokens, std::size_t mask_index,
                     std::string_view target) const;

  std::size_t vocabulary_size() const { return vocab_.size(); }

 private:
  std::string normalize(std::string_view word) const;
  double count(const std::string& left, const std::string& right) const;

  std::vector<std::string> vocab_;  // sorted, includes <unk>
  std::map<std::pair<std::string, std::string>, double> bigrams_;
};

}  // namespace gramattack

#endif  // GRAMATTACK_TOY_ORACLE_H_
