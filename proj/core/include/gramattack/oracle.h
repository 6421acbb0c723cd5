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
#ifndef GRAMATTACK_ORACLE_H_
#define GRAMATTACK_ORACLE_H_

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gramattack {

using LabelProbs = std::map<std::string, double>;

inline constexpr std::size_t kDefaultMaxBatch = 32;
inline constexpr double kProbTolerance = 1e-6;

// What the victim sees of one instance.
struct OracleInput {
  std::string text_a;
  std::optional<std::string> text_b;

  bool operator==(const OracleInput&) const = default;
};

struct Prediction {
  // Sequence-level distribution (single-sentence and pair tasks).
  LabelProbs probs;
  // Tagging tasks: one distribution per whitespace token of text_a.
  std::vector<LabelProbs> token_probs;

  bool tagging() const { return !token_probs.empty(); }
  bool operator==(const Prediction&) const = default;
};

// Query-only access to a victim classifier. Implementations must be safe for
// concurrent predict() calls and deterministic for identical inputs.
class Oracle {
 public:
  virtual ~Oracle() = default;

  // One Prediction per input, in order. Throws OracleError; an empty batch
  // is rejected.
  virtual std::vector<Prediction> predict(std::span<const OracleInput> batch) = 0;

  virtual std::size_t max_batch() const { return kDefaultMaxBatch; }
};

// Probability of a target word filling a masked position.
class MaskFillOracle {
 public:
  virtual ~MaskFillOracle() = default;

  virtual double mask_fill(std::span<const std::string> tokens, std::size_t mask_index,
                           std::string_view target) = 0;
};

// Label with the highest probability; ties go to the label that sorts first.
const std::string& argmax(const LabelProbs& probs);

// Throws OracleError(non-retriable) unless every probability is finite and
// in [0, 1] and the row sums to 1 within kProbTolerance.
void validate_distribution(const LabelProbs& probs);

// Checks one response against its request: row count, each distribution,
// and a single label set across all rows (and across `expected_labels` when
// given).
void validate_predictions(std::span<const OracleInput> batch,
                          std::span<const Prediction> predictions,
                          const std::vector<std::string>* expected_labels = nullptr);

// Splits the batch into max_batch()-sized requests.
std::vector<Prediction> predict_all(Oracle& oracle, std::span<const OracleInput> batch);

// Memoizes predictions by exact segment text. Thread-safe.
class CachingOracle : public Oracle {
 public:
  explicit CachingOracle(Oracle& inner) : inner_(inner) {}

  std::vector<Prediction> predict(std::span<const OracleInput> batch) override;
  std::size_t max_batch() const override { return inner_.max_batch(); }

  std::size_t hits() const;
  // Inputs forwarded to the wrapped oracle.
  std::size_t misses() const;

 private:
  static std::string key(const OracleInput& input);

  Oracle& inner_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, Prediction> cache_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace gramattack

#endif  // GRAMATTACK_ORACLE_H_
