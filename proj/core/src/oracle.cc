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
#include "gramattack/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gramattack/error.h"
#include "gramattack/text_util.h"

namespace gramattack {
namespace {

std::vector<std::string> labels_of(const LabelProbs& probs) {
  std::vector<std::string> out;
  for (const auto& [label, p] : probs) out.push_back(label);
  return out;
}

void schema_error(const std::string& what) {
  throw OracleError("oracle response schema violation: " + what, false);
}

}  // namespace

const std::string& argmax(const LabelProbs& probs) {
  if (probs.empty()) throw OracleError("argmax of an empty distribution", false);
  auto best = probs.begin();
  for (auto it = probs.begin(); it != probs.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

void validate_distribution(const LabelProbs& probs) {
  if (probs.empty()) schema_error("empty distribution");
  double sum = 0.0;
  for (const auto& [label, p] : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0 + kProbTolerance) {
      schema_error("probability of '" + label + "' is " + std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbTolerance) {
    schema_error("probabilities sum to " + std::to_string(sum));
  }
}

void validate_predictions(std::span<const OracleInput> batch,
                          std::span<const Prediction> predictions,
                          const std::vector<std::string>* expected_labels) {
  if (predictions.size() != batch.size()) {
    schema_error("expected " + std::to_string(batch.size()) + " rows, got " +
                 std::to_string(predictions.size()));
  }
  std::optional<std::vector<std::string>> labels;
  if (expected_labels != nullptr && !expected_labels->empty()) labels = *expected_labels;
  const auto check = [&](const LabelProbs& row) {
    validate_distribution(row);
    std::vector<std::string> got = labels_of(row);
    if (!labels) {
      labels = std::move(got);
    } else if (got != *labels) {
      schema_error("inconsistent label sets across rows");
    }
  };
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const Prediction& p = predictions[i];
    if (p.tagging()) {
      const std::size_t n = split_whitespace(batch[i].text_a).size();
      if (p.token_probs.size() != n) {
        schema_error("row " + std::to_string(i) + " has " +
                     std::to_string(p.token_probs.size()) + " token rows for " +
                     std::to_string(n) + " tokens");
      }
      for (const LabelProbs& row : p.token_probs) check(row);
    } else {
      check(p.probs);
    }
  }
}

std::vector<Prediction> predict_all(Oracle& oracle, std::span<const OracleInput> batch) {
  if (batch.empty()) throw OracleError("empty predict batch", false);
  const std::size_t step = std::max<std::size_t>(1, oracle.max_batch());
  std::vector<Prediction> out;
  out.reserve(batch.size());
  for (std::size_t lo = 0; lo < batch.size(); lo += step) {
    const std::size_t n = std::min(step, batch.size() - lo);
    std::vector<Prediction> part = oracle.predict(batch.subspan(lo, n));
    if (part.size() != n) schema_error("oracle returned the wrong number of rows");
    for (Prediction& p : part) out.push_back(std::move(p));
  }
  return out;
}

std::string CachingOracle::key(const OracleInput& input) {
  std::string k = input.text_a;
  if (input.text_b) {
    k += '\x1f';
    k += *input.text_b;
  }
  return k;
}

std::vector<Prediction> CachingOracle::predict(std::span<const OracleInput> batch) {
  if (batch.empty()) throw OracleError("empty predict batch", false);
  std::vector<std::optional<Prediction>> rows(batch.size());
  std::vector<OracleInput> todo;
  std::vector<std::string> todo_keys;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      std::string k = key(batch[i]);
      if (auto it = cache_.find(k); it != cache_.end()) {
        rows[i] = it->second;
        ++hits_;
      } else if (std::find(todo_keys.begin(), todo_keys.end(), k) == todo_keys.end()) {
        todo.push_back(batch[i]);
        todo_keys.push_back(std::move(k));
      } else {
        ++hits_;  // repeated within this batch
      }
    }
  }
  if (!todo.empty()) {
    std::vector<Prediction> fresh = predict_all(inner_, todo);
    std::lock_guard<std::mutex> lock(mu_);
    misses_ += todo.size();
    for (std::size_t j = 0; j < todo.size(); ++j) cache_[todo_keys[j]] = std::move(fresh[j]);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!rows[i]) rows[i] = cache_.at(key(batch[i]));
    }
  }
  std::vector<Prediction> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

std::size_t CachingOracle::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::size_t CachingOracle::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

}  // namespace gramattack
