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
#ifndef GRAMATTACK_ATTACK_H_
#define GRAMATTACK_ATTACK_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramattack/error_type.h"
#include "gramattack/oracle.h"
#include "gramattack/perturb.h"
#include "gramattack/resources.h"
#include "gramattack/text_model.h"

namespace gramattack {

enum class Algorithm { kGreedy, kBeam, kGenetic };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct AttackConfig {
  double budget_fraction = 0.15;
  std::size_t beam_size = 5;
  std::size_t population = 60;
  double generation_fraction = 0.23;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kGreedy;
  // Beam entries may pass over a token without editing it.
  bool beam_allow_skip = true;

  // Throws ValidationError on out-of-range fields.
  void validate() const;
};

// max(1, floor(fraction * n)).
std::size_t budget(std::size_t n, double fraction);

// max(1, round(fraction * n)).
std::size_t generation_count(std::size_t n, double fraction);

struct GoldScore {
  double p_gold = 0.0;
  // Some label is strictly more probable than gold. For tagging: some
  // surviving non-frozen token has such a label.
  bool flipped = false;
};

// Scores edit streams of one instance against the oracle. Ops are expressed
// against the original mutable segment. Every stream evaluated counts as one
// query, cached or not, so counts are reproducible.
class InstanceScorer {
 public:
  InstanceScorer(const TaskInstance& instance, Oracle& oracle);

  GoldScore evaluate(std::span<const Operation> ops);
  std::vector<GoldScore> evaluate_batch(const std::vector<std::vector<Operation>>& streams);

  // Oracle input for the instance with `ops` applied.
  OracleInput input_for(std::span<const Operation> ops) const;
  GoldScore score(std::span<const Operation> ops, const Prediction& prediction) const;

  std::size_t queries() const { return queries_; }
  const TaskInstance& instance() const { return instance_; }

 private:
  const TaskInstance& instance_;
  Oracle& oracle_;
  std::size_t queries_ = 0;
};

struct Importance {
  double p_original = 0.0;
  bool flipped_original = false;
  // Non-frozen token indices, most important first; ties by index.
  std::vector<std::size_t> order;
  // Drop in gold probability per token index (0 for frozen tokens).
  std::vector<double> drop;
  std::size_t queries = 0;
};

// Drop of p_gold when each token is deleted. A deletion that empties the
// segment is scored against the empty text; if the oracle rejects that, the
// drop is 0. Throws ValidationError("nothing mutable") when every token is
// frozen.
Importance token_importance(const TaskInstance& instance, Oracle& oracle);

struct AttackResult {
  explicit AttackResult(const TaskInstance& instance);

  std::string id;
  TaggedSentence original;
  TaggedSentence adversarial;
  bool success = false;
  // Against the original sentence; empty on failure.
  std::vector<Operation> applied_ops;
  // The search's best stream when it failed to flip (greedy path, top beam
  // entry, elite). Kept for augmentation.
  std::vector<Operation> best_effort_ops;
  double modified_fraction = 0.0;
  std::size_t oracle_queries = 0;
  double initial_gold_prob = 0.0;
  // p_gold of `adversarial`; the original's on failure.
  double final_gold_prob = 0.0;
  double best_effort_gold_prob = 0.0;
  std::size_t budget = 0;
  // p_gold after each op of applied_ops (or best_effort_ops on failure).
  std::vector<double> step_gold_probs;
  // Genetic only: lowest p_gold in each generation.
  std::vector<double> generation_best;
};

AttackResult greedy_attack(const TaskInstance& instance, Oracle& oracle,
                           const LanguageResources& res, const AttackConfig& cfg);
// Reuses an importance ranking computed earlier for the same instance.
AttackResult greedy_attack(const TaskInstance& instance, Oracle& oracle,
                           const LanguageResources& res, const AttackConfig& cfg,
                           const Importance& importance);
AttackResult beam_attack(const TaskInstance& instance, Oracle& oracle,
                         const LanguageResources& res, const AttackConfig& cfg);
AttackResult genetic_attack(const TaskInstance& instance, Oracle& oracle,
                            const LanguageResources& res, const AttackConfig& cfg);

// Dispatches on cfg.algorithm.
AttackResult run_attack(const TaskInstance& instance, Oracle& oracle,
                        const LanguageResources& res, const AttackConfig& cfg);

struct CampaignSummary {
  std::size_t instances = 0;
  std::size_t attacked = 0;
  std::size_t skipped_incorrect = 0;
  std::size_t errors = 0;
  std::size_t successes = 0;
  std::optional<double> success_rate;            // nullopt when nothing attacked
  std::optional<double> mean_modified_fraction;  // over successes
  std::array<std::size_t, kNumErrorTypes> harm_counts{};
  std::size_t queries = 0;
};

struct InstanceFailure {
  std::string id;
  std::string message;
};

struct Campaign {
  std::vector<AttackResult> results;  // attacked instances, input order
  std::vector<std::string> skipped;   // ids misclassified before the attack
  std::vector<InstanceFailure> failures;
  CampaignSummary summary;
};

// Recomputes success rate, modified fraction, harm counts and query totals
// from `results`; the three counters are taken as given.
CampaignSummary summarize(std::span<const AttackResult> results, std::size_t instances,
                          std::size_t skipped_incorrect, std::size_t errors);

// Attacks every instance the oracle already gets right. Instance i uses seed
// derive_seed(cfg.seed, i), so results do not depend on `jobs`.
Campaign run_campaign(std::span<const TaskInstance> dataset, Oracle& oracle,
                      const LanguageResources& res, const AttackConfig& cfg,
                      std::size_t jobs = 1);

}  // namespace gramattack

#endif  // GRAMATTACK_ATTACK_H_
