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
#ifndef GRAMATTACK_ANALYSIS_H_
#define GRAMATTACK_ANALYSIS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gramattack/attack.h"
#include "gramattack/oracle.h"
#include "gramattack/resources.h"
#include "gramattack/text_model.h"

namespace gramattack {

struct SweepPoint {
  double fraction = 0.0;
  std::vector<AttackResult> results;  // attacked instances, input order
  CampaignSummary summary;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // one per fraction, ascending
  std::vector<std::string> skipped;
  std::vector<InstanceFailure> failures;
};

// Greedy campaigns at each budget fraction. Importance is computed once per
// instance and shared. Throws ValidationError on an empty or unsorted list.
SweepResult budget_sweep(std::span<const TaskInstance> dataset, Oracle& oracle,
                         const LanguageResources& res, std::span<const double> fractions,
                         const AttackConfig& cfg, std::size_t jobs = 1);

// "fraction,attacked,successes,success_rate,mean_modified_fraction" rows.
std::string sweep_csv(const SweepResult& sweep);

inline constexpr int kClozeWindow = 6;

// Mean likelihood drop per (error type, offset) with offsets -6..-1, 1..6.
class ClozeMatrix {
 public:
  static constexpr std::size_t kColumns = 2 * kClozeWindow;

  // Throws std::out_of_range for offset 0 or |offset| > 6.
  void add(ErrorType type, int offset, double drop);

  std::size_t count(ErrorType type, int offset) const;
  // nullopt when no pair contributed.
  std::optional<double> mean(ErrorType type, int offset) const;
  std::size_t total_count() const;

  static std::size_t column(int offset);
  static int offset_of(std::size_t column);

 private:
  std::array<std::array<std::vector<double>, kColumns>, kNumErrorTypes> drops_{};
};

struct ClozeResult {
  ClozeMatrix matrix;
  std::size_t usable_pairs = 0;
  std::vector<std::string> warnings;
};

// For each single-token substitution pair and each context position j within
// six tokens of the edit: drop = P(good_j | good, j masked) - P(bad_j | bad,
// j masked). Other pairs are skipped with a warning.
ClozeResult cloze_drop(std::span<const MinimalEditPair> pairs, MaskFillOracle& mlm);

// Rows are error types, columns offsets -6..6 without 0. A cell reads
// "<mean> (<count>)", or "NA" when empty.
std::string cloze_table_tsv(const ClozeMatrix& matrix);

struct AugmentResult {
  // Originals verbatim and in order, then one perturbed copy per selected
  // instance (id + "#adv", gold labels kept).
  std::vector<TaskInstance> records;
  std::size_t selected = 0;
  std::size_t flipped = 0;
  std::vector<InstanceFailure> failures;
};

// Greedy-attacks ceil(proportion * N) instances picked by a shuffle seeded
// with cfg.seed. Failed searches still contribute their best-effort text.
AugmentResult augment(std::span<const TaskInstance> train, Oracle& oracle,
                      const LanguageResources& res, double proportion,
                      const AttackConfig& cfg, std::size_t jobs = 1);

// Number of instances augment() selects.
std::size_t augment_count(std::size_t n, double proportion);

}  // namespace gramattack

#endif  // GRAMATTACK_ANALYSIS_H_
