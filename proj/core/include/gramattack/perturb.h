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
#ifndef GRAMATTACK_PERTURB_H_
#define GRAMATTACK_PERTURB_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramattack/confusion.h"
#include "gramattack/error_type.h"
#include "gramattack/morphology.h"
#include "gramattack/random.h"
#include "gramattack/resources.h"
#include "gramattack/text_model.h"

namespace gramattack {

enum class OpKind { kSubstitute, kInsert, kDelete, kSwap };

std::string_view to_string(OpKind kind);
std::optional<OpKind> parse_op_kind(std::string_view name);

struct Operation {
  OpKind kind = OpKind::kSubstitute;
  // Token index. For Insert, the gap index: the new token lands before the
  // token currently at `position` (position == size appends).
  std::size_t position = 0;
  std::string replacement;  // Substitute and Insert
  std::size_t swap_with = 0;  // Swap
  ErrorType error_type = ErrorType::kArtOrDet;
  // Surface expected at `position`; apply() rejects the op when it differs.
  // Empty for Insert.
  std::string original;
  // Relative sampling weight among the ops of one slot (confusion weight for
  // lexical types, 1 otherwise).
  double weight = 1.0;

  bool operator==(const Operation&) const = default;
};

// Substitute < Insert < Delete < Swap, then position, then replacement.
bool canonical_less(const Operation& a, const Operation& b);

// Token indices the op occupies. Insert at gap g occupies token g, so an
// insertion and an edit of the following token never coexist.
std::vector<std::size_t> edit_region(const Operation& op);

bool regions_overlap(const Operation& a, const Operation& b);

// Ops grouped by the token that owns them; insertions are owned by the token
// after the gap. Each list is in canonical order.
struct OperationSet {
  std::vector<std::vector<Operation>> by_token;

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  // Concatenation of by_token.
  std::vector<Operation> all() const;
};

OperationSet build_operation_sets(const TaggedSentence& sentence,
                                  const ConfusionMap& sets,
                                  const InflectionLexicon& lex);

// Applies one op. Throws ValidationError when the op does not fit the
// sentence (stale index or surface) and std::logic_error when it touches a
// frozen token. A substituted or inserted token is re-tagged with `pos`.
TaggedSentence apply(const TaggedSentence& sentence, const Operation& op,
                     const PosLexicon& pos);

// Applies ops that are all expressed against `sentence` and occupy disjoint
// regions. Throws ValidationError on overlap or when the result is empty.
TaggedSentence apply_all(const TaggedSentence& sentence,
                         std::span<const Operation> ops, const PosLexicon& pos);

// Surfaces after apply_all; may be empty.
std::vector<std::string> render(const TaggedSentence& sentence,
                                std::span<const Operation> ops);

// For each token after apply_all: the original index it came from, or -1
// for an inserted token.
std::vector<std::ptrdiff_t> source_indices(std::size_t n, std::span<const Operation> ops);

struct Perturbation {
  TaggedSentence sentence;
  // Each op is expressed against the sentence produced by the ops before it.
  std::vector<Operation> ops;
  // Indices in `sentence` of edited tokens. A deletion is marked on the token
  // that now follows it (or precedes it at the sentence end).
  std::vector<std::size_t> error_positions;
};

// n_errors rounds of: sample a type, pick a uniformly random admissible slot,
// sample the replacement by weight. Rounds never stack on an edited token.
// Throws ValidationError("sentence admits no perturbation") when the first
// round finds no applicable type; later dry rounds end the loop early.
Perturbation probabilistic_transform(const TaggedSentence& sentence,
                                     const ErrorDistribution& dist,
                                     const LanguageResources& res,
                                     std::size_t n_errors, Rng& rng);

inline constexpr std::size_t kProbeMinTokens = 10;
inline constexpr std::size_t kProbeMaxTokens = 60;
inline constexpr std::string_view kAcceptable = "acceptable";
inline constexpr std::string_view kUnacceptable = "unacceptable";

// max(1, round(3% of length)).
std::size_t probe_error_count(std::size_t length);

struct ProbeItem {
  std::size_t source_index = 0;  // index into the input list
  TaggedSentence sentence;
  std::string label;
  std::vector<std::size_t> error_positions;
  std::vector<Operation> ops;
};

struct ProbeDataset {
  std::vector<ProbeItem> items;  // input order, out-of-range lengths removed
  std::vector<std::string> warnings;
};

ProbeDataset build_probe_dataset(std::span<const TaggedSentence> clean,
                                 const LanguageResources& res,
                                 ErrorType target, Rng& rng);

}  // namespace gramattack

#endif  // GRAMATTACK_PERTURB_H_
