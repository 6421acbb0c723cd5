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
#ifndef GRAMATTACK_CONFUSION_H_
#define GRAMATTACK_CONFUSION_H_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramattack/error_type.h"
#include "gramattack/random.h"
#include "gramattack/text_model.h"

namespace gramattack {

// Deletion (t -> eps) and insertion (eps -> t) symbol, spelled as in files.
inline constexpr std::string_view kEpsilon = "<eps>";

// Candidate replacements for one error type. For the lexical types
// (ArtOrDet, Prep, Trans) members are lowercase tokens; for the others they
// are category labels and substitutions come from the
// morphology module instead.
class ConfusionSet {
 public:
  using WeightTable = std::map<std::string, std::map<std::string, double>>;

  ConfusionSet() = default;
  ConfusionSet(ErrorType type, std::vector<std::string> members,
               WeightTable weights = {});

  ErrorType type() const { return type_; }
  const std::vector<std::string>& members() const { return members_; }
  // Learned weights: from_token -> (to_token -> probability).
  const WeightTable& weights() const { return weights_; }

  bool has_member(std::string_view lower_token) const;

  // Throws ValidationError unless every learned row is a distribution
  // (non-negative, sums to 1 +- 1e-9) and epsilon is only used by lexical
  // types.
  void validate() const;

  bool operator==(const ConfusionSet&) const = default;

 private:
  ErrorType type_ = ErrorType::kArtOrDet;
  std::vector<std::string> members_;
  WeightTable weights_;
};

using ConfusionMap = std::map<ErrorType, ConfusionSet>;

struct WeightedToken {
  std::string token;
  double weight = 0.0;

  bool operator==(const WeightedToken&) const = default;
};

// Learned outgoing weights of from_token if any; otherwise uniform over the
// other members when from_token is a member; otherwise empty. Matching is
// case-insensitive. Never returns from_token itself or zero weights.
// Learned rows are ordered by descending weight, then token.
std::vector<WeightedToken> candidates(const ConfusionSet& set,
                                      std::string_view from_token);

// Built-in memberships with uniform weights.
ConfusionMap default_sets();

// Learned weights win per from_token; members are unioned.
ConfusionMap merge_sets(const ConfusionMap& learned, const ConfusionMap& base);

// Probability of each error type, indexed by index_of(ErrorType).
struct ErrorDistribution {
  std::array<double, kNumErrorTypes> probs{};

  double operator[](ErrorType type) const { return probs[index_of(type)]; }
  double& operator[](ErrorType type) { return probs[index_of(type)]; }

  static ErrorDistribution uniform();
  static ErrorDistribution point(ErrorType type);

  // Throws ValidationError unless probs are >= 0 and sum to 1 +- 1e-9.
  void validate() const;

  bool operator==(const ErrorDistribution&) const = default;
};

struct Estimate {
  ConfusionMap sets;  // all eight types; non-lexical ones are the defaults
  ErrorDistribution distribution;
  std::size_t supported_edits = 0;
};

// Counts correct -> erroneous replacements (good-side token to bad-side
// token) per lexical error type and normalizes per from_token. Deletions are
// t -> eps, insertions eps -> t. Every edit with a supported tag counts
// toward the distribution; only single-token lexical edits feed weights.
// Throws ValidationError("no supported edits in corpus") when nothing is
// usable.
Estimate estimate(std::span<const MinimalEditPair> pairs);

// Throws ValidationError when every probability is zero.
ErrorType sample_error_type(const ErrorDistribution& dist, Rng& rng);

struct ConfusionFile {
  ErrorDistribution distribution;
  ConfusionMap sets;
};

std::string confusion_file_json(const ConfusionFile& file);
void write_confusion_file(const std::filesystem::path& path,
                          const ConfusionFile& file);
ConfusionFile parse_confusion_file(std::string_view text);
ConfusionFile load_confusion_file(const std::filesystem::path& path);

}  // namespace gramattack

#endif  // GRAMATTACK_CONFUSION_H_
