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
#include "gramattack/confusion.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gramattack/error.h"
#include "gramattack/text_util.h"
#include "json.hpp"

namespace gramattack {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kSumTolerance = 1e-9;

std::string normalize_token(std::string_view token) {
  if (token == kEpsilon) return std::string(kEpsilon);
  return to_lower(token);
}

}  // namespace

ConfusionSet::ConfusionSet(ErrorType type, std::vector<std::string> members,
                           WeightTable weights)
    : type_(type), members_(std::move(members)), weights_(std::move(weights)) {}

bool ConfusionSet::has_member(std::string_view lower_token) const {
  return std::find(members_.begin(), members_.end(), lower_token) !=
         members_.end();
}

void ConfusionSet::validate() const {
  const bool lexical = is_lexical(type_);
  if (!lexical && has_member(kEpsilon)) {
    throw ValidationError(std::string(to_string(type_)) +
                          ": epsilon is only allowed for ArtOrDet, Prep, Trans");
  }
  for (const auto& [from, row] : weights_) {
    if (!lexical) {
      throw ValidationError(std::string(to_string(type_)) +
                            ": weights are only learned for lexical types");
    }
    double sum = 0.0;
    for (const auto& [to, w] : row) {
      if (!(w >= 0.0)) {
        throw ValidationError("negative weight " + from + " -> " + to);
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ValidationError("weights of '" + from + "' do not sum to 1");
    }
  }
}

std::vector<WeightedToken> candidates(const ConfusionSet& set,
                                      std::string_view from_token) {
  std::vector<WeightedToken> out;
  if (!is_lexical(set.type())) return out;
  const std::string from = normalize_token(from_token);
  if (const auto it = set.weights().find(from); it != set.weights().end()) {
    for (const auto& [to, w] : it->second) {
      if (to != from && w > 0.0) out.push_back({to, w});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const WeightedToken& a, const WeightedToken& b) {
                       return a.weight > b.weight;
                     });
    return out;
  }
  if (!set.has_member(from)) return out;
  const std::size_t others = set.members().size() - 1;
  if (others == 0) return out;
  for (const std::string& m : set.members()) {
    if (m == from) continue;
    out.push_back({m, 1.0 / static_cast<double>(others)});
  }
  return out;
}

ConfusionMap default_sets() {
  const std::string eps(kEpsilon);
  ConfusionMap sets;
  sets[ErrorType::kArtOrDet] =
      ConfusionSet(ErrorType::kArtOrDet, {"a", "an", "the", eps});
  sets[ErrorType::kPrep] = ConfusionSet(
      ErrorType::kPrep,
      {"on",     "in",     "at",      "from",       "for",    "under",
       "over",   "with",   "into",    "during",     "until",  "against",
       "among",  "throughout", "to",  "by",         "about",  "like",
       "before", "across", "behind",  "but",        "out",    "up",
       "after",  "since",  "down",    "off",        "of",     eps});
  sets[ErrorType::kTrans] = ConfusionSet(
      ErrorType::kTrans,
      {"and", "but", "so", "however", "as", "that", "thus", "also",
       "because", "therefore", "if", "although", "which", "where",
       "moreover", "besides", "of", eps});
  sets[ErrorType::kNn] = ConfusionSet(ErrorType::kNn, {"SG", "PL"});
  sets[ErrorType::kSVA] = ConfusionSet(ErrorType::kSVA, {"3SG", "not 3SG"});
  sets[ErrorType::kVform] = ConfusionSet(
      ErrorType::kVform, {"Present", "Past", "Progressive", "Perfect"});
  sets[ErrorType::kWchoice] = ConfusionSet(
      ErrorType::kWchoice, {"Ten synonyms from WordNet Synsets"});
  sets[ErrorType::kWorder] = ConfusionSet(
      ErrorType::kWorder, {"Adverb w/ Adjective", "Participle", "Modal"});
  return sets;
}

ConfusionMap merge_sets(const ConfusionMap& learned, const ConfusionMap& base) {
  ConfusionMap merged;
  for (ErrorType type : kAllErrorTypes) {
    const auto b = base.find(type);
    const auto l = learned.find(type);
    if (b == base.end() && l == learned.end()) continue;
    std::vector<std::string> members;
    ConfusionSet::WeightTable weights;
    if (b != base.end()) {
      members = b->second.members();
      weights = b->second.weights();
    }
    if (l != learned.end()) {
      for (const std::string& m : l->second.members()) {
        if (std::find(members.begin(), members.end(), m) == members.end()) {
          members.push_back(m);
        }
      }
      for (const auto& [from, row] : l->second.weights()) weights[from] = row;
    }
    merged[type] = ConfusionSet(type, std::move(members), std::move(weights));
  }
  return merged;
}

ErrorDistribution ErrorDistribution::uniform() {
  ErrorDistribution d;
  d.probs.fill(1.0 / static_cast<double>(kNumErrorTypes));
  return d;
}

ErrorDistribution ErrorDistribution::point(ErrorType type) {
  ErrorDistribution d;
  d[type] = 1.0;
  return d;
}

void ErrorDistribution::validate() const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("negative error-type probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ValidationError("error-type distribution does not sum to 1");
  }
}

Estimate estimate(std::span<const MinimalEditPair> pairs) {
  std::array<std::size_t, kNumErrorTypes> type_counts{};
  std::map<ErrorType, std::map<std::string, std::map<std::string, std::size_t>>>
      counts;
  std::size_t supported = 0;

  for (const MinimalEditPair& pair : pairs) {
    for (const Edit& edit : pair.edits) {
      if (!edit.tag) continue;
      ++supported;
      ++type_counts[index_of(*edit.tag)];
      if (!is_lexical(*edit.tag)) continue;
      if (edit.bad_span.length() > 1 || edit.good_span.length() > 1) continue;
      const auto side = [](const TaggedSentence& s, const EditSpan& span) {
        return span.length() == 0 ? std::string(kEpsilon)
                                  : to_lower(split_surface(s[span.lo].surface).core);
      };
      const std::string from = side(pair.good, edit.good_span);
      const std::string to = side(pair.bad, edit.bad_span);
      if (from.empty() || to.empty() || from == to) continue;
      ++counts[*edit.tag][from][to];
    }
  }
  if (supported == 0) throw ValidationError("no supported edits in corpus");

  Estimate result;
  for (ErrorType type : kAllErrorTypes) {
    result.distribution[type] = static_cast<double>(type_counts[index_of(type)]) /
                                static_cast<double>(supported);
  }

  ConfusionMap learned;
  for (const auto& [type, rows] : counts) {
    std::vector<std::string> members;
    ConfusionSet::WeightTable weights;
    const auto remember = [&members](const std::string& token) {
      if (std::find(members.begin(), members.end(), token) == members.end()) {
        members.push_back(token);
      }
    };
    for (const auto& [from, row] : rows) {
      remember(from);
      std::size_t total = 0;
      for (const auto& [to, n] : row) total += n;
      for (const auto& [to, n] : row) {
        remember(to);
        weights[from][to] = static_cast<double>(n) / static_cast<double>(total);
      }
    }
    learned[type] = ConfusionSet(type, std::move(members), std::move(weights));
  }
  // Non-lexical rows keep their table definitions; morphology drives them.
  ConfusionMap defaults = default_sets();
  for (ErrorType type : kAllErrorTypes) {
    if (!is_lexical(type)) learned[type] = defaults[type];
  }
  result.sets = std::move(learned);
  result.supported_edits = supported;
  return result;
}

ErrorType sample_error_type(const ErrorDistribution& dist, Rng& rng) {
  double total = 0.0;
  for (double p : dist.probs) {
    if (p < 0.0) throw ValidationError("negative error-type probability");
    total += p;
  }
  if (!(total > 0.0)) throw ValidationError("error-type distribution is all zero");
  return kAllErrorTypes[sample_weighted(rng, dist.probs)];
}

std::string confusion_file_json(const ConfusionFile& file) {
  ordered_json root;
  ordered_json dist = ordered_json::object();
  for (ErrorType type : kAllErrorTypes) {
    dist[std::string(to_string(type))] = file.distribution[type];
  }
  root["distribution"] = dist;
  ordered_json sets = ordered_json::object();
  for (ErrorType type : kAllErrorTypes) {
    const auto it = file.sets.find(type);
    if (it == file.sets.end()) continue;
    ordered_json entry;
    entry["members"] = it->second.members();
    ordered_json weights = ordered_json::object();
    for (const auto& [from, row] : it->second.weights()) {
      ordered_json r = ordered_json::object();
      for (const auto& [to, w] : row) r[to] = w;
      weights[from] = r;
    }
    entry["weights"] = weights;
    sets[std::string(to_string(type))] = entry;
  }
  root["sets"] = sets;
  return root.dump(2) + "\n";
}

void write_confusion_file(const std::filesystem::path& path,
                          const ConfusionFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << confusion_file_json(file);
}

ConfusionFile parse_confusion_file(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("confusion file: ") + e.what());
  }
  ConfusionFile file;
  try {
    if (root.contains("distribution")) {
      for (const auto& [name, p] : root.at("distribution").items()) {
        const auto type = parse_error_type(name);
        if (!type) throw ValidationError("confusion file: unknown type " + name);
        file.distribution[*type] = p.get<double>();
      }
      file.distribution.validate();
    }
    if (root.contains("sets")) {
      for (const auto& [name, entry] : root.at("sets").items()) {
        const auto type = parse_error_type(name);
        if (!type) throw ValidationError("confusion file: unknown type " + name);
        std::vector<std::string> members;
        for (const auto& m : entry.at("members")) {
          // Non-lexical members are descriptive labels; keep them verbatim.
          const std::string member = m.get<std::string>();
          members.push_back(is_lexical(*type) ? normalize_token(member) : member);
        }
        ConfusionSet::WeightTable weights;
        if (entry.contains("weights")) {
          for (const auto& [from, row] : entry.at("weights").items()) {
            for (const auto& [to, w] : row.items()) {
              weights[normalize_token(from)][normalize_token(to)] = w.get<double>();
            }
          }
        }
        ConfusionSet set(*type, std::move(members), std::move(weights));
        set.validate();
        file.sets[*type] = std::move(set);
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("confusion file: ") + e.what());
  }
  return file;
}

ConfusionFile load_confusion_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open confusion file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_confusion_file(buffer.str());
}

}  // namespace gramattack
