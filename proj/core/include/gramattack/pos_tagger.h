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
#ifndef GRAMATTACK_POS_TAGGER_H_
#define GRAMATTACK_POS_TAGGER_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gramattack {

// Coarse tagset. PART marks participles used adjectivally ("broken").
enum class Pos {
  kNoun,
  kVerb,
  kAdj,
  kAdv,
  kDet,
  kPrep,
  kConj,
  kModal,
  kPart,
  kOther,
};

std::string_view to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view name);

// Closed-class word lists plus open-class stems, and ordered suffix rules.
// Words are stored lowercase.
class PosLexicon {
 public:
  PosLexicon() = default;

  // Parses "word<TAB>TAG" and "suffix<TAB>TAG" text. Blank lines and lines
  // starting with '#' are ignored. Throws ValidationError on a bad tag.
  static PosLexicon parse(std::string_view words_tsv,
                          std::string_view suffixes_tsv);
  static PosLexicon load(const std::filesystem::path& words_file,
                         const std::filesystem::path& suffixes_file);

  void add_word(std::string_view word, Pos pos);
  void add_suffix(std::string_view suffix, Pos pos);

  std::optional<Pos> lookup(std::string_view lower_word) const;

  // Suffix rules, longest suffix first.
  const std::vector<std::pair<std::string, Pos>>& suffix_rules() const {
    return suffixes_;
  }

  // All words carrying `pos`, sorted.
  std::vector<std::string> words_with(Pos pos) const;

  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, Pos> words_;
  std::vector<std::pair<std::string, Pos>> suffixes_;
};

// Tags one surface form: lexicon hit, then inflected form of a known stem
// (-s/-es/-ies, -ed, -ing, -er/-est, -ly), then suffix rules, then OTHER.
Pos tag_word(std::string_view surface, const PosLexicon& lexicon);

std::vector<Pos> naive_pos_tag(std::span<const std::string> tokens,
                               const PosLexicon& lexicon);

}  // namespace gramattack

#endif  // GRAMATTACK_POS_TAGGER_H_
