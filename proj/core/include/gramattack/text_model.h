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
#ifndef GRAMATTACK_TEXT_MODEL_H_
#define GRAMATTACK_TEXT_MODEL_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string_view>
#include <span>
#include <string>
#include <vector>

#include "gramattack/error_type.h"
#include "gramattack/pos_tagger.h"

namespace gramattack {

struct Token {
  std::string surface;
  Pos pos = Pos::kOther;
  std::size_t index = 0;

  bool operator==(const Token&) const = default;
};

// A non-empty token sequence with a mask of indices that must not be edited.
// Token indices are assigned by the constructor and are always 0..n-1.
class TaggedSentence {
 public:
  // Throws ValidationError when tokens is empty, a surface is empty or
  // contains whitespace, or a frozen index is out of range.
  TaggedSentence(std::vector<Token> tokens, std::set<std::size_t> frozen = {});

  // Tags each surface with naive_pos_tag.
  static TaggedSentence from_surfaces(const std::vector<std::string>& surfaces,
                                      const PosLexicon& lexicon,
                                      std::set<std::size_t> frozen = {});
  // Splits on whitespace and tags.
  static TaggedSentence from_text(std::string_view text,
                                  const PosLexicon& lexicon,
                                  std::set<std::size_t> frozen = {});

  std::size_t size() const { return tokens_.size(); }
  const std::vector<Token>& tokens() const { return tokens_; }
  const Token& operator[](std::size_t i) const { return tokens_.at(i); }
  const std::set<std::size_t>& frozen() const { return frozen_; }
  bool is_frozen(std::size_t i) const { return frozen_.count(i) != 0; }

  std::vector<std::string> surfaces() const;
  std::string text() const;

  bool operator==(const TaggedSentence&) const = default;

 private:
  std::vector<Token> tokens_;
  std::set<std::size_t> frozen_;
};

enum class TaskKind { kSingle, kPair, kTagging };

struct TaskInstance {
  std::string id;
  std::vector<TaggedSentence> segments;  // 1 or 2
  std::size_t mutable_segment = 0;
  // Opaque categorical label for single/pair tasks.
  std::string gold_label;
  // Per-token labels of the mutable segment for tagging tasks.
  std::vector<std::string> token_labels;
  TaskKind kind = TaskKind::kSingle;

  const TaggedSentence& mutable_sentence() const {
    return segments.at(mutable_segment);
  }

  // Throws ValidationError when the structural invariants do not hold.
  void validate() const;

  bool operator==(const TaskInstance&) const = default;
};

struct RecordIssue {
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

template <typename T>
struct LoadResult {
  std::vector<T> items;
  std::vector<RecordIssue> errors;
  std::vector<RecordIssue> warnings;

  bool ok() const { return errors.empty(); }
};

enum class DatasetFormat { kJsonl, kTsv };

std::optional<DatasetFormat> parse_dataset_format(std::string_view name);

// JSONL records: {"id", "text" | "textA"/"textB", "label", "pos"?, "frozen"?,
// "mutable"?}. A list-valued label makes a tagging instance. Pair instances
// default to mutable segment 1.
// TSV rows: id<TAB>label<TAB>text[<TAB>textB].
// Malformed records are reported per line and skipped.
LoadResult<TaskInstance> parse_dataset(std::istream& in, DatasetFormat format,
                                       const PosLexicon& lexicon);
LoadResult<TaskInstance> load_dataset(const std::filesystem::path& path,
                                      DatasetFormat format,
                                      const PosLexicon& lexicon);

// One JSONL record. POS tags are always written so a reload is exact.
// When error_positions is given it is emitted as "error_positions".
std::string dataset_record_json(
    const TaskInstance& instance,
    const std::vector<std::size_t>* error_positions = nullptr);

void write_dataset_jsonl(std::ostream& out,
                         std::span<const TaskInstance> instances);

struct EditSpan {
  std::size_t lo = 0;  // half-open [lo, hi)
  std::size_t hi = 0;

  std::size_t length() const { return hi - lo; }
  bool operator==(const EditSpan&) const = default;
};

struct Edit {
  EditSpan bad_span;
  EditSpan good_span;
  std::optional<ErrorType> tag;  // nullopt: a tag outside the eight types

  bool operator==(const Edit&) const = default;
};

struct MinimalEditPair {
  std::string id;
  TaggedSentence bad;
  TaggedSentence good;
  std::vector<Edit> edits;
};

// Rewrites bad into good using the listed edits (token surfaces only).
std::vector<std::string> apply_edits(const MinimalEditPair& pair);

// Records: {"id", "bad": [..], "good": [..], "edits": [{"bad_span": [lo, hi],
// "good_span": [lo, hi], "tag"}]}. Each pair is verified: applying the edits
// to bad must reproduce good, and every edit must change text. Unknown tags
// are kept as OTHER with a warning.
LoadResult<MinimalEditPair> parse_minimal_pairs(std::istream& in,
                                                const PosLexicon& lexicon);
LoadResult<MinimalEditPair> load_minimal_pairs(
    const std::filesystem::path& path, const PosLexicon& lexicon);

// Throws std::logic_error if any index in `touched` is frozen in `sentence`.
void assert_not_frozen(const TaggedSentence& sentence,
                       std::span<const std::size_t> touched);

}  // namespace gramattack

#endif  // GRAMATTACK_TEXT_MODEL_H_
