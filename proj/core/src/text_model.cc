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
#include "gramattack/text_model.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "gramattack/error.h"
#include "gramattack/text_util.h"
#include "json.hpp"

namespace gramattack {

using nlohmann::json;
using nlohmann::ordered_json;

TaggedSentence::TaggedSentence(std::vector<Token> tokens,
                               std::set<std::size_t> frozen)
    : tokens_(std::move(tokens)), frozen_(std::move(frozen)) {
  if (tokens_.empty()) throw ValidationError("sentence has no tokens");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const std::string& s = tokens_[i].surface;
    if (s.empty()) throw ValidationError("empty token surface");
    if (std::any_of(s.begin(), s.end(), [](char c) {
          return std::isspace(static_cast<unsigned char>(c)) != 0;
        })) {
      throw ValidationError("token contains whitespace: '" + s + "'");
    }
    tokens_[i].index = i;
  }
  if (!frozen_.empty() && *frozen_.rbegin() >= tokens_.size()) {
    throw ValidationError("frozen index out of range");
  }
}

TaggedSentence TaggedSentence::from_surfaces(
    const std::vector<std::string>& surfaces, const PosLexicon& lexicon,
    std::set<std::size_t> frozen) {
  std::vector<Token> tokens;
  tokens.reserve(surfaces.size());
  for (const std::string& s : surfaces) {
    tokens.push_back({s, tag_word(s, lexicon), 0});
  }
  return TaggedSentence(std::move(tokens), std::move(frozen));
}

TaggedSentence TaggedSentence::from_text(std::string_view text,
                                         const PosLexicon& lexicon,
                                         std::set<std::size_t> frozen) {
  return from_surfaces(split_whitespace(text), lexicon, std::move(frozen));
}

std::vector<std::string> TaggedSentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens_.size());
  for (const Token& t : tokens_) out.push_back(t.surface);
  return out;
}

std::string TaggedSentence::text() const { return join_tokens(surfaces()); }

void TaskInstance::validate() const {
  if (segments.empty() || segments.size() > 2) {
    throw ValidationError(id + ": instance needs 1 or 2 segments");
  }
  if (mutable_segment >= segments.size()) {
    throw ValidationError(id + ": mutable segment out of range");
  }
  if ((kind == TaskKind::kPair) != (segments.size() == 2)) {
    throw ValidationError(id + ": task kind does not match segment count");
  }
  if (kind == TaskKind::kTagging &&
      token_labels.size() != mutable_sentence().size()) {
    throw ValidationError(id + ": tagging labels must match token count");
  }
}

std::optional<DatasetFormat> parse_dataset_format(std::string_view name) {
  if (name == "jsonl") return DatasetFormat::kJsonl;
  if (name == "tsv") return DatasetFormat::kTsv;
  return std::nullopt;
}

namespace {

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string label_string(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  throw RecordError("label must be a string or integer");
}

TaggedSentence make_segment(const std::string& text, const json* pos,
                            std::set<std::size_t> frozen,
                            const PosLexicon& lexicon) {
  const std::vector<std::string> surfaces = split_whitespace(text);
  if (surfaces.empty()) throw RecordError("empty text");
  if (pos == nullptr) {
    return TaggedSentence::from_surfaces(surfaces, lexicon, std::move(frozen));
  }
  if (!pos->is_array() || pos->size() != surfaces.size()) {
    throw RecordError("pos must list one tag per token");
  }
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    const auto& tag_value = (*pos)[i];
    const auto tag = tag_value.is_string()
                         ? parse_pos(tag_value.get<std::string>())
                         : std::nullopt;
    if (!tag) throw RecordError("unknown POS tag at token " + std::to_string(i));
    tokens.push_back({surfaces[i], *tag, i});
  }
  return TaggedSentence(std::move(tokens), std::move(frozen));
}

const json* find_field(const json& record, const char* name) {
  const auto it = record.find(name);
  return it == record.end() || it->is_null() ? nullptr : &*it;
}

const json& require_field(const json& record, const char* name) {
  const json* value = find_field(record, name);
  if (value == nullptr) throw RecordError(std::string("missing field: ") + name);
  return *value;
}

std::string require_string(const json& record, const char* name) {
  const json& value = require_field(record, name);
  if (!value.is_string()) {
    throw RecordError(std::string("field must be a string: ") + name);
  }
  return value.get<std::string>();
}

TaskInstance instance_from_json(const json& record, const PosLexicon& lexicon) {
  if (!record.is_object()) throw RecordError("record is not an object");
  TaskInstance inst;
  const json& id = require_field(record, "id");
  inst.id = id.is_string() ? id.get<std::string>() : id.dump();
  const json& label = require_field(record, "label");

  std::set<std::size_t> frozen;
  if (const json* f = find_field(record, "frozen")) {
    if (!f->is_array()) throw RecordError("frozen must be a list of indices");
    for (const json& v : *f) {
      if (!v.is_number_unsigned()) throw RecordError("frozen index must be >= 0");
      frozen.insert(v.get<std::size_t>());
    }
  }

  if (find_field(record, "textA") != nullptr) {
    inst.kind = TaskKind::kPair;
    inst.mutable_segment = 1;
    if (const json* m = find_field(record, "mutable")) {
      if (!m->is_number_unsigned() || m->get<std::size_t>() > 1) {
        throw RecordError("mutable must be 0 or 1");
      }
      inst.mutable_segment = m->get<std::size_t>();
    }
    const std::string a = require_string(record, "textA");
    const std::string b = require_string(record, "textB");
    inst.segments.push_back(make_segment(
        a, find_field(record, "posA"),
        inst.mutable_segment == 0 ? frozen : std::set<std::size_t>{}, lexicon));
    inst.segments.push_back(make_segment(
        b, find_field(record, "posB"),
        inst.mutable_segment == 1 ? frozen : std::set<std::size_t>{}, lexicon));
    inst.gold_label = label_string(label);
  } else {
    const std::string text = require_string(record, "text");
    if (const json* m = find_field(record, "mutable");
        m != nullptr && *m != 0) {
      throw RecordError("mutable must be 0 for single-text records");
    }
    inst.segments.push_back(
        make_segment(text, find_field(record, "pos"), frozen, lexicon));
    if (label.is_array()) {
      inst.kind = TaskKind::kTagging;
      for (const json& l : label) inst.token_labels.push_back(label_string(l));
    } else {
      inst.kind = TaskKind::kSingle;
      inst.gold_label = label_string(label);
    }
  }
  inst.validate();
  return inst;
}

TaskInstance instance_from_tsv(std::string_view line, const PosLexicon& lexicon) {
  std::vector<std::string> cols;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    cols.emplace_back(line.substr(pos, tab == std::string_view::npos
                                           ? std::string_view::npos
                                           : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  if (cols.size() < 3 || cols.size() > 4) {
    throw RecordError("expected id<TAB>label<TAB>text[<TAB>textB]");
  }
  if (cols[1].empty()) throw RecordError("missing field: label");
  TaskInstance inst;
  inst.id = cols[0];
  inst.gold_label = cols[1];
  inst.segments.push_back(make_segment(cols[2], nullptr, {}, lexicon));
  if (cols.size() == 4) {
    inst.kind = TaskKind::kPair;
    inst.mutable_segment = 1;
    inst.segments.push_back(make_segment(cols[3], nullptr, {}, lexicon));
  }
  inst.validate();
  return inst;
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line, line_no);
  }
}

std::string at_line(const std::string& message, std::size_t line_no) {
  return message + " @ line " + std::to_string(line_no);
}

json pos_json(const TaggedSentence& s) {
  json tags = json::array();
  for (const Token& t : s.tokens()) tags.push_back(std::string(to_string(t.pos)));
  return tags;
}

EditSpan parse_span(const json& value) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_unsigned() ||
      !value[1].is_number_unsigned()) {
    throw RecordError("span must be [lo, hi)");
  }
  EditSpan span{value[0].get<std::size_t>(), value[1].get<std::size_t>()};
  if (span.hi < span.lo) throw RecordError("span must be [lo, hi)");
  return span;
}

std::vector<std::string> string_list(const json& value, const char* name) {
  if (!value.is_array()) throw RecordError(std::string(name) + " must be a list");
  std::vector<std::string> out;
  for (const json& v : value) {
    if (!v.is_string()) throw RecordError(std::string(name) + " must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

LoadResult<TaskInstance> parse_dataset(std::istream& in, DatasetFormat format,
                                       const PosLexicon& lexicon) {
  LoadResult<TaskInstance> result;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    try {
      if (format == DatasetFormat::kJsonl) {
        json record;
        try {
          record = json::parse(line);
        } catch (const json::parse_error&) {
          throw RecordError("malformed JSON");
        }
        result.items.push_back(instance_from_json(record, lexicon));
      } else {
        result.items.push_back(instance_from_tsv(line, lexicon));
      }
    } catch (const RecordError& e) {
      result.errors.push_back({line_no, at_line(e.what(), line_no)});
    } catch (const ValidationError& e) {
      result.errors.push_back({line_no, at_line(e.what(), line_no)});
    }
  });
  return result;
}

LoadResult<TaskInstance> load_dataset(const std::filesystem::path& path,
                                      DatasetFormat format,
                                      const PosLexicon& lexicon) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open dataset " + path.string());
  return parse_dataset(in, format, lexicon);
}

std::string dataset_record_json(const TaskInstance& inst,
                                const std::vector<std::size_t>* error_positions) {
  ordered_json record;
  record["id"] = inst.id;
  if (inst.kind == TaskKind::kPair) {
    record["textA"] = inst.segments[0].text();
    record["textB"] = inst.segments[1].text();
    record["posA"] = pos_json(inst.segments[0]);
    record["posB"] = pos_json(inst.segments[1]);
    record["mutable"] = inst.mutable_segment;
    record["label"] = inst.gold_label;
  } else {
    record["text"] = inst.segments[0].text();
    record["pos"] = pos_json(inst.segments[0]);
    if (inst.kind == TaskKind::kTagging) {
      record["label"] = inst.token_labels;
    } else {
      record["label"] = inst.gold_label;
    }
  }
  const auto& frozen = inst.mutable_sentence().frozen();
  if (!frozen.empty()) {
    record["frozen"] = std::vector<std::size_t>(frozen.begin(), frozen.end());
  }
  if (error_positions != nullptr) record["error_positions"] = *error_positions;
  return record.dump();
}

void write_dataset_jsonl(std::ostream& out,
                         std::span<const TaskInstance> instances) {
  for (const TaskInstance& inst : instances) out << dataset_record_json(inst) << '\n';
}

std::vector<std::string> apply_edits(const MinimalEditPair& pair) {
  const std::vector<std::string> bad = pair.bad.surfaces();
  const std::vector<std::string> good = pair.good.surfaces();
  std::vector<Edit> edits = pair.edits;
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.bad_span.lo < b.bad_span.lo;
  });
  std::vector<std::string> out;
  std::size_t cursor = 0;
  for (const Edit& e : edits) {
    if (e.bad_span.lo < cursor || e.bad_span.hi > bad.size() ||
        e.good_span.hi > good.size()) {
      throw ValidationError("edit span mismatch in pair " + pair.id);
    }
    out.insert(out.end(), bad.begin() + cursor, bad.begin() + e.bad_span.lo);
    if (out.size() != e.good_span.lo) {
      throw ValidationError("edit span mismatch in pair " + pair.id);
    }
    out.insert(out.end(), good.begin() + e.good_span.lo,
               good.begin() + e.good_span.hi);
    cursor = e.bad_span.hi;
  }
  out.insert(out.end(), bad.begin() + cursor, bad.end());
  return out;
}

LoadResult<MinimalEditPair> parse_minimal_pairs(std::istream& in,
                                                const PosLexicon& lexicon) {
  LoadResult<MinimalEditPair> result;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    std::string id = "?";
    try {
      json record;
      try {
        record = json::parse(line);
      } catch (const json::parse_error&) {
        throw RecordError("malformed JSON");
      }
      if (!record.is_object()) throw RecordError("record is not an object");
      const json& id_value = require_field(record, "id");
      id = id_value.is_string() ? id_value.get<std::string>() : id_value.dump();
      const auto bad = string_list(require_field(record, "bad"), "bad");
      const auto good = string_list(require_field(record, "good"), "good");
      std::vector<Edit> edits;
      const json& edit_list = require_field(record, "edits");
      if (!edit_list.is_array()) throw RecordError("edits must be a list");
      for (const json& e : edit_list) {
        if (!e.is_object()) throw RecordError("edit must be an object");
        Edit edit;
        edit.bad_span = parse_span(require_field(e, "bad_span"));
        edit.good_span = parse_span(require_field(e, "good_span"));
        const std::string tag = require_string(e, "tag");
        edit.tag = parse_error_type(tag);
        if (!edit.tag) {
          result.warnings.push_back(
              {line_no, at_line("pair " + id + ": unknown error tag '" + tag +
                                    "' kept as OTHER",
                                line_no)});
        }
        if (edit.bad_span.hi > bad.size() || edit.good_span.hi > good.size()) {
          throw ValidationError("edit span mismatch in pair " + id);
        }
        if (std::equal(bad.begin() + edit.bad_span.lo, bad.begin() + edit.bad_span.hi,
                       good.begin() + edit.good_span.lo,
                       good.begin() + edit.good_span.hi)) {
          throw ValidationError("edit does not change text in pair " + id);
        }
        edits.push_back(edit);
      }
      MinimalEditPair pair{id, TaggedSentence::from_surfaces(bad, lexicon),
                           TaggedSentence::from_surfaces(good, lexicon),
                           std::move(edits)};
      if (apply_edits(pair) != good) {
        throw ValidationError("edit span mismatch in pair " + id);
      }
      result.items.push_back(std::move(pair));
    } catch (const RecordError& e) {
      result.errors.push_back(
          {line_no, at_line("pair " + id + ": " + e.what(), line_no)});
    } catch (const ValidationError& e) {
      result.errors.push_back({line_no, at_line(e.what(), line_no)});
    }
  });
  return result;
}

LoadResult<MinimalEditPair> load_minimal_pairs(const std::filesystem::path& path,
                                               const PosLexicon& lexicon) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open pair file " + path.string());
  return parse_minimal_pairs(in, lexicon);
}

void assert_not_frozen(const TaggedSentence& sentence,
                       std::span<const std::size_t> touched) {
  for (std::size_t i : touched) {
    if (sentence.is_frozen(i)) {
      throw std::logic_error("edit targets frozen index " + std::to_string(i));
    }
  }
}

}  // namespace gramattack
