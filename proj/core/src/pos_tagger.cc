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
#include "gramattack/pos_tagger.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gramattack/error.h"
#include "gramattack/text_util.h"

namespace gramattack {

namespace {

constexpr std::array<std::string_view, 10> kPosNames = {
    "NOUN", "VERB", "ADJ", "ADV", "DET", "PREP", "CONJ", "MODAL", "PART", "OTHER",
};

bool ends_with(std::string_view word, std::string_view suffix) {
  return word.size() >= suffix.size() &&
         word.substr(word.size() - suffix.size()) == suffix;
}

std::string_view strip(std::string_view word, std::size_t n) {
  return word.substr(0, word.size() - n);
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Candidate stems of an inflected form, most specific first.
std::vector<std::string> stems_for(std::string_view word,
                                   std::string_view suffix) {
  std::vector<std::string> stems;
  if (!ends_with(word, suffix) || word.size() <= suffix.size() + 1) {
    return stems;
  }
  const std::string_view base = strip(word, suffix.size());
  if (suffix == "s") {
    if (ends_with(word, "ies")) stems.push_back(std::string(strip(word, 3)) + "y");
    if (ends_with(word, "es")) stems.emplace_back(strip(word, 2));
    stems.emplace_back(base);
  } else if (suffix == "ed" || suffix == "er" || suffix == "est") {
    if (ends_with(base, "i")) stems.push_back(std::string(strip(base, 1)) + "y");
    stems.emplace_back(base);
    stems.push_back(std::string(base) + "e");
    const std::size_t n = base.size();
    if (n >= 2 && base[n - 1] == base[n - 2] && !is_vowel(base[n - 1])) {
      stems.emplace_back(strip(base, 1));
    }
  } else if (suffix == "ing") {
    if (ends_with(base, "y")) stems.push_back(std::string(strip(base, 1)) + "ie");
    stems.emplace_back(base);
    stems.push_back(std::string(base) + "e");
    const std::size_t n = base.size();
    if (n >= 2 && base[n - 1] == base[n - 2] && !is_vowel(base[n - 1])) {
      stems.emplace_back(strip(base, 1));
    }
  } else if (suffix == "ly") {
    if (ends_with(base, "i")) stems.push_back(std::string(strip(base, 1)) + "y");
    stems.emplace_back(base);
    stems.push_back(std::string(base) + "le");
  }
  return stems;
}

bool has_digit(std::string_view word) {
  return std::any_of(word.begin(), word.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

template <typename Fn>
void for_each_entry(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ValidationError("lexicon line " + std::to_string(line_no) +
                            ": expected key<TAB>TAG");
    }
    const std::string_view tag_name = line.substr(tab + 1);
    const auto tag = parse_pos(tag_name);
    if (!tag) {
      throw ValidationError("lexicon line " + std::to_string(line_no) +
                            ": unknown tag '" + std::string(tag_name) + "'");
    }
    fn(line.substr(0, tab), *tag);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string_view to_string(Pos pos) {
  return kPosNames[static_cast<std::size_t>(pos)];
}

std::optional<Pos> parse_pos(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

PosLexicon PosLexicon::parse(std::string_view words_tsv,
                             std::string_view suffixes_tsv) {
  PosLexicon lexicon;
  for_each_entry(words_tsv, [&](std::string_view word, Pos pos) {
    lexicon.add_word(word, pos);
  });
  for_each_entry(suffixes_tsv, [&](std::string_view suffix, Pos pos) {
    lexicon.add_suffix(suffix, pos);
  });
  return lexicon;
}

PosLexicon PosLexicon::load(const std::filesystem::path& words_file,
                            const std::filesystem::path& suffixes_file) {
  return parse(read_file(words_file), read_file(suffixes_file));
}

void PosLexicon::add_word(std::string_view word, Pos pos) {
  words_[to_lower(word)] = pos;
}

void PosLexicon::add_suffix(std::string_view suffix, Pos pos) {
  suffixes_.emplace_back(to_lower(suffix), pos);
  std::stable_sort(suffixes_.begin(), suffixes_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
}

std::optional<Pos> PosLexicon::lookup(std::string_view lower_word) const {
  const auto it = words_.find(std::string(lower_word));
  if (it == words_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> PosLexicon::words_with(Pos pos) const {
  std::vector<std::string> out;
  for (const auto& [word, tag] : words_) {
    if (tag == pos) out.push_back(word);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Pos tag_word(std::string_view surface, const PosLexicon& lexicon) {
  const std::string word = to_lower(split_surface(surface).core);
  if (word.empty() || has_digit(word)) return Pos::kOther;
  if (auto hit = lexicon.lookup(word)) return *hit;

  // Inflected forms of known stems.
  struct InflectionRule {
    std::string_view suffix;
    Pos stem_pos;
    Pos result;
  };
  static constexpr std::array<InflectionRule, 7> kRules = {{
      {"s", Pos::kVerb, Pos::kVerb},
      {"s", Pos::kNoun, Pos::kNoun},
      {"ed", Pos::kVerb, Pos::kVerb},
      {"ing", Pos::kVerb, Pos::kVerb},
      {"er", Pos::kAdj, Pos::kAdj},
      {"est", Pos::kAdj, Pos::kAdj},
      {"ly", Pos::kAdj, Pos::kAdv},
  }};
  for (const auto& rule : kRules) {
    for (const std::string& stem : stems_for(word, rule.suffix)) {
      if (lexicon.lookup(stem) == rule.stem_pos) return rule.result;
    }
  }

  for (const auto& [suffix, pos] : lexicon.suffix_rules()) {
    if (word.size() > suffix.size() + 1 && ends_with(word, suffix)) return pos;
  }
  return Pos::kOther;
}

std::vector<Pos> naive_pos_tag(std::span<const std::string> tokens,
                               const PosLexicon& lexicon) {
  std::vector<Pos> tags;
  tags.reserve(tokens.size());
  for (const std::string& token : tokens) tags.push_back(tag_word(token, lexicon));
  return tags;
}

}  // namespace gramattack
