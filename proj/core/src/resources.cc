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
#include "gramattack/resources.h"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gramattack/error.h"

namespace gramattack {
namespace detail {
const std::map<std::string, std::string_view>& embedded_data();
}  // namespace detail

namespace {

std::string read_or_bundled(const std::filesystem::path& dir, std::string_view name) {
  const std::filesystem::path path = dir / std::string(name);
  if (!std::filesystem::exists(path)) return std::string(bundled_file(name));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LanguageResources assemble(std::string_view pos_words, std::string_view pos_suffixes,
                           std::string_view nouns, std::string_view verbs,
                           std::string_view syns) {
  LanguageResources res;
  res.pos = PosLexicon::parse(pos_words, pos_suffixes);
  res.inflections = InflectionLexicon::parse(nouns, verbs, syns);
  link_lexicons(res.pos, res.inflections);
  return res;
}

}  // namespace

std::string_view bundled_file(std::string_view name) {
  return detail::embedded_data().at(std::string(name));
}

void link_lexicons(PosLexicon& pos, InflectionLexicon& inflections) {
  for (const std::string& w : pos.words_with(Pos::kNoun)) inflections.add_known_noun(w);
  for (const std::string& w : pos.words_with(Pos::kVerb)) inflections.add_known_verb(w);
  const auto add_if_new = [&](const std::string& w, Pos p) {
    if (!w.empty() && !pos.lookup(w)) pos.add_word(w, p);
  };
  for (const auto& [sg, pl] : inflections.irregular_plurals()) {
    add_if_new(sg, Pos::kNoun);
    add_if_new(pl, Pos::kNoun);
  }
  for (const std::string& w : inflections.invariant_nouns()) add_if_new(w, Pos::kNoun);
  for (const auto& [base, forms] : inflections.irregular_verbs()) {
    add_if_new(base, Pos::kVerb);
    add_if_new(forms.past, Pos::kVerb);
    add_if_new(forms.perfect, Pos::kVerb);
    add_if_new(forms.third_sg, Pos::kVerb);
  }
  for (const char* be : {"be", "is", "are", "am", "was", "were", "been", "being"}) {
    add_if_new(be, Pos::kVerb);
  }
}

LanguageResources LanguageResources::bundled() {
  return assemble(bundled_file("pos_lexicon.tsv"), bundled_file("pos_suffixes.tsv"),
                  bundled_file("irregular_nouns.tsv"),
                  bundled_file("irregular_verbs.tsv"), bundled_file("synonyms.tsv"));
}

LanguageResources LanguageResources::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ValidationError("not a directory: " + dir.string());
  }
  return assemble(read_or_bundled(dir, "pos_lexicon.tsv"),
                  read_or_bundled(dir, "pos_suffixes.tsv"),
                  read_or_bundled(dir, "irregular_nouns.tsv"),
                  read_or_bundled(dir, "irregular_verbs.tsv"),
                  read_or_bundled(dir, "synonyms.tsv"));
}

void LanguageResources::apply(const ConfusionFile& file) {
  file.distribution.validate();
  confusions = merge_sets(file.sets, confusions);
  distribution = file.distribution;
}

}  // namespace gramattack
