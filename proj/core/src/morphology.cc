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
#include "gramattack/morphology.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gramattack/error.h"
#include "gramattack/text_util.h"

namespace gramattack {

namespace {

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

std::string drop(std::string_view w, std::size_t n) {
  return std::string(w.substr(0, w.size() - n));
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

int vowel_groups(std::string_view w) {
  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool v = is_vowel(w[i]) || (w[i] == 'y' && i > 0 && !is_vowel(w[i - 1]));
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// Polysyllables stressed on the last syllable double like monosyllables.
bool stressed_final(std::string_view w) {
  static const std::set<std::string, std::less<>> kWords = {
      "admit",  "begin",  "commit", "compel", "confer", "control", "defer",
      "deter",  "equip",  "excel",  "expel",  "forbid", "forget",  "incur",
      "infer",  "occur",  "omit",   "patrol", "permit", "prefer",  "propel",
      "recur",  "refer",  "regret", "submit", "transfer", "upset"};
  return kWords.count(w) != 0;
}

// Consonant-vowel-consonant ending on a monosyllable ("stop", "run",
// "quit") or a stressed final syllable ("prefer").
bool doubles_final(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  const char last = w[n - 1];
  if (!is_consonant(last) || last == 'w' || last == 'x' || last == 'y') return false;
  if (!is_vowel(w[n - 2])) return false;
  const bool qu = n >= 4 && w[n - 3] == 'u' && w[n - 4] == 'q';
  if (!is_consonant(w[n - 3]) && !qu) return false;
  return vowel_groups(w) == 1 || stressed_final(w);
}

// Vowel + final consonant in a monosyllable: the stem probably lost an "e"
// ("lik" from "liked", "us" from "used").
bool lost_silent_e(std::string_view stem) {
  const std::size_t n = stem.size();
  if (n < 2) return false;
  const char last = stem[n - 1];
  if (!is_consonant(last) || last == 'w' || last == 'x' || last == 'y') return false;
  return is_vowel(stem[n - 2]) && (n == 2 || !is_vowel(stem[n - 3])) &&
         vowel_groups(stem) == 1;
}

bool doubled_consonant(std::string_view stem) {
  const std::size_t n = stem.size();
  return n >= 3 && stem[n - 1] == stem[n - 2] && is_consonant(stem[n - 1]) &&
         stem[n - 1] != 's' && stem[n - 1] != 'l' && stem[n - 1] != 'f' &&
         stem[n - 1] != 'z';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename Fn>
void for_each_row(std::string_view text, std::string_view file, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      cols.push_back(to_lower(line.substr(
          start, tab == std::string_view::npos ? std::string_view::npos : tab - start)));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    fn(cols, [&](const std::string& what) {
      throw ValidationError(std::string(file) + " line " + std::to_string(line_no) +
                            ": " + what);
    });
  }
}

// Candidate lemmas of a regular inflected form, most specific first.
std::vector<std::string> regular_lemma_candidates(std::string_view w,
                                                  std::string_view suffix) {
  std::vector<std::string> out;
  const std::string stem = drop(w, suffix.size());
  if (suffix == "s") {
    if (ends_with(w, "ies")) out.push_back(drop(w, 3) + "y");
    if (ends_with(w, "es")) out.push_back(drop(w, 2));
    out.push_back(stem);
  } else {
    if (suffix == "ed" && ends_with(stem, "i")) out.push_back(drop(stem, 1) + "y");
    if (suffix == "ing" && ends_with(stem, "y")) out.push_back(drop(stem, 1) + "ie");
    out.push_back(stem);
    out.push_back(stem + "e");
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2]) {
      out.push_back(drop(stem, 1));
    }
  }
  return out;
}

std::string heuristic_lemma(std::string_view w, std::string_view suffix) {
  std::string stem = drop(w, suffix.size());
  if (suffix == "s") {
    if (ends_with(w, "ies") && w.size() > 4) return drop(w, 3) + "y";
    for (std::string_view es : {"sses", "shes", "ches", "xes", "zzes", "oes"}) {
      if (ends_with(w, es)) return drop(w, 2);
    }
    return stem;
  }
  if (suffix == "ed" && ends_with(stem, "i") && stem.size() > 2) {
    return drop(stem, 1) + "y";
  }
  if (suffix == "ing" && ends_with(stem, "y") && stem.size() == 2) {
    return drop(stem, 1) + "ie";  // "dying" -> "die"
  }
  if (doubled_consonant(stem)) return drop(stem, 1);
  if (lost_silent_e(stem)) return stem + "e";
  return stem;
}

std::string lemma_of(std::string_view w, std::string_view suffix,
                     const InflectionLexicon& lex) {
  for (const std::string& c : regular_lemma_candidates(w, suffix)) {
    if (c.size() >= 2 && (lex.is_known_verb(c) || lex.verb(c) != nullptr)) return c;
  }
  return heuristic_lemma(w, suffix);
}

bool looks_plural(std::string_view w) {
  return w.size() >= 3 && ends_with(w, "s") && !ends_with(w, "ss") &&
         !ends_with(w, "us") && !ends_with(w, "is");
}

}  // namespace

InflectionLexicon InflectionLexicon::parse(std::string_view nouns_tsv,
                                           std::string_view verbs_tsv,
                                           std::string_view synonyms_tsv) {
  InflectionLexicon lex;
  for_each_row(nouns_tsv, "irregular_nouns.tsv", [&](const auto& cols, auto fail) {
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      fail("expected singular<TAB>plural");
    }
    lex.add_noun(cols[0], cols[1]);
  });
  for_each_row(verbs_tsv, "irregular_verbs.tsv", [&](const auto& cols, auto fail) {
    if (cols.size() < 3 || cols.size() > 4 || cols[0].empty() || cols[1].empty() ||
        cols[2].empty()) {
      fail("expected base<TAB>past<TAB>perfect<TAB>3sg");
    }
    lex.add_verb(cols[0], {cols[1], cols[2], cols.size() == 4 ? cols[3] : ""});
  });
  for_each_row(synonyms_tsv, "synonyms.tsv", [&](const auto& cols, auto fail) {
    if (cols.size() != 2 || cols[0].empty()) fail("expected lemma<TAB>syn1,syn2,...");
    std::vector<std::string> syns;
    std::size_t start = 0;
    const std::string& list = cols[1];
    while (start <= list.size()) {
      std::size_t comma = list.find(',', start);
      if (comma == std::string::npos) comma = list.size();
      std::string s = list.substr(start, comma - start);
      s.erase(0, s.find_first_not_of(' '));
      s.erase(s.find_last_not_of(' ') + 1);
      if (!s.empty()) syns.push_back(s);
      start = comma + 1;
    }
    lex.add_synonyms(cols[0], std::move(syns));
  });
  return lex;
}

InflectionLexicon InflectionLexicon::load(const std::filesystem::path& nouns_file,
                                          const std::filesystem::path& verbs_file,
                                          const std::filesystem::path& synonyms_file) {
  return parse(read_file(nouns_file), read_file(verbs_file),
               read_file(synonyms_file));
}

void InflectionLexicon::add_noun(std::string_view singular, std::string_view plural) {
  const std::string sg = to_lower(singular);
  const std::string pl = to_lower(plural);
  if (sg == pl) {
    invariant_.insert(sg);
    return;
  }
  plural_of_[sg] = pl;
  singular_of_[pl] = sg;
}

void InflectionLexicon::add_verb(std::string_view base, IrregularVerb forms) {
  const std::string b = to_lower(base);
  past_base_[forms.past] = b;
  perfect_base_[forms.perfect] = b;
  if (!forms.third_sg.empty()) third_base_[forms.third_sg] = b;
  verbs_[b] = std::move(forms);
}

void InflectionLexicon::add_synonyms(std::string_view lemma,
                                     std::vector<std::string> synonyms) {
  const std::string head = to_lower(lemma);
  std::vector<std::string> kept;
  for (std::string& s : synonyms) {
    s = to_lower(s);
    if (s == head || s.find_first_of("_ ") != std::string::npos) continue;
    if (std::find(kept.begin(), kept.end(), s) != kept.end()) continue;
    kept.push_back(std::move(s));
    if (kept.size() == kMaxSynonyms) break;
  }
  synonyms_[head] = std::move(kept);
}

void InflectionLexicon::add_known_noun(std::string_view singular) {
  known_nouns_.insert(to_lower(singular));
}

void InflectionLexicon::add_known_verb(std::string_view base) {
  known_verbs_.insert(to_lower(base));
}

std::optional<std::string> InflectionLexicon::plural_of(std::string_view sg) const {
  const auto it = plural_of_.find(std::string(sg));
  if (it == plural_of_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> InflectionLexicon::singular_of(std::string_view pl) const {
  const auto it = singular_of_.find(std::string(pl));
  if (it == singular_of_.end()) return std::nullopt;
  return it->second;
}

const IrregularVerb* InflectionLexicon::verb(std::string_view base) const {
  const auto it = verbs_.find(std::string(base));
  return it == verbs_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* InflectionLexicon::synonyms_of(
    std::string_view lemma) const {
  const auto it = synonyms_.find(std::string(lemma));
  return it == synonyms_.end() ? nullptr : &it->second;
}

std::optional<VerbAnalysis> InflectionLexicon::analyze_irregular(
    std::string_view form) const {
  const std::string f(form);
  const auto past = past_base_.find(f);
  const auto perfect = perfect_base_.find(f);
  if (past != past_base_.end() && perfect != perfect_base_.end() &&
      past->second == perfect->second) {
    return VerbAnalysis{past->second, VerbShape::kPastOrPerfect};
  }
  if (past != past_base_.end()) return VerbAnalysis{past->second, VerbShape::kPast};
  if (perfect != perfect_base_.end()) {
    return VerbAnalysis{perfect->second, VerbShape::kPerfect};
  }
  if (const auto third = third_base_.find(f); third != third_base_.end()) {
    return VerbAnalysis{third->second, VerbShape::kThirdSg};
  }
  return std::nullopt;
}

bool InflectionLexicon::is_known_noun(std::string_view w) const {
  return known_nouns_.count(std::string(w)) != 0;
}

bool InflectionLexicon::is_known_verb(std::string_view w) const {
  return known_verbs_.count(std::string(w)) != 0;
}

std::string regular_plural(std::string_view w) {
  for (std::string_view s : {"s", "x", "z", "ch", "sh"}) {
    if (ends_with(w, s)) return std::string(w) + "es";
  }
  if (w.size() >= 2 && w.back() == 'y' && is_consonant(w[w.size() - 2])) {
    return drop(w, 1) + "ies";
  }
  return std::string(w) + "s";
}

std::string regular_third_person(std::string_view w) {
  for (std::string_view s : {"s", "x", "z", "ch", "sh", "o"}) {
    if (ends_with(w, s)) return std::string(w) + "es";
  }
  if (w.size() >= 2 && w.back() == 'y' && is_consonant(w[w.size() - 2])) {
    return drop(w, 1) + "ies";
  }
  return std::string(w) + "s";
}

std::string regular_past(std::string_view w) {
  if (ends_with(w, "e")) return std::string(w) + "d";
  if (w.size() >= 2 && w.back() == 'y' && is_consonant(w[w.size() - 2])) {
    return drop(w, 1) + "ied";
  }
  if (doubles_final(w)) return std::string(w) + w.back() + "ed";
  return std::string(w) + "ed";
}

std::string regular_present_participle(std::string_view w) {
  if (ends_with(w, "ie")) return drop(w, 2) + "ying";
  if (ends_with(w, "e") && !ends_with(w, "ee") && !ends_with(w, "ye") &&
      !ends_with(w, "oe") && w.size() > 2) {
    return drop(w, 1) + "ing";
  }
  if (doubles_final(w)) return std::string(w) + w.back() + "ing";
  return std::string(w) + "ing";
}

std::string pluralize(std::string_view singular, const InflectionLexicon& lex) {
  if (auto pl = lex.plural_of(singular)) return *pl;
  return regular_plural(singular);
}

std::string singularize(std::string_view plural, const InflectionLexicon& lex) {
  if (auto sg = lex.singular_of(plural)) return *sg;
  const std::vector<std::string> candidates = regular_lemma_candidates(plural, "s");
  // "planes" yields both "plan" and "plane"; take the one that pluralizes back.
  for (const std::string& c : candidates) {
    if (lex.is_known_noun(c) && regular_plural(c) == plural) return c;
  }
  for (const std::string& c : candidates) {
    if (lex.is_known_noun(c)) return c;
  }
  return heuristic_lemma(plural, "s");
}

VerbAnalysis analyze_verb(std::string_view word, const InflectionLexicon& lex) {
  const std::string w = to_lower(word);
  if (w == "be") return {"be", VerbShape::kBase};
  if (w == "is") return {"be", VerbShape::kThirdSg};
  if (w == "are" || w == "am") return {"be", VerbShape::kBase};
  if (w == "was" || w == "were") return {"be", VerbShape::kPast};
  if (w == "been") return {"be", VerbShape::kPerfect};
  if (w == "being") return {"be", VerbShape::kProgressive};
  if (lex.verb(w) != nullptr) return {w, VerbShape::kBase};
  if (auto irregular = lex.analyze_irregular(w)) return *irregular;
  if (lex.is_known_verb(w)) return {w, VerbShape::kBase};
  if (w.size() > 4 && ends_with(w, "ing")) {
    return {lemma_of(w, "ing", lex), VerbShape::kProgressive};
  }
  if (w.size() > 3 && ends_with(w, "ed")) {
    return {lemma_of(w, "ed", lex), VerbShape::kPastOrPerfect};
  }
  if (looks_plural(w)) return {lemma_of(w, "s", lex), VerbShape::kThirdSg};
  return {w, VerbShape::kBase};
}

std::optional<NounForms> noun_number_forms(const Token& token,
                                           const InflectionLexicon& lex) {
  if (token.pos != Pos::kNoun) return std::nullopt;
  const std::string w = to_lower(split_surface(token.surface).core);
  if (w.empty() || lex.invariant_nouns().count(w)) return std::nullopt;
  NounForms forms;
  if (auto pl = lex.plural_of(w)) {
    forms = {w, *pl};
  } else if (auto sg = lex.singular_of(w)) {
    forms = {*sg, w};
  } else if (lex.is_known_noun(w) || !looks_plural(w)) {
    forms = {w, regular_plural(w)};
  } else {
    forms = {singularize(w, lex), w};
  }
  if (forms.singular == forms.plural || forms.singular.empty()) return std::nullopt;
  return forms;
}

std::optional<AgreementForms> sva_forms(const Token& token,
                                        const InflectionLexicon& lex) {
  if (token.pos != Pos::kVerb) return std::nullopt;
  const std::string w = to_lower(split_surface(token.surface).core);
  if (w.empty()) return std::nullopt;
  if (w == "is" || w == "are") return AgreementForms{"is", "are"};
  if (w == "am") return AgreementForms{"is", "am"};
  const VerbAnalysis a = analyze_verb(w, lex);
  if (a.lemma == "be") return std::nullopt;
  AgreementForms forms;
  if (a.shape == VerbShape::kBase) {
    const IrregularVerb* irregular = lex.verb(a.lemma);
    forms = {irregular && !irregular->third_sg.empty()
                 ? irregular->third_sg
                 : regular_third_person(a.lemma),
             a.lemma};
  } else if (a.shape == VerbShape::kThirdSg) {
    forms = {w, a.lemma};
  } else {
    return std::nullopt;
  }
  if (forms.third_sg == forms.not_third) return std::nullopt;
  return forms;
}

const std::string& VerbForms::get(VerbForm form) const {
  switch (form) {
    case VerbForm::kPresent:
      return present;
    case VerbForm::kPast:
      return past;
    case VerbForm::kProgressive:
      return progressive;
    case VerbForm::kPerfect:
      break;
  }
  return perfect;
}

std::vector<std::string> VerbForms::distinct() const {
  std::vector<std::string> out;
  for (const std::string* s : {&present, &past, &progressive, &perfect}) {
    if (std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
  }
  return out;
}

std::optional<VerbForms> vform_forms(const Token& token,
                                     const InflectionLexicon& lex) {
  if (token.pos != Pos::kVerb) return std::nullopt;
  const std::string w = to_lower(split_surface(token.surface).core);
  if (w.empty()) return std::nullopt;
  const VerbAnalysis a = analyze_verb(w, lex);
  if (a.lemma == "be") {
    const bool plural = w == "are" || w == "were";
    return VerbForms{w == "am" ? "am" : (plural ? "are" : "is"),
                     plural ? "were" : "was", "being", "been"};
  }
  VerbForms forms;
  forms.present = a.shape == VerbShape::kThirdSg ? w : a.lemma;
  const IrregularVerb* irregular = lex.verb(a.lemma);
  forms.past = irregular ? irregular->past : regular_past(a.lemma);
  forms.perfect = irregular ? irregular->perfect : regular_past(a.lemma);
  forms.progressive = regular_present_participle(a.lemma);
  return forms;
}

std::vector<std::string> synonyms(const Token& token, const InflectionLexicon& lex) {
  const std::string w = to_lower(split_surface(token.surface).core);
  if (w.empty()) return {};
  std::string lemma = w;
  const std::vector<std::string>* bank = lex.synonyms_of(w);
  if (bank == nullptr && token.pos == Pos::kVerb) {
    lemma = analyze_verb(w, lex).lemma;
    bank = lex.synonyms_of(lemma);
  }
  if (bank == nullptr && token.pos == Pos::kNoun) {
    if (auto forms = noun_number_forms(token, lex)) {
      lemma = forms->singular;
      bank = lex.synonyms_of(lemma);
    }
  }
  if (bank == nullptr) return {};
  std::vector<std::string> out;
  for (const std::string& s : *bank) {
    if (s == w || s == lemma) continue;
    out.push_back(s);
    if (out.size() == kMaxSynonyms) break;
  }
  return out;
}

std::optional<std::size_t> worder_swap_target(const TaggedSentence& sentence,
                                              std::size_t i) {
  if (i >= sentence.size() || sentence[i].pos != Pos::kAdv) return std::nullopt;
  const auto eligible = [](Pos p) {
    return p == Pos::kAdj || p == Pos::kPart || p == Pos::kModal;
  };
  if (i + 1 < sentence.size() && eligible(sentence[i + 1].pos)) return i + 1;
  if (i > 0 && eligible(sentence[i - 1].pos)) return i - 1;
  return std::nullopt;
}

}  // namespace gramattack
