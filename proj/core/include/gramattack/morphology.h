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
#ifndef GRAMATTACK_MORPHOLOGY_H_
#define GRAMATTACK_MORPHOLOGY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gramattack/text_model.h"

namespace gramattack {

inline constexpr std::size_t kMaxSynonyms = 10;

enum class VerbShape {
  kBase,
  kThirdSg,
  kPast,
  kPerfect,
  kPastOrPerfect,  // regular -ed, or irregular with past == perfect
  kProgressive,
};

struct VerbAnalysis {
  std::string lemma;
  VerbShape shape = VerbShape::kBase;
};

struct IrregularVerb {
  std::string past;
  std::string perfect;
  std::string third_sg;  // empty: regular -s rule

  bool operator==(const IrregularVerb&) const = default;
};

// Irregular inflections, the synonym bank, and the known regular stems used
// to disambiguate lemmatization ("making" -> "make", not "mak"). All keys are
// lowercase.
class InflectionLexicon {
 public:
  InflectionLexicon() = default;

  // irregular_nouns.tsv: singular<TAB>plural (identical forms mark an
  //   invariant or mass noun).
  // irregular_verbs.tsv: base<TAB>past<TAB>perfect<TAB>3sg.
  // synonyms.tsv: lemma<TAB>syn1,syn2,... (multiword entries are dropped,
  //   the headword is dropped, at most ten are kept, bank order preserved).
  static InflectionLexicon parse(std::string_view nouns_tsv,
                                 std::string_view verbs_tsv,
                                 std::string_view synonyms_tsv);
  static InflectionLexicon load(const std::filesystem::path& nouns_file,
                                const std::filesystem::path& verbs_file,
                                const std::filesystem::path& synonyms_file);

  void add_noun(std::string_view singular, std::string_view plural);
  void add_verb(std::string_view base, IrregularVerb forms);
  void add_synonyms(std::string_view lemma, std::vector<std::string> synonyms);
  void add_known_noun(std::string_view singular);
  void add_known_verb(std::string_view base);

  const std::map<std::string, std::string>& irregular_plurals() const {
    return plural_of_;
  }
  const std::map<std::string, IrregularVerb>& irregular_verbs() const {
    return verbs_;
  }
  const std::set<std::string>& invariant_nouns() const { return invariant_; }
  const std::set<std::string>& known_nouns() const { return known_nouns_; }
  const std::set<std::string>& known_verbs() const { return known_verbs_; }

  std::optional<std::string> plural_of(std::string_view singular) const;
  std::optional<std::string> singular_of(std::string_view plural) const;
  const IrregularVerb* verb(std::string_view base) const;
  const std::vector<std::string>* synonyms_of(std::string_view lemma) const;
  // Lemma and shape when \`form\` is an irregular past, perfect or 3sg form.
  std::optional<VerbAnalysis> analyze_irregular(std::string_view form) const;

  bool is_known_noun(std::string_view w) const;
  bool is_known_verb(std::string_view w) const;

 private:
  std::map<std::string, std::string> plural_of_;
  std::map<std::string, std::string> singular_of_;
  std::set<std::string> invariant_;
  std::map<std::string, IrregularVerb> verbs_;
  // form -> base for irregular past / perfect / third_sg forms.
  std::map<std::string, std::string> past_base_;
  std::map<std::string, std::string> perfect_base_;
  std::map<std::string, std::string> third_base_;
  std::map<std::string, std::vector<std::string>> synonyms_;
  std::set<std::string> known_nouns_;
  std::set<std::string> known_verbs_;

};

// Regular spelling rules. Inputs and outputs are lowercase.
std::string regular_plural(std::string_view singular);
std::string regular_third_person(std::string_view base);
std::string regular_past(std::string_view base);
std::string regular_present_participle(std::string_view base);

std::string pluralize(std::string_view singular, const InflectionLexicon& lex);
std::string singularize(std::string_view plural, const InflectionLexicon& lex);

// Lemma and inflectional shape of a lowercase verb form.
VerbAnalysis analyze_verb(std::string_view word, const InflectionLexicon& lex);

struct NounForms {
  std::string singular;
  std::string plural;
};

// Both number forms of a noun; none for non-nouns and invariant nouns.
std::optional<NounForms> noun_number_forms(const Token& token,
                                           const InflectionLexicon& lex);

struct AgreementForms {
  std::string third_sg;
  std::string not_third;
};

// Both agreement forms of a present-tense verb; none otherwise.
std::optional<AgreementForms> sva_forms(const Token& token,
                                        const InflectionLexicon& lex);

enum class VerbForm { kPresent, kPast, kProgressive, kPerfect };

struct VerbForms {
  std::string present;
  std::string past;
  std::string progressive;
  std::string perfect;

  const std::string& get(VerbForm form) const;
  // Surfaces in Present, Past, Progressive, Perfect order with repeats
  // removed ("walked" appears once for a regular verb).
  std::vector<std::string> distinct() const;
};

// The four single-token tense forms of a verb. Present keeps a third-person
// -s when the token already carries one.
std::optional<VerbForms> vform_forms(const Token& token,
                                     const InflectionLexicon& lex);

// Up to ten bank synonyms of the token, or of its lemma when the surface
// itself is not in the bank.
std::vector<std::string> synonyms(const Token& token,
                                  const InflectionLexicon& lex);

// Neighbour an adverb at i can trade places with: i+1 or i-1 when tagged
// ADJ, PART or MODAL, preferring i+1.
std::optional<std::size_t> worder_swap_target(const TaggedSentence& sentence,
                                              std::size_t i);

}  // namespace gramattack

#endif  // GRAMATTACK_MORPHOLOGY_H_
