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

#include <algorithm>

#include <gtest/gtest.h>

#include "gramattack/morphology.h"
#include "gramattack/resources.h"
#include "reference_data.h"

namespace gramattack {
namespace {

const LanguageResources& res() {
  static const LanguageResources r = LanguageResources::bundled();
  return r;
}
const InflectionLexicon& lex() { return res().inflections; }

Token verb(const std::string& w) { return {w, Pos::kVerb, 0}; }
Token noun(const std::string& w) { return {w, Pos::kNoun, 0}; }

TEST(MorphologyTable, AllCases) {
  const auto cases = fixtures::load_morph_cases(GRAMATTACK_TEST_DATA "/morphology_cases.tsv");
  ASSERT_GE(cases.size(), 200u);
  for (const auto& c : cases) {
    EXPECT_EQ(fixtures::evaluate_morph_case(c, lex()), c.expected) << c.fn << " " << c.input;
  }
}

TEST(IrregularLexicon, NounRoundTrip) {
  ASSERT_FALSE(lex().irregular_plurals().empty());
  for (const auto& [sg, pl] : lex().irregular_plurals()) {
    EXPECT_EQ(pluralize(sg, lex()), pl) << sg;
    EXPECT_EQ(singularize(pl, lex()), sg) << pl;
  }
  for (const std::string& w : lex().invariant_nouns()) {
    EXPECT_FALSE(noun_number_forms(noun(w), lex())) << w;
  }
}

TEST(IrregularLexicon, VerbRoundTrip) {
  ASSERT_FALSE(lex().irregular_verbs().empty());
  for (const auto& [base, forms] : lex().irregular_verbs()) {
    const auto v = vform_forms(verb(base), lex());
    ASSERT_TRUE(v) << base;
    EXPECT_EQ(v->present, base);
    EXPECT_EQ(v->past, forms.past) << base;
    EXPECT_EQ(v->perfect, forms.perfect) << base;
    if (forms.past != base) {
      EXPECT_EQ(analyze_verb(forms.past, lex()).lemma, base) << forms.past;
    }
    if (forms.perfect != base) {
      EXPECT_EQ(analyze_verb(forms.perfect, lex()).lemma, base) << forms.perfect;
    }
    const auto a = sva_forms(verb(base), lex());
    ASSERT_TRUE(a) << base;
    EXPECT_EQ(a->not_third, base);
    const auto back = sva_forms(verb(a->third_sg), lex());
    ASSERT_TRUE(back) << a->third_sg;
    EXPECT_EQ(back->not_third, base) << a->third_sg;
  }
}

TEST(NounNumber, Examples) {
  const auto g = noun_number_forms(noun("group"), lex());
  ASSERT_TRUE(g);
  EXPECT_EQ(g->singular, "group");
  EXPECT_EQ(g->plural, "groups");
  const auto c = noun_number_forms(noun("child"), lex());
  ASSERT_TRUE(c);
  EXPECT_EQ(c->plural, "children");
  EXPECT_FALSE(noun_number_forms({"the", Pos::kDet, 0}, lex()));
}

TEST(NounNumber, CasingAndPunctuationIgnored) {
  const auto g = noun_number_forms(noun("Groups,"), lex());
  ASSERT_TRUE(g);
  EXPECT_EQ(g->singular, "group");
}

TEST(Sva, Examples) {
  const auto g = sva_forms(verb("grows"), lex());
  ASSERT_TRUE(g);
  EXPECT_EQ(g->third_sg, "grows");
  EXPECT_EQ(g->not_third, "grow");
  const auto is = sva_forms(verb("is"), lex());
  ASSERT_TRUE(is);
  EXPECT_EQ(is->not_third, "are");
  EXPECT_FALSE(sva_forms(verb("grew"), lex()));
  EXPECT_FALSE(sva_forms(noun("grows"), lex()));
}

TEST(Vform, Examples) {
  const auto g = vform_forms(verb("grow"), lex());
  ASSERT_TRUE(g);
  EXPECT_EQ(g->present, "grow");
  EXPECT_EQ(g->past, "grew");
  EXPECT_EQ(g->progressive, "growing");
  EXPECT_EQ(g->perfect, "grown");
  EXPECT_EQ(g->distinct().size(), 4u);
  const auto w = vform_forms(verb("walk"), lex());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->perfect, "walked");
  EXPECT_EQ(w->distinct(), (std::vector<std::string>{"walk", "walked", "walking"}));
  EXPECT_FALSE(vform_forms(noun("cat"), lex()));
}

TEST(Synonyms, BankLookups) {
  const auto fun = synonyms(noun("fun"), lex());
  EXPECT_NE(std::find(fun.begin(), fun.end(), "merriment"), fun.end());
  const auto compared = synonyms(verb("compared"), lex());
  EXPECT_NE(std::find(compared.begin(), compared.end(), "liken"), compared.end());
  EXPECT_TRUE(synonyms(noun("xyzzy"), lex()).empty());
}

TEST(Synonyms, AtMostTenHeadwordExcluded) {
  const InflectionLexicon l = InflectionLexicon::parse(
      "", "", "big\tbig,large,great,huge,vast,giant,immense,massive,enormous,bulky,hefty,grand\n");
  const auto s = synonyms({"big", Pos::kAdj, 0}, l);
  ASSERT_EQ(s.size(), 10u);
  EXPECT_EQ(s.front(), "large");
  EXPECT_EQ(std::count(s.begin(), s.end(), "big"), 0);
}

TEST(Worder, WillNeverSwap) {
  const TaggedSentence s({{"will", Pos::kModal, 0}, {"never", Pos::kAdv, 1}, {"come", Pos::kVerb, 2}});
  EXPECT_EQ(worder_swap_target(s, 1), 0u);
  EXPECT_FALSE(worder_swap_target(s, 0));
}

TEST(Worder, NoEligibleNeighbor) {
  const TaggedSentence s({{"he", Pos::kOther, 0}, {"often", Pos::kAdv, 1}, {"runs", Pos::kVerb, 2}});
  EXPECT_FALSE(worder_swap_target(s, 1));
}

TEST(Worder, TiePrefersRight) {
  const TaggedSentence s({{"can", Pos::kModal, 0}, {"not", Pos::kAdv, 1}, {"will", Pos::kModal, 2}});
  EXPECT_EQ(worder_swap_target(s, 1), 2u);
}

// PL(SG(w)) = PL(w) and SG(PL(w)) = SG(w) for every lexicon noun.
TEST(Properties, NounRoundTripOverLexicon) {
  std::size_t n = 0;
  for (const std::string& w : res().pos.words_with(Pos::kNoun)) {
    const auto forms = noun_number_forms(noun(w), lex());
    if (!forms) continue;
    ++n;
    EXPECT_EQ(pluralize(singularize(forms->plural, lex()), lex()), forms->plural) << w;
    EXPECT_EQ(singularize(pluralize(forms->singular, lex()), lex()), forms->singular) << w;
    EXPECT_NE(forms->singular, forms->plural);
  }
  EXPECT_GT(n, 100u);
}

TEST(Properties, VerbFormsCoverAllKeys) {
  for (const std::string& w : res().pos.words_with(Pos::kVerb)) {
    const auto v = vform_forms(verb(w), lex());
    ASSERT_TRUE(v) << w;
    for (VerbForm f : {VerbForm::kPresent, VerbForm::kPast, VerbForm::kProgressive,
                       VerbForm::kPerfect}) {
      EXPECT_FALSE(v->get(f).empty()) << w;
    }
    if (const auto a = sva_forms(verb(w), lex())) {
      EXPECT_NE(a->third_sg, a->not_third) << w;
    }
  }
}

}  // namespace
}  // namespace gramattack
