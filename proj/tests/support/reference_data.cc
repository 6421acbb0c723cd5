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

#include "reference_data.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gramattack/confusion.h"

namespace gramattack::fixtures {

std::map<ErrorType, std::set<std::string>> reference_memberships() {
  using Set = std::set<std::string>;
  const std::string eps(kEpsilon);
  std::map<ErrorType, Set> out;
  out[ErrorType::kArtOrDet] = Set{"a", "an", "the", eps};
  out[ErrorType::kPrep] = Set{"on",     "in",         "at",     "from",    "for",   "under",
                              "over",   "with",       "into",   "during",  "until", "against",
                              "among",  "throughout", "to",     "by",      "about", "like",
                              "before", "across",     "behind", "but",     "out",   "up",
                              "after",  "since",      "down",   "off",     "of",    eps};
  out[ErrorType::kTrans] = Set{"and",     "but",       "so",       "however", "as",
                               "that",    "thus",      "also",     "because", "therefore",
                               "if",      "although",  "which",    "where",   "moreover",
                               "besides", "of",        eps};
  out[ErrorType::kNn] = Set{std::string("SG"), std::string("PL")};
  out[ErrorType::kSVA] = Set{std::string("3SG"), std::string("not 3SG")};
  out[ErrorType::kVform] = Set{"Present", "Past", "Progressive", "Perfect"};
  out[ErrorType::kWchoice] = Set{std::string("Ten synonyms from WordNet Synsets")};
  out[ErrorType::kWorder] = Set{"Adverb w/ Adjective", "Participle", "Modal"};
  return out;
}

std::vector<MorphCase> load_morph_cases(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<MorphCase> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    MorphCase c;
    std::getline(row, c.fn, '\t');
    std::getline(row, c.input, '\t');
    std::getline(row, c.expected, '\t');
    out.push_back(c);
  }
  return out;
}

std::string evaluate_morph_case(const MorphCase& c, const InflectionLexicon& lex) {
  const Token verb{c.input, Pos::kVerb, 0};
  const auto or_none = [](const auto& opt, auto field) -> std::string {
    return opt ? field(*opt) : "none";
  };
  if (c.fn == "plural") return pluralize(c.input, lex);
  if (c.fn == "singular") return singularize(c.input, lex);
  if (c.fn == "third") return or_none(sva_forms(verb, lex), [](auto& f) { return f.third_sg; });
  if (c.fn == "base") return or_none(sva_forms(verb, lex), [](auto& f) { return f.not_third; });
  if (c.fn == "past") return or_none(vform_forms(verb, lex), [](auto& f) { return f.past; });
  if (c.fn == "perfect") return or_none(vform_forms(verb, lex), [](auto& f) { return f.perfect; });
  if (c.fn == "ing") return or_none(vform_forms(verb, lex), [](auto& f) { return f.progressive; });
  if (c.fn == "lemma") return analyze_verb(c.input, lex).lemma;
  if (c.fn == "nn") {
    return or_none(noun_number_forms({c.input, Pos::kNoun, 0}, lex),
                   [](auto& f) { return f.singular + "/" + f.plural; });
  }
  return "unknown function " + c.fn;
}

HandCounts load_hand_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  HandCounts out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string kind, type_name;
    std::getline(row, kind, '\t');
    std::getline(row, type_name, '\t');
    const auto type = parse_error_type(type_name);
    if (!type) throw std::runtime_error("bad error type in " + path + ": " + type_name);
    if (kind == "distribution") {
      std::getline(row, out.distribution[*type], '\t');
    } else {
      HandCounts::Weight w{*type, {}, {}, {}};
      std::getline(row, w.from, '\t');
      std::getline(row, w.to, '\t');
      std::getline(row, w.value, '\t');
      out.weights.push_back(w);
    }
  }
  return out;
}

double parse_fraction(const std::string& text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

}  // namespace gramattack::fixtures
