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

#ifndef GRAMATTACK_TESTS_REFERENCE_DATA_H_
#define GRAMATTACK_TESTS_REFERENCE_DATA_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gramattack/error_type.h"
#include "gramattack/morphology.h"

namespace gramattack::fixtures {

// Default confusion-set memberships, written out by hand.
std::map<ErrorType, std::set<std::string>> reference_memberships();

// One row of morphology_cases.tsv: function, input, expected output.
struct MorphCase {
  std::string fn;
  std::string input;
  std::string expected;
};

std::vector<MorphCase> load_morph_cases(const std::string& path);

// Runs the morphology call named by c.fn; "none" when it yields nothing.
std::string evaluate_morph_case(const MorphCase& c, const InflectionLexicon& lex);

// pairs_hand_counted.expected, fractions as written ("2/3").
struct HandCounts {
  std::map<ErrorType, std::string> distribution;
  struct Weight {
    ErrorType type;
    std::string from;
    std::string to;
    std::string value;
  };
  std::vector<Weight> weights;
};

HandCounts load_hand_counts(const std::string& path);

// "2/3" -> 0.666...
double parse_fraction(const std::string& text);

}  // namespace gramattack::fixtures

#endif  // GRAMATTACK_TESTS_REFERENCE_DATA_H_
