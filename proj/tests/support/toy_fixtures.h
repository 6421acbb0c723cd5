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

#ifndef GRAMATTACK_TESTS_TOY_FIXTURES_H_
#define GRAMATTACK_TESTS_TOY_FIXTURES_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gramattack/perturb.h"
#include "gramattack/resources.h"
#include "gramattack/text_model.h"
#include "gramattack/toy_oracle.h"

namespace gramattack::fixtures {

// Two-label ("0", "1") classifier whose label-1 logit is the sum of
// `weights` over the tokens; label 0 has no weights.
LinearClassifier keyword_oracle(const std::map<std::string, double>& weights);

// Sentiment-style classifier over labels "neg"/"pos". Function words carry
// small weights so grammatical edits can move the score.
LinearClassifier toy_sentiment_oracle();

// `n` generated review sentences (6 to 20 tokens) labelled with the toy
// oracle's prediction on the clean text. Same seed, same data.
std::vector<TaskInstance> toy_dataset(std::size_t n, std::uint64_t seed,
                                      const LanguageResources& res);

TaskInstance single(const std::string& id, const std::string& text, const std::string& label,
                    const PosLexicon& pos);

// Every operation the engine can apply to the mutable sentence in one step.
std::vector<Operation> all_single_ops(const TaskInstance& inst, const LanguageResources& res);

}  // namespace gramattack::fixtures

#endif  // GRAMATTACK_TESTS_TOY_FIXTURES_H_
