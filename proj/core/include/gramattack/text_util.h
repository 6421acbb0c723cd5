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
#ifndef GRAMATTACK_TEXT_UTIL_H_
#define GRAMATTACK_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace gramattack {

// Tokens keep attached punctuation ("sleeps." / "(cat"); lookups operate on
// the alphabetic core and edits re-attach the affixes.
struct SurfaceParts {
  std::string prefix;
  std::string core;
  std::string suffix;

  std::string join() const { return prefix + core + suffix; }
};

SurfaceParts split_surface(std::string_view surface);

std::string to_lower(std::string_view text);

// True when the token has no letters or digits at all (",", "--", "...").
bool is_punctuation(std::string_view surface);

enum class Casing { kLower, kTitle, kUpper, kMixed };

Casing casing_of(std::string_view word);

// Re-applies `casing` to a lowercase word. kMixed leaves it unchanged.
std::string apply_casing(std::string_view lower_word, Casing casing);

// Replacement spelled with the capitalisation pattern of `original`.
// Single-letter uppercase originals ("A") count as Title.
std::string restore_case(std::string_view original,
                         std::string_view replacement);

// Whitespace tokenizer; never yields empty tokens.
std::vector<std::string> split_whitespace(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace gramattack

#endif  // GRAMATTACK_TEXT_UTIL_H_
