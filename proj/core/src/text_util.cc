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
#include "gramattack/text_util.h"

#include <cctype>

namespace gramattack {

namespace {

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  // Bytes >= 0x80 belong to multi-byte UTF-8 letters; keep them in the core.
  return std::isalnum(u) || c == '\'' || c == '-' || u >= 0x80;
}

}  // namespace

SurfaceParts split_surface(std::string_view surface) {
  std::size_t begin = 0;
  while (begin < surface.size() && !is_word_char(surface[begin])) ++begin;
  std::size_t end = surface.size();
  while (end > begin && !is_word_char(surface[end - 1])) --end;
  // Trailing apostrophes and hyphens are punctuation, not part of the word.
  while (end > begin && (surface[end - 1] == '\'' || surface[end - 1] == '-')) {
    --end;
  }
  while (begin < end && (surface[begin] == '\'' || surface[begin] == '-')) {
    ++begin;
  }
  return {std::string(surface.substr(0, begin)),
          std::string(surface.substr(begin, end - begin)),
          std::string(surface.substr(end))};
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_punctuation(std::string_view surface) {
  for (char c : surface) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) return false;
  }
  return true;
}

Casing casing_of(std::string_view word) {
  bool any_upper = false;
  bool any_lower = false;
  bool first_upper = false;
  bool rest_lower = true;
  bool seen_letter = false;
  for (char c : word) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalpha(u)) continue;
    const bool upper = std::isupper(u) != 0;
    if (!seen_letter) {
      first_upper = upper;
      seen_letter = true;
    } else if (upper) {
      rest_lower = false;
    }
    any_upper |= upper;
    any_lower |= !upper;
  }
  if (!any_upper) return Casing::kLower;
  if (first_upper && rest_lower) return Casing::kTitle;
  if (!any_lower) return Casing::kUpper;
  return Casing::kMixed;
}

std::string apply_casing(std::string_view lower_word, Casing casing) {
  std::string out(lower_word);
  switch (casing) {
    case Casing::kLower:
    case Casing::kMixed:
      break;
    case Casing::kTitle:
      for (char& c : out) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
          c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
          break;
        }
      }
      break;
    case Casing::kUpper:
      for (char& c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
      break;
  }
  return out;
}

std::string restore_case(std::string_view original,
                         std::string_view replacement) {
  Casing casing = casing_of(original);
  // "A" / "I": one capital letter is a title-cased word, not shouting.
  if (casing == Casing::kUpper) {
    int letters = 0;
    for (char c : original) letters += std::isalpha(static_cast<unsigned char>(c)) ? 1 : 0;
    if (letters <= 1) casing = Casing::kTitle;
  }
  return apply_casing(to_lower(replacement), casing);
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace gramattack
