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
#ifndef GRAMATTACK_ERROR_TYPE_H_
#define GRAMATTACK_ERROR_TYPE_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace gramattack {

// The eight simulated grammatical error types, in the canonical table order
// used for every report column.
enum class ErrorType {
  kArtOrDet,
  kPrep,
  kTrans,
  kNn,
  kSVA,
  kVform,
  kWchoice,
  kWorder,
};

inline constexpr std::size_t kNumErrorTypes = 8;

inline constexpr std::array<ErrorType, kNumErrorTypes> kAllErrorTypes = {
    ErrorType::kArtOrDet, ErrorType::kPrep,  ErrorType::kTrans,
    ErrorType::kNn,       ErrorType::kSVA,   ErrorType::kVform,
    ErrorType::kWchoice,  ErrorType::kWorder,
};

inline constexpr std::size_t index_of(ErrorType type) {
  return static_cast<std::size_t>(type);
}

// "ArtOrDet", "Prep", ... as spelled in corpora and report headers.
std::string_view to_string(ErrorType type);

// Exact-match parse; nullopt for any tag outside the eight types.
std::optional<ErrorType> parse_error_type(std::string_view name);

// Types whose confusion sets hold literal tokens (and may contain epsilon).
inline constexpr bool is_lexical(ErrorType type) {
  return type == ErrorType::kArtOrDet || type == ErrorType::kPrep ||
         type == ErrorType::kTrans;
}

}  // namespace gramattack

#endif  // GRAMATTACK_ERROR_TYPE_H_
