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
#include "gramattack/error_type.h"

namespace gramattack {

namespace {

constexpr std::array<std::string_view, kNumErrorTypes> kNames = {
    "ArtOrDet", "Prep", "Trans", "Nn", "SVA", "Vform", "Wchoice", "Worder",
};

}  // namespace

std::string_view to_string(ErrorType type) { return kNames[index_of(type)]; }

std::optional<ErrorType> parse_error_type(std::string_view name) {
  for (ErrorType type : kAllErrorTypes) {
    if (kNames[index_of(type)] == name) return type;
  }
  return std::nullopt;
}

}  // namespace gramattack
