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
#ifndef GRAMATTACK_RESOURCES_H_
#define GRAMATTACK_RESOURCES_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "gramattack/confusion.h"
#include "gramattack/morphology.h"
#include "gramattack/pos_tagger.h"

namespace gramattack {

// Everything the perturbation engine needs besides the victim model.
struct LanguageResources {
  PosLexicon pos;
  InflectionLexicon inflections;
  ConfusionMap confusions = default_sets();
  ErrorDistribution distribution = ErrorDistribution::uniform();

  // Lexicons compiled into the library.
  static LanguageResources bundled();

  // Reads the five lexicon files from `dir`; a missing file falls back to
  // the bundled copy.
  static LanguageResources from_directory(const std::filesystem::path& dir);

  // Learned sets override the defaults type by type; the file's
  // distribution replaces the current one.
  void apply(const ConfusionFile& file);
};

// Makes the two lexicons agree: irregular forms become known POS entries and
// NOUN / VERB lexicon words become known stems for lemmatization.
void link_lexicons(PosLexicon& pos, InflectionLexicon& inflections);

// Raw text of a bundled data file ("pos_lexicon.tsv", ...). Throws
// std::out_of_range for an unknown name.
std::string_view bundled_file(std::string_view name);

}  // namespace gramattack

#endif  // GRAMATTACK_RESOURCES_H_
