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

#ifndef GRAMATTACK_RANDOM_H_
#define GRAMATTACK_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace gramattack {

// The engine uses mt19937_64 directly rather than std:: distributions, whose
// output is implementation-defined. Everything below depends only on the raw
// engine stream, so seeded runs are reproducible across standard libraries.
using Rng = std::mt19937_64;

// Uniform integer in [0, n). Rejection sampling, no modulo bias.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t range = n;
  const std::uint64_t limit = Rng::max() - (Rng::max() % range);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % range);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index drawn with probability proportional to weights. Weights must be
// non-negative with a positive sum.
inline std::size_t sample_weighted(Rng& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("sample_weighted: zero mass");
  const double target = uniform_unit(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

// Per-item seed so that parallel and serial batch runs agree.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return base ^ index;
}

}  // namespace gramattack

#endif  // GRAMATTACK_RANDOM_H_
