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
#include "gramattack/perturb.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "gramattack/error.h"
#include "gramattack/text_util.h"

namespace gramattack {
namespace {

constexpr std::array<std::string_view, 4> kOpKindNames = {"Substitute", "Insert",
                                                          "Delete", "Swap"};

// Words spelled with a leading vowel letter but read with a consonant sound,
// and the reverse.
constexpr std::array<std::string_view, 12> kConsonantSoundPrefixes = {
    "uni", "use", "usu", "uti", "ute", "uro", "eu", "ewe", "one", "once", "ubiq", "uk"};
constexpr std::array<std::string_view, 5> kSilentHPrefixes = {"hour", "honest", "honor",
                                                             "honour", "heir"};

bool starts_with(std::string_view w, std::string_view p) {
  return w.size() >= p.size() && w.substr(0, p.size()) == p;
}

bool vowel_sound(std::string_view lower) {
  if (lower.empty()) return false;
  for (std::string_view p : kSilentHPrefixes) {
    if (starts_with(lower, p)) return true;
  }
  for (std::string_view p : kConsonantSoundPrefixes) {
    if (starts_with(lower, p)) return false;
  }
  return std::string_view("aeiou").find(lower.front()) != std::string_view::npos;
}

// "a" / "an" follow the next word's first sound; other tokens pass through.
std::string agree_article(const std::string& token, const Token* next) {
  if ((token != "a" && token != "an") || next == nullptr) return token;
  return vowel_sound(to_lower(split_surface(next->surface).core)) ? "an" : "a";
}

std::string core_lower(const Token& t) { return to_lower(split_surface(t.surface).core); }

std::string respell(const Token& t, std::string_view lower_replacement) {
  SurfaceParts parts = split_surface(t.surface);
  parts.core = restore_case(parts.core, lower_replacement);
  return parts.join();
}

bool ends_clause(const Token& t) {
  const std::string& s = t.surface;
  return !s.empty() && std::string_view(",;:.!?").find(s.back()) != std::string_view::npos;
}

bool clause_start(const TaggedSentence& s, std::size_t g) {
  return g == 0 || ends_clause(s[g - 1]) || is_punctuation(s[g - 1].surface);
}

bool article_gap(const TaggedSentence& s, std::size_t g) {
  const Pos here = s[g].pos;
  if (here != Pos::kNoun && here != Pos::kAdj) return false;
  if (g == 0) return true;
  const Pos prev = s[g - 1].pos;
  return prev != Pos::kDet && prev != Pos::kAdj && prev != Pos::kNoun &&
         prev != Pos::kAdv;
}

bool head_gap(const TaggedSentence& s, std::size_t g) {
  const Pos here = s[g].pos;
  return (here == Pos::kNoun || here == Pos::kVerb) && clause_start(s, g);
}

// Candidate tokens for one slot with a/an agreement applied and the weights
// of collapsed duplicates summed. Order follows the first occurrence.
std::vector<WeightedToken> agreed_candidates(const ConfusionSet& set,
                                             std::string_view from, const Token* next) {
  std::vector<WeightedToken> out;
  for (const WeightedToken& c : candidates(set, from)) {
    const std::string tok =
        set.type() == ErrorType::kArtOrDet ? agree_article(c.token, next) : c.token;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const WeightedToken& o) { return o.token == tok; });
    if (it == out.end()) {
      out.push_back({tok, c.weight});
    } else {
      it->weight += c.weight;
    }
  }
  return out;
}

void add_lexical_ops(const TaggedSentence& s, std::size_t i, const ConfusionSet& set,
                     std::vector<Operation>& ops) {
  const Token& tok = s[i];
  const std::string from = core_lower(tok);
  if (from.empty()) return;
  const Token* next = i + 1 < s.size() ? &s[i + 1] : nullptr;
  for (const WeightedToken& c : agreed_candidates(set, from, next)) {
    if (c.token == kEpsilon) {
      if (s.size() < 2) continue;
      ops.push_back({OpKind::kDelete, i, "", 0, set.type(), tok.surface, c.weight});
      continue;
    }
    if (c.token == from) continue;
    std::string surface = respell(tok, c.token);
    if (surface == tok.surface) continue;
    ops.push_back({OpKind::kSubstitute, i, std::move(surface), 0, set.type(), tok.surface,
                   c.weight});
  }
}

void add_insertions(const TaggedSentence& s, std::size_t g, const ConfusionSet& set,
                    std::vector<Operation>& ops) {
  for (const WeightedToken& c : agreed_candidates(set, kEpsilon, &s[g])) {
    if (c.token == kEpsilon) continue;
    ops.push_back({OpKind::kInsert, g, c.token, 0, set.type(), "", c.weight});
  }
}

void add_substitution(const Token& tok, std::string_view lower, ErrorType type,
                      std::vector<Operation>& ops) {
  if (lower.empty() || lower == core_lower(tok)) return;
  std::string surface = respell(tok, lower);
  if (surface == tok.surface) return;
  ops.push_back({OpKind::kSubstitute, tok.index, std::move(surface), 0, type, tok.surface,
                 1.0});
}

bool same_edit(const Operation& a, const Operation& b) {
  return a.kind == b.kind && a.position == b.position && a.replacement == b.replacement &&
         a.swap_with == b.swap_with;
}

std::ptrdiff_t coordinate(const Operation& op) {
  switch (op.kind) {
    case OpKind::kInsert:
      return 2 * static_cast<std::ptrdiff_t>(op.position) - 1;
    case OpKind::kSwap:
      return 2 * static_cast<std::ptrdiff_t>(std::min(op.position, op.swap_with));
    default:
      return 2 * static_cast<std::ptrdiff_t>(op.position);
  }
}

void check_fits(const TaggedSentence& s, const Operation& op) {
  const std::size_t n = s.size();
  const auto stale = [&](const std::string& why) {
    throw ValidationError("stale operation: " + why);
  };
  if (op.kind == OpKind::kInsert) {
    if (op.position > n) stale("insertion gap " + std::to_string(op.position) + " out of range");
    if (op.replacement.empty() ||
        op.replacement.find_first_of(" \t\r\n") != std::string::npos) {
      throw ValidationError("insertion needs a single non-empty token");
    }
    return;
  }
  if (op.position >= n) stale("position " + std::to_string(op.position) + " out of range");
  if (!op.original.empty() && s[op.position].surface != op.original) {
    stale("expected '" + op.original + "' at " + std::to_string(op.position) + ", found '" +
          s[op.position].surface + "'");
  }
  if (op.kind == OpKind::kSwap) {
    const std::size_t q = op.swap_with;
    if (q >= n || (q + 1 != op.position && op.position + 1 != q)) {
      stale("swap partner " + std::to_string(q) + " is not adjacent");
    }
  }
  if (op.kind == OpKind::kSubstitute &&
      (op.replacement.empty() || op.replacement.find_first_of(" \t\r\n") != std::string::npos)) {
    throw ValidationError("substitution needs a single non-empty token");
  }
}

// Edits `tokens` in place. With `pos` set, new surfaces are re-tagged.
void edit_tokens(std::vector<Token>& tokens, const Operation& op, const PosLexicon* pos) {
  switch (op.kind) {
    case OpKind::kSubstitute: {
      Token& t = tokens.at(op.position);
      t.surface = op.replacement;
      if (pos != nullptr) t.pos = tag_word(t.surface, *pos);
      break;
    }
    case OpKind::kInsert: {
      Token t{op.replacement, Pos::kOther, 0};
      if (pos != nullptr) t.pos = tag_word(t.surface, *pos);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(op.position), std::move(t));
      break;
    }
    case OpKind::kDelete:
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(op.position));
      break;
    case OpKind::kSwap:
      std::swap(tokens.at(op.position), tokens.at(op.swap_with));
      break;
  }
}

std::set<std::size_t> remap_frozen(const std::set<std::size_t>& frozen, const Operation& op) {
  std::set<std::size_t> out;
  for (std::size_t f : frozen) {
    if (op.kind == OpKind::kInsert && f >= op.position) {
      out.insert(f + 1);
    } else if (op.kind == OpKind::kDelete && f > op.position) {
      out.insert(f - 1);
    } else {
      out.insert(f);
    }
  }
  return out;
}

std::vector<const Operation*> descending(std::span<const Operation> ops) {
  std::vector<const Operation*> order;
  for (const Operation& op : ops) order.push_back(&op);
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (regions_overlap(*order[a], *order[b])) {
        throw ValidationError("operations overlap at token " +
                              std::to_string(edit_region(*order[a]).front()));
      }
    }
  }
  std::stable_sort(order.begin(), order.end(), [](const Operation* a, const Operation* b) {
    return coordinate(*a) > coordinate(*b);
  });
  return order;
}

}  // namespace

std::string_view to_string(OpKind kind) { return kOpKindNames[static_cast<int>(kind)]; }

std::optional<OpKind> parse_op_kind(std::string_view name) {
  for (std::size_t i = 0; i < kOpKindNames.size(); ++i) {
    if (kOpKindNames[i] == name) return static_cast<OpKind>(i);
  }
  return std::nullopt;
}

bool canonical_less(const Operation& a, const Operation& b) {
  return std::tie(a.kind, a.position, a.replacement, a.swap_with, a.error_type) <
         std::tie(b.kind, b.position, b.replacement, b.swap_with, b.error_type);
}

std::vector<std::size_t> edit_region(const Operation& op) {
  if (op.kind == OpKind::kSwap) {
    return {std::min(op.position, op.swap_with), std::max(op.position, op.swap_with)};
  }
  return {op.position};
}

bool regions_overlap(const Operation& a, const Operation& b) {
  for (std::size_t x : edit_region(a)) {
    for (std::size_t y : edit_region(b)) {
      if (x == y) return true;
    }
  }
  return false;
}

std::size_t OperationSet::size() const {
  std::size_t n = 0;
  for (const auto& ops : by_token) n += ops.size();
  return n;
}

std::vector<Operation> OperationSet::all() const {
  std::vector<Operation> out;
  for (const auto& ops : by_token) out.insert(out.end(), ops.begin(), ops.end());
  return out;
}

OperationSet build_operation_sets(const TaggedSentence& s, const ConfusionMap& sets,
                                  const InflectionLexicon& lex) {
  OperationSet result;
  result.by_token.resize(s.size());
  const auto set_of = [&](ErrorType t) -> const ConfusionSet* {
    const auto it = sets.find(t);
    return it == sets.end() ? nullptr : &it->second;
  };
  constexpr std::array<ErrorType, 3> kLexical = {ErrorType::kArtOrDet, ErrorType::kPrep,
                                                 ErrorType::kTrans};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_frozen(i)) continue;
    const Token& tok = s[i];
    std::vector<Operation> ops;

    for (ErrorType t : kLexical) {
      const ConfusionSet* set = set_of(t);
      if (set == nullptr) continue;
      add_lexical_ops(s, i, *set, ops);
      const bool gap_ok = t == ErrorType::kArtOrDet ? article_gap(s, i) : head_gap(s, i);
      if (gap_ok) add_insertions(s, i, *set, ops);
    }
    if (set_of(ErrorType::kNn) != nullptr) {
      if (auto forms = noun_number_forms(tok, lex)) {
        const std::string w = core_lower(tok);
        add_substitution(tok, w == forms->singular ? forms->plural : forms->singular,
                         ErrorType::kNn, ops);
      }
    }
    if (set_of(ErrorType::kSVA) != nullptr) {
      if (auto forms = sva_forms(tok, lex)) {
        const std::string w = core_lower(tok);
        if (w == forms->third_sg) {
          add_substitution(tok, forms->not_third, ErrorType::kSVA, ops);
        } else if (w == forms->not_third) {
          add_substitution(tok, forms->third_sg, ErrorType::kSVA, ops);
        }
      }
    }
    if (set_of(ErrorType::kVform) != nullptr) {
      if (auto forms = vform_forms(tok, lex)) {
        for (const std::string& f : forms->distinct()) {
          add_substitution(tok, f, ErrorType::kVform, ops);
        }
      }
    }
    if (set_of(ErrorType::kWchoice) != nullptr &&
        (tok.pos == Pos::kNoun || tok.pos == Pos::kVerb || tok.pos == Pos::kAdj ||
         tok.pos == Pos::kAdv)) {
      for (const std::string& syn : synonyms(tok, lex)) {
        add_substitution(tok, syn, ErrorType::kWchoice, ops);
      }
    }
    if (set_of(ErrorType::kWorder) != nullptr) {
      if (auto j = worder_swap_target(s, i); j && !s.is_frozen(*j) &&
                                              s[*j].surface != tok.surface) {
        ops.push_back({OpKind::kSwap, i, "", *j, ErrorType::kWorder, tok.surface, 1.0});
      }
    }

    std::stable_sort(ops.begin(), ops.end(), canonical_less);
    std::vector<Operation>& kept = result.by_token[i];
    for (Operation& op : ops) {
      const bool dup = std::any_of(kept.begin(), kept.end(),
                                   [&](const Operation& k) { return same_edit(k, op); });
      if (!dup) kept.push_back(std::move(op));
    }
  }
  return result;
}

TaggedSentence apply(const TaggedSentence& sentence, const Operation& op,
                     const PosLexicon& pos) {
  check_fits(sentence, op);
  const std::vector<std::size_t> region = edit_region(op);
  std::vector<std::size_t> touched;
  for (std::size_t r : region) {
    if (r < sentence.size()) touched.push_back(r);
  }
  assert_not_frozen(sentence, touched);
  if (op.kind == OpKind::kDelete && sentence.size() == 1) {
    throw ValidationError("cannot delete the only token");
  }
  std::vector<Token> tokens = sentence.tokens();
  edit_tokens(tokens, op, &pos);
  return TaggedSentence(std::move(tokens), remap_frozen(sentence.frozen(), op));
}

TaggedSentence apply_all(const TaggedSentence& sentence, std::span<const Operation> ops,
                         const PosLexicon& pos) {
  TaggedSentence current = sentence;
  for (const Operation* op : descending(ops)) {
    if (op->kind == OpKind::kDelete && current.size() == 1) {
      throw ValidationError("operations delete every token");
    }
    current = apply(current, *op, pos);
  }
  return current;
}

std::vector<std::string> render(const TaggedSentence& sentence,
                                std::span<const Operation> ops) {
  std::vector<Token> tokens = sentence.tokens();
  for (const Operation* op : descending(ops)) {
    check_fits(sentence, *op);
    edit_tokens(tokens, *op, nullptr);
  }
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (Token& t : tokens) out.push_back(std::move(t.surface));
  return out;
}

std::vector<std::ptrdiff_t> source_indices(std::size_t n, std::span<const Operation> ops) {
  std::vector<std::ptrdiff_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::ptrdiff_t>(i);
  for (const Operation* op : descending(ops)) {
    const bool in_range = op->kind == OpKind::kInsert ? op->position <= n : op->position < n;
    if (!in_range || (op->kind == OpKind::kSwap && op->swap_with >= n)) {
      throw ValidationError("stale operation: position out of range");
    }
    switch (op->kind) {
      case OpKind::kSubstitute:
        break;
      case OpKind::kInsert:
        ids.insert(ids.begin() + static_cast<std::ptrdiff_t>(op->position), -1);
        break;
      case OpKind::kDelete:
        ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(op->position));
        break;
      case OpKind::kSwap:
        std::swap(ids[op->position], ids[op->swap_with]);
        break;
    }
  }
  return ids;
}

Perturbation probabilistic_transform(const TaggedSentence& sentence,
                                     const ErrorDistribution& dist,
                                     const LanguageResources& res, std::size_t n_errors,
                                     Rng& rng) {
  if (n_errors == 0) throw ValidationError("n_errors must be at least 1");
  dist.validate();
  TaggedSentence work = sentence;
  std::vector<bool> touched(work.size(), false);
  std::vector<Operation> applied;

  for (std::size_t round = 0; round < n_errors; ++round) {
    std::set<std::size_t> blocked = work.frozen();
    for (std::size_t i = 0; i < touched.size(); ++i) {
      if (touched[i]) blocked.insert(i);
    }
    const TaggedSentence view(work.tokens(), blocked);
    const std::vector<Operation> ops =
        build_operation_sets(view, res.confusions, res.inflections).all();

    std::array<double, kNumErrorTypes> mass = dist.probs;
    std::optional<ErrorType> chosen;
    while (true) {
      double left = 0.0;
      for (double m : mass) left += m;
      if (!(left > 0.0)) break;
      const ErrorType t = kAllErrorTypes[sample_weighted(rng, mass)];
      const bool any = std::any_of(ops.begin(), ops.end(),
                                   [&](const Operation& op) { return op.error_type == t; });
      if (any) {
        chosen = t;
        break;
      }
      mass[index_of(t)] = 0.0;
    }
    if (!chosen) {
      if (round == 0) throw ValidationError("sentence admits no perturbation");
      break;
    }

    // Slots: a token, or the gap before a token. Ops arrive grouped by owner
    // and in canonical order, so slot order is deterministic.
    std::vector<std::pair<bool, std::size_t>> slots;
    for (const Operation& op : ops) {
      if (op.error_type != *chosen) continue;
      const std::pair<bool, std::size_t> key{op.kind == OpKind::kInsert, op.position};
      if (std::find(slots.begin(), slots.end(), key) == slots.end()) slots.push_back(key);
    }
    const auto slot = slots[uniform_index(rng, slots.size())];
    std::vector<const Operation*> pool;
    std::vector<double> weights;
    for (const Operation& op : ops) {
      if (op.error_type == *chosen && (op.kind == OpKind::kInsert) == slot.first &&
          op.position == slot.second) {
        pool.push_back(&op);
        weights.push_back(op.weight);
      }
    }
    const Operation op = *pool[sample_weighted(rng, weights)];

    work = apply(work, op, res.pos);
    switch (op.kind) {
      case OpKind::kSubstitute:
        touched[op.position] = true;
        break;
      case OpKind::kInsert:
        touched.insert(touched.begin() + static_cast<std::ptrdiff_t>(op.position), true);
        break;
      case OpKind::kDelete:
        touched.erase(touched.begin() + static_cast<std::ptrdiff_t>(op.position));
        touched[op.position < touched.size() ? op.position : touched.size() - 1] = true;
        break;
      case OpKind::kSwap:
        touched[op.position] = true;
        touched[op.swap_with] = true;
        break;
    }
    applied.push_back(op);
  }

  Perturbation out{std::move(work), std::move(applied), {}};
  for (std::size_t i = 0; i < touched.size(); ++i) {
    if (touched[i]) out.error_positions.push_back(i);
  }
  return out;
}

std::size_t probe_error_count(std::size_t length) {
  return std::max<std::size_t>(1, (3 * length + 50) / 100);
}

ProbeDataset build_probe_dataset(std::span<const TaggedSentence> clean,
                                 const LanguageResources& res, ErrorType target,
                                 Rng& rng) {
  ProbeDataset out;
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const std::size_t n = clean[i].size();
    if (n < kProbeMinTokens || n > kProbeMaxTokens) {
      out.warnings.push_back("sentence " + std::to_string(i) + " skipped: " +
                             std::to_string(n) + " tokens is outside [" +
                             std::to_string(kProbeMinTokens) + ", " +
                             std::to_string(kProbeMaxTokens) + "]");
      continue;
    }
    usable.push_back(i);
  }
  if (usable.size() < 2) {
    throw ValidationError("probe dataset needs at least 2 sentences of " +
                          std::to_string(kProbeMinTokens) + "-" +
                          std::to_string(kProbeMaxTokens) + " tokens");
  }

  const std::size_t n = usable.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
  const std::uint64_t base = rng();

  const ErrorDistribution dist = ErrorDistribution::point(target);
  std::map<std::size_t, Perturbation> corrupted;  // keyed by position in usable
  std::set<std::size_t> inapplicable;
  const auto try_corrupt = [&](std::size_t u) -> bool {
    if (inapplicable.count(u)) return false;
    const TaggedSentence& s = clean[usable[u]];
    Rng local(derive_seed(base, u));
    try {
      corrupted.emplace(u, probabilistic_transform(s, dist, res, probe_error_count(s.size()),
                                                   local));
      return true;
    } catch (const ValidationError&) {
      inapplicable.insert(u);
      return false;
    }
  };

  const std::size_t half = n / 2;
  for (std::size_t slot = 0; slot < half; ++slot) {
    if (try_corrupt(order[slot])) continue;
    bool replaced = false;
    for (std::size_t later = half; later < n && !replaced; ++later) {
      if (try_corrupt(order[later])) {
        std::swap(order[slot], order[later]);
        replaced = true;
      }
    }
    if (!replaced) {
      out.warnings.push_back("sentence " + std::to_string(usable[order[slot]]) + " admits no " +
                             std::string(to_string(target)) +
                             " error and no replacement is left; it stays clean");
    }
  }

  for (std::size_t u = 0; u < n; ++u) {
    ProbeItem item{usable[u], clean[usable[u]], std::string(kAcceptable), {}, {}};
    if (auto it = corrupted.find(u); it != corrupted.end()) {
      item.sentence = it->second.sentence;
      item.label = std::string(kUnacceptable);
      item.error_positions = it->second.error_positions;
      item.ops = it->second.ops;
    }
    out.items.push_back(std::move(item));
  }
  return out;
}

}  // namespace gramattack
