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
#include "gramattack/attack.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "gramattack/error.h"
#include "gramattack/random.h"
#include "gramattack/text_util.h"

namespace gramattack {
namespace {

constexpr std::array<std::string_view, 3> kAlgorithmNames = {"greedy", "beam", "genetic"};

using Stream = std::vector<Operation>;

// Ops from `pool` whose region is free in `stream`.
std::vector<Operation> available(const std::vector<Operation>& pool, const Stream& stream) {
  std::vector<Operation> out;
  for (const Operation& op : pool) {
    const bool clash = std::any_of(stream.begin(), stream.end(), [&](const Operation& s) {
      return regions_overlap(s, op);
    });
    if (!clash) out.push_back(op);
  }
  return out;
}

// Index of the flipped stream with the lowest p_gold, else of the lowest
// p_gold strictly below `beat`. Ties go to the earliest stream.
std::optional<std::size_t> pick_best(const std::vector<GoldScore>& scores, double beat) {
  std::optional<std::size_t> flip;
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (scores[k].flipped && (!flip || scores[k].p_gold < scores[*flip].p_gold)) flip = k;
    if (scores[k].p_gold < beat && (!best || scores[k].p_gold < scores[*best].p_gold)) best = k;
  }
  return flip ? flip : best;
}

void finish(AttackResult& r, const LanguageResources& res, bool success, Stream ops,
            std::vector<double> trace, double p_final) {
  r.success = success;
  r.step_gold_probs = std::move(trace);
  if (success) {
    r.adversarial = apply_all(r.original, ops, res.pos);
    r.modified_fraction =
        static_cast<double>(ops.size()) / static_cast<double>(r.original.size());
    r.final_gold_prob = p_final;
    r.best_effort_gold_prob = p_final;
    r.applied_ops = std::move(ops);
  } else {
    r.adversarial = r.original;
    r.modified_fraction = 0.0;
    r.final_gold_prob = r.initial_gold_prob;
    r.best_effort_gold_prob = ops.empty() ? r.initial_gold_prob : p_final;
    r.best_effort_ops = std::move(ops);
  }
}

void require_correct(const TaskInstance& inst, bool flipped) {
  if (flipped) {
    throw ValidationError("instance " + inst.id + " is already misclassified by the oracle");
  }
}

Stream sorted_stream(Stream s) {
  std::sort(s.begin(), s.end(), canonical_less);
  return s;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  return kAlgorithmNames[static_cast<int>(algorithm)];
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (std::size_t i = 0; i < kAlgorithmNames.size(); ++i) {
    if (kAlgorithmNames[i] == name) return static_cast<Algorithm>(i);
  }
  return std::nullopt;
}

void AttackConfig::validate() const {
  if (!(budget_fraction > 0.0 && budget_fraction <= 1.0)) {
    throw ValidationError("budget fraction must be in (0, 1], got " +
                          std::to_string(budget_fraction));
  }
  if (beam_size < 1) throw ValidationError("beam size must be >= 1");
  if (population < 2) throw ValidationError("population must be >= 2");
  if (!(generation_fraction > 0.0) || !std::isfinite(generation_fraction)) {
    throw ValidationError("generation fraction must be > 0");
  }
}

std::size_t budget(std::size_t n, double fraction) {
  if (n == 0) throw ValidationError("budget of an empty sentence");
  // The epsilon keeps products such as 0.15 * 20 from landing just under 3.
  const double raw = std::floor(fraction * static_cast<double>(n) + 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

std::size_t generation_count(std::size_t n, double fraction) {
  const double raw = std::round(fraction * static_cast<double>(n));
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

InstanceScorer::InstanceScorer(const TaskInstance& instance, Oracle& oracle)
    : instance_(instance), oracle_(oracle) {
  instance_.validate();
}

OracleInput InstanceScorer::input_for(std::span<const Operation> ops) const {
  std::vector<std::string> texts;
  for (std::size_t s = 0; s < instance_.segments.size(); ++s) {
    if (s == instance_.mutable_segment) {
      texts.push_back(join_tokens(render(instance_.segments[s], ops)));
    } else {
      texts.push_back(instance_.segments[s].text());
    }
  }
  OracleInput in{texts.at(0), std::nullopt};
  if (texts.size() > 1) in.text_b = texts[1];
  return in;
}

GoldScore InstanceScorer::score(std::span<const Operation> ops,
                                const Prediction& prediction) const {
  const auto gold_of = [](const LabelProbs& probs, const std::string& gold) {
    const auto it = probs.find(gold);
    if (it == probs.end()) {
      throw OracleError("gold label '" + gold + "' is not among the oracle's labels", false);
    }
    bool beaten = false;
    for (const auto& [label, p] : probs) {
      if (label != gold && p > it->second) beaten = true;
    }
    return GoldScore{it->second, beaten};
  };

  if (instance_.kind != TaskKind::kTagging) {
    if (prediction.tagging()) {
      throw OracleError("oracle returned token rows for a sequence task", false);
    }
    return gold_of(prediction.probs, instance_.gold_label);
  }

  const TaggedSentence& s = instance_.mutable_sentence();
  const std::vector<std::ptrdiff_t> src = source_indices(s.size(), ops);
  if (prediction.token_probs.size() != src.size()) {
    throw OracleError("oracle returned " + std::to_string(prediction.token_probs.size()) +
                          " token rows for " + std::to_string(src.size()) + " tokens",
                      false);
  }
  GoldScore out;
  std::size_t counted = 0;
  double total = 0.0;
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (src[j] < 0 || s.is_frozen(static_cast<std::size_t>(src[j]))) continue;
    const GoldScore g =
        gold_of(prediction.token_probs[j], instance_.token_labels[static_cast<std::size_t>(src[j])]);
    total += g.p_gold;
    out.flipped = out.flipped || g.flipped;
    ++counted;
  }
  out.p_gold = counted == 0 ? 0.0 : total / static_cast<double>(counted);
  return out;
}

GoldScore InstanceScorer::evaluate(std::span<const Operation> ops) {
  const OracleInput in = input_for(ops);
  const std::vector<Prediction> pred = predict_all(oracle_, std::span(&in, 1));
  ++queries_;
  return score(ops, pred.at(0));
}

std::vector<GoldScore> InstanceScorer::evaluate_batch(
    const std::vector<std::vector<Operation>>& streams) {
  if (streams.empty()) return {};
  std::vector<OracleInput> inputs;
  inputs.reserve(streams.size());
  for (const Stream& s : streams) inputs.push_back(input_for(s));
  const std::vector<Prediction> preds = predict_all(oracle_, inputs);
  queries_ += streams.size();
  std::vector<GoldScore> out;
  out.reserve(streams.size());
  for (std::size_t k = 0; k < streams.size(); ++k) out.push_back(score(streams[k], preds[k]));
  return out;
}

Importance token_importance(const TaskInstance& instance, Oracle& oracle) {
  InstanceScorer sc(instance, oracle);
  const TaggedSentence& s = instance.mutable_sentence();
  std::vector<std::size_t> mutable_idx;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.is_frozen(i)) mutable_idx.push_back(i);
  }
  if (mutable_idx.empty()) throw ValidationError("nothing mutable in instance " + instance.id);

  Importance imp;
  const GoldScore orig = sc.evaluate({});
  imp.p_original = orig.p_gold;
  imp.flipped_original = orig.flipped;
  imp.drop.assign(s.size(), 0.0);

  std::vector<Stream> streams;
  for (std::size_t i : mutable_idx) {
    streams.push_back({Operation{OpKind::kDelete, i, "", 0, ErrorType::kArtOrDet,
                                 s[i].surface, 1.0}});
  }
  if (s.size() == 1) {
    try {
      imp.drop[0] = orig.p_gold - sc.evaluate(streams[0]).p_gold;
    } catch (const OracleError& e) {
      if (e.retriable()) throw;
      imp.drop[0] = 0.0;  // the oracle refuses empty text
    }
  } else {
    const std::vector<GoldScore> scores = sc.evaluate_batch(streams);
    for (std::size_t k = 0; k < mutable_idx.size(); ++k) {
      imp.drop[mutable_idx[k]] = orig.p_gold - scores[k].p_gold;
    }
  }
  imp.order = mutable_idx;
  std::stable_sort(imp.order.begin(), imp.order.end(), [&](std::size_t a, std::size_t b) {
    return imp.drop[a] > imp.drop[b];
  });
  imp.queries = sc.queries();
  return imp;
}

AttackResult::AttackResult(const TaskInstance& instance)
    : id(instance.id),
      original(instance.mutable_sentence()),
      adversarial(instance.mutable_sentence()) {}

AttackResult greedy_attack(const TaskInstance& instance, Oracle& oracle,
                           const LanguageResources& res, const AttackConfig& cfg) {
  cfg.validate();
  return greedy_attack(instance, oracle, res, cfg, token_importance(instance, oracle));
}

AttackResult greedy_attack(const TaskInstance& instance, Oracle& oracle,
                           const LanguageResources& res, const AttackConfig& cfg,
                           const Importance& imp) {
  cfg.validate();
  require_correct(instance, imp.flipped_original);
  AttackResult r(instance);
  r.initial_gold_prob = imp.p_original;
  r.budget = budget(r.original.size(), cfg.budget_fraction);
  const OperationSet set = build_operation_sets(r.original, res.confusions, res.inflections);
  InstanceScorer sc(instance, oracle);

  Stream applied;
  std::vector<double> trace;
  double p_cur = imp.p_original;
  bool success = false;
  for (std::size_t i : imp.order) {
    if (applied.size() >= r.budget) break;
    const std::vector<Operation> cands = available(set.by_token[i], applied);
    if (cands.empty()) continue;
    std::vector<Stream> streams;
    for (const Operation& op : cands) {
      streams.push_back(applied);
      streams.back().push_back(op);
    }
    const std::vector<GoldScore> scores = sc.evaluate_batch(streams);
    const std::optional<std::size_t> best = pick_best(scores, p_cur);
    if (!best) continue;
    applied.push_back(cands[*best]);
    p_cur = scores[*best].p_gold;
    trace.push_back(p_cur);
    if (scores[*best].flipped) {
      success = true;
      break;
    }
  }
  finish(r, res, success, std::move(applied), std::move(trace), p_cur);
  r.oracle_queries = imp.queries + sc.queries();
  return r;
}

AttackResult beam_attack(const TaskInstance& instance, Oracle& oracle,
                         const LanguageResources& res, const AttackConfig& cfg) {
  cfg.validate();
  const Importance imp = token_importance(instance, oracle);
  require_correct(instance, imp.flipped_original);
  AttackResult r(instance);
  r.initial_gold_prob = imp.p_original;
  r.budget = budget(r.original.size(), cfg.budget_fraction);
  const OperationSet set = build_operation_sets(r.original, res.confusions, res.inflections);
  InstanceScorer sc(instance, oracle);

  struct Entry {
    Stream ops;
    std::vector<double> trace;
    double p = 0.0;
  };
  std::vector<Entry> beam{{{}, {}, imp.p_original}};

  for (std::size_t i : imp.order) {
    // Candidates in expansion order; fresh ones wait for their score.
    std::vector<Entry> next;
    std::vector<std::size_t> fresh_slot;
    std::vector<Stream> streams;
    for (const Entry& e : beam) {
      const std::vector<Operation> cands =
          e.ops.size() < r.budget ? available(set.by_token[i], e.ops) : std::vector<Operation>{};
      if (cfg.beam_allow_skip || cands.empty()) next.push_back(e);
      for (const Operation& op : cands) {
        Entry child{e.ops, e.trace, 0.0};
        child.ops.push_back(op);
        fresh_slot.push_back(next.size());
        streams.push_back(child.ops);
        next.push_back(std::move(child));
      }
    }
    if (streams.empty()) continue;
    const std::vector<GoldScore> scores = sc.evaluate_batch(streams);
    std::optional<std::size_t> flip;
    for (std::size_t k = 0; k < scores.size(); ++k) {
      Entry& child = next[fresh_slot[k]];
      child.p = scores[k].p_gold;
      child.trace.push_back(child.p);
      if (scores[k].flipped && (!flip || scores[k].p_gold < scores[*flip].p_gold)) flip = k;
    }
    if (flip) {
      Entry& win = next[fresh_slot[*flip]];
      finish(r, res, true, std::move(win.ops), std::move(win.trace), win.p);
      r.oracle_queries = imp.queries + sc.queries();
      return r;
    }
    std::stable_sort(next.begin(), next.end(),
                     [](const Entry& a, const Entry& b) { return a.p < b.p; });
    if (next.size() > cfg.beam_size) next.resize(cfg.beam_size);
    beam = std::move(next);
  }
  Entry& top = beam.front();
  finish(r, res, false, std::move(top.ops), std::move(top.trace), top.p);
  r.oracle_queries = imp.queries + sc.queries();
  return r;
}

AttackResult genetic_attack(const TaskInstance& instance, Oracle& oracle,
                            const LanguageResources& res, const AttackConfig& cfg) {
  cfg.validate();
  AttackResult r(instance);
  InstanceScorer sc(instance, oracle);
  const GoldScore orig = sc.evaluate({});
  require_correct(instance, orig.flipped);
  r.initial_gold_prob = orig.p_gold;
  const std::size_t n = r.original.size();
  r.budget = budget(n, cfg.budget_fraction);
  const std::vector<Operation> all =
      build_operation_sets(r.original, res.confusions, res.inflections).all();
  if (all.empty()) {
    finish(r, res, false, {}, {}, orig.p_gold);
    r.oracle_queries = sc.queries();
    return r;
  }

  Rng rng(cfg.seed);
  const std::size_t pop_size = cfg.population;
  const std::size_t generations = generation_count(n, cfg.generation_fraction);
  const auto random_op = [&](const std::vector<Operation>& pool) {
    return pool[uniform_index(rng, pool.size())];
  };

  std::vector<Stream> pop;
  if (all.size() <= pop_size) {
    for (const Operation& op : all) pop.push_back({op});
  }
  while (pop.size() < pop_size) pop.push_back({random_op(all)});

  const auto crossover = [&](const Stream& a, const Stream& b) {
    // Regions held by A, then B's regions that A leaves free. One coin per
    // region; a region both parents edit always comes from A.
    std::vector<const Operation*> regions;
    for (const Operation& op : a) regions.push_back(&op);
    for (const Operation& op : b) {
      const bool clash = std::any_of(a.begin(), a.end(), [&](const Operation& x) {
        return regions_overlap(x, op);
      });
      if (!clash) regions.push_back(&op);
    }
    Stream child;
    for (const Operation* op : regions) {
      if (uniform_index(rng, 2) == 1) child.push_back(*op);
    }
    if (child.empty()) child.push_back(*regions[uniform_index(rng, regions.size())]);
    while (child.size() > r.budget) {
      child.erase(child.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, child.size())));
    }
    return child;
  };
  const auto mutate = [&](Stream& child) {
    if (child.size() >= r.budget) {
      child.erase(child.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, child.size())));
    }
    const std::vector<Operation> pool = available(all, child);
    if (!pool.empty()) child.push_back(random_op(pool));
  };

  Stream best_ops;
  double best_p = orig.p_gold;
  for (std::size_t g = 0; g < generations; ++g) {
    const std::vector<GoldScore> scores = sc.evaluate_batch(pop);
    std::optional<std::size_t> flip;
    std::size_t elite = 0;
    for (std::size_t k = 0; k < scores.size(); ++k) {
      if (scores[k].flipped && (!flip || scores[k].p_gold < scores[*flip].p_gold)) flip = k;
      if (scores[k].p_gold < scores[elite].p_gold) elite = k;
    }
    if (flip) {
      r.generation_best.push_back(scores[*flip].p_gold);
      finish(r, res, true, sorted_stream(pop[*flip]), {scores[*flip].p_gold},
             scores[*flip].p_gold);
      r.oracle_queries = sc.queries();
      return r;
    }
    r.generation_best.push_back(scores[elite].p_gold);
    best_ops = pop[elite];
    best_p = scores[elite].p_gold;
    if (g + 1 == generations) break;

    std::vector<double> fitness;
    double mass = 0.0;
    for (const GoldScore& s : scores) {
      fitness.push_back(std::max(0.0, 1.0 - s.p_gold));
      mass += fitness.back();
    }
    const auto parent = [&]() {
      return mass > 0.0 ? sample_weighted(rng, fitness) : uniform_index(rng, pop.size());
    };
    std::vector<Stream> next{pop[elite]};
    while (next.size() < pop_size) {
      const std::size_t pa = parent();
      const std::size_t pb = parent();
      Stream child = crossover(pop[pa], pop[pb]);
      mutate(child);
      next.push_back(sorted_stream(std::move(child)));
    }
    pop = std::move(next);
  }
  finish(r, res, false, sorted_stream(best_ops), {best_p}, best_p);
  r.oracle_queries = sc.queries();
  return r;
}

AttackResult run_attack(const TaskInstance& instance, Oracle& oracle,
                        const LanguageResources& res, const AttackConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kGreedy:
      return greedy_attack(instance, oracle, res, cfg);
    case Algorithm::kBeam:
      return beam_attack(instance, oracle, res, cfg);
    case Algorithm::kGenetic:
      return genetic_attack(instance, oracle, res, cfg);
  }
  throw std::logic_error("unknown algorithm");
}

CampaignSummary summarize(std::span<const AttackResult> results, std::size_t instances,
                          std::size_t skipped_incorrect, std::size_t errors) {
  CampaignSummary s;
  s.instances = instances;
  s.skipped_incorrect = skipped_incorrect;
  s.errors = errors;
  s.attacked = results.size();
  double modified = 0.0;
  for (const AttackResult& r : results) {
    s.queries += r.oracle_queries;
    if (!r.success) continue;
    ++s.successes;
    modified += r.modified_fraction;
    for (const Operation& op : r.applied_ops) ++s.harm_counts[index_of(op.error_type)];
  }
  if (s.attacked > 0) {
    s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.attacked);
  }
  if (s.successes > 0) s.mean_modified_fraction = modified / static_cast<double>(s.successes);
  return s;
}

Campaign run_campaign(std::span<const TaskInstance> dataset, Oracle& oracle,
                      const LanguageResources& res, const AttackConfig& cfg,
                      std::size_t jobs) {
  cfg.validate();
  enum class Outcome { kAttacked, kSkipped, kFailed };
  struct Slot {
    Outcome outcome = Outcome::kFailed;
    std::optional<AttackResult> result;
    std::string message;
  };
  std::vector<Slot> slots(dataset.size());
  std::atomic<std::size_t> next{0};
  std::mutex fatal_mu;
  std::exception_ptr fatal;

  const auto worker = [&]() {
    for (std::size_t i = next++; i < dataset.size(); i = next++) {
      const TaskInstance& inst = dataset[i];
      Slot& slot = slots[i];
      try {
        InstanceScorer filter(inst, oracle);
        if (filter.evaluate({}).flipped) {
          slot.outcome = Outcome::kSkipped;
          continue;
        }
        AttackConfig c = cfg;
        c.seed = derive_seed(cfg.seed, i);
        slot.result.emplace(run_attack(inst, oracle, res, c));
        slot.outcome = Outcome::kAttacked;
      } catch (const OracleError& e) {
        slot.message = e.what();
      } catch (const ValidationError& e) {
        slot.message = e.what();
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        next = dataset.size();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, dataset.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  Campaign c;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    switch (slots[i].outcome) {
      case Outcome::kAttacked:
        c.results.push_back(std::move(*slots[i].result));
        break;
      case Outcome::kSkipped:
        c.skipped.push_back(dataset[i].id);
        break;
      case Outcome::kFailed:
        c.failures.push_back({dataset[i].id, slots[i].message});
        break;
    }
  }
  c.summary = summarize(c.results, dataset.size(), c.skipped.size(), c.failures.size());
  return c;
}

}  // namespace gramattack
