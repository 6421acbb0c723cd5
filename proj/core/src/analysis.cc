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
#include "gramattack/analysis.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "gramattack/campaign_io.h"
#include "gramattack/error.h"
#include "gramattack/random.h"

namespace gramattack {
namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// escaping fn stops the remaining work and is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr fatal;
  const auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!fatal) fatal = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (fatal) std::rethrow_exception(fatal);
}

TaskInstance perturbed_copy(const TaskInstance& inst, const std::vector<Operation>& ops,
                            const PosLexicon& pos) {
  TaskInstance copy = inst;
  copy.id = inst.id + "#adv";
  if (ops.empty()) return copy;
  const TaggedSentence& original = inst.mutable_sentence();
  copy.segments[inst.mutable_segment] = apply_all(original, ops, pos);
  if (inst.kind == TaskKind::kTagging) {
    std::vector<std::string> labels;
    for (std::ptrdiff_t src : source_indices(original.size(), ops)) {
      labels.push_back(src < 0 ? "O" : inst.token_labels[static_cast<std::size_t>(src)]);
    }
    copy.token_labels = std::move(labels);
  }
  return copy;
}

}  // namespace

SweepResult budget_sweep(std::span<const TaskInstance> dataset, Oracle& oracle,
                         const LanguageResources& res, std::span<const double> fractions,
                         const AttackConfig& cfg, std::size_t jobs) {
  if (fractions.empty()) throw ValidationError("budget sweep needs at least one fraction");
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    if (k > 0 && fractions[k] < fractions[k - 1]) {
      throw ValidationError("budget fractions must be sorted ascending");
    }
    AttackConfig c = cfg;
    c.budget_fraction = fractions[k];
    c.validate();
  }

  enum class Outcome { kAttacked, kSkipped, kFailed };
  struct Slot {
    Outcome outcome = Outcome::kFailed;
    std::vector<AttackResult> per_fraction;
    std::string message;
  };
  std::vector<Slot> slots(dataset.size());
  parallel_for(dataset.size(), jobs, [&](std::size_t i) {
    const TaskInstance& inst = dataset[i];
    Slot& slot = slots[i];
    try {
      const Importance imp = token_importance(inst, oracle);
      if (imp.flipped_original) {
        slot.outcome = Outcome::kSkipped;
        return;
      }
      for (double f : fractions) {
        AttackConfig c = cfg;
        c.budget_fraction = f;
        c.algorithm = Algorithm::kGreedy;
        slot.per_fraction.push_back(greedy_attack(inst, oracle, res, c, imp));
      }
      slot.outcome = Outcome::kAttacked;
    } catch (const OracleError& e) {
      slot.message = e.what();
    } catch (const ValidationError& e) {
      slot.message = e.what();
    }
  });

  SweepResult sweep;
  for (double f : fractions) sweep.points.push_back({f, {}, {}});
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    Slot& slot = slots[i];
    if (slot.outcome == Outcome::kSkipped) {
      sweep.skipped.push_back(dataset[i].id);
    } else if (slot.outcome == Outcome::kFailed) {
      sweep.failures.push_back({dataset[i].id, slot.message});
    } else {
      for (std::size_t k = 0; k < fractions.size(); ++k) {
        sweep.points[k].results.push_back(std::move(slot.per_fraction[k]));
      }
    }
  }
  for (SweepPoint& p : sweep.points) {
    p.summary = summarize(p.results, dataset.size(), sweep.skipped.size(),
                          sweep.failures.size());
  }
  return sweep;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = "fraction,attacked,successes,success_rate,mean_modified_fraction\n";
  for (const SweepPoint& p : sweep.points) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.4f", p.fraction);
    out += std::string(frac) + "," + std::to_string(p.summary.attacked) + "," +
           std::to_string(p.summary.successes) + "," + format_rate(p.summary.success_rate) +
           "," + format_rate(p.summary.mean_modified_fraction) + "\n";
  }
  return out;
}

std::size_t ClozeMatrix::column(int offset) {
  if (offset == 0 || offset < -kClozeWindow || offset > kClozeWindow) {
    throw std::out_of_range("cloze offset " + std::to_string(offset) + " outside the window");
  }
  return static_cast<std::size_t>(offset < 0 ? offset + kClozeWindow
                                             : offset + kClozeWindow - 1);
}

int ClozeMatrix::offset_of(std::size_t column) {
  const int c = static_cast<int>(column);
  return c < kClozeWindow ? c - kClozeWindow : c - kClozeWindow + 1;
}

void ClozeMatrix::add(ErrorType type, int offset, double drop) {
  drops_[index_of(type)][column(offset)].push_back(drop);
}

std::size_t ClozeMatrix::count(ErrorType type, int offset) const {
  return drops_[index_of(type)][column(offset)].size();
}

std::optional<double> ClozeMatrix::mean(ErrorType type, int offset) const {
  std::vector<double> v = drops_[index_of(type)][column(offset)];
  if (v.empty()) return std::nullopt;
  // Summing in sorted order makes the mean independent of pair order.
  std::sort(v.begin(), v.end());
  double total = 0.0;
  for (double d : v) total += d;
  return total / static_cast<double>(v.size());
}

std::size_t ClozeMatrix::total_count() const {
  std::size_t n = 0;
  for (const auto& row : drops_) {
    for (const auto& cell : row) n += cell.size();
  }
  return n;
}

ClozeResult cloze_drop(std::span<const MinimalEditPair> pairs, MaskFillOracle& mlm) {
  ClozeResult result;
  for (const MinimalEditPair& pair : pairs) {
    const auto skip = [&](const std::string& why) {
      result.warnings.push_back("pair " + pair.id + " skipped: " + why);
    };
    if (pair.edits.size() != 1) {
      skip(std::to_string(pair.edits.size()) + " edits");
      continue;
    }
    const Edit& e = pair.edits.front();
    if (e.bad_span.length() != 1 || e.good_span.length() != 1 ||
        e.bad_span.lo != e.good_span.lo || pair.bad.size() != pair.good.size()) {
      skip("edit is not a single-token substitution");
      continue;
    }
    if (!e.tag) {
      skip("edit tag is not one of the eight error types");
      continue;
    }
    const std::vector<std::string> good = pair.good.surfaces();
    const std::vector<std::string> bad = pair.bad.surfaces();
    const long pos = static_cast<long>(e.good_span.lo);
    const long n = static_cast<long>(good.size());
    ++result.usable_pairs;
    for (long j = std::max(0L, pos - kClozeWindow); j <= std::min(n - 1, pos + kClozeWindow);
         ++j) {
      if (j == pos) continue;
      const std::size_t uj = static_cast<std::size_t>(j);
      const double p_good = mlm.mask_fill(good, uj, good[uj]);
      const double p_bad = mlm.mask_fill(bad, uj, bad[uj]);
      result.matrix.add(*e.tag, static_cast<int>(j - pos), p_good - p_bad);
    }
  }
  return result;
}

std::string cloze_table_tsv(const ClozeMatrix& matrix) {
  std::string out = "error_type";
  for (std::size_t c = 0; c < ClozeMatrix::kColumns; ++c) {
    out += "\t" + std::to_string(ClozeMatrix::offset_of(c));
  }
  out += "\n";
  for (ErrorType t : kAllErrorTypes) {
    out += std::string(to_string(t));
    for (std::size_t c = 0; c < ClozeMatrix::kColumns; ++c) {
      const int offset = ClozeMatrix::offset_of(c);
      const std::optional<double> m = matrix.mean(t, offset);
      if (!m) {
        out += "\tNA";
        continue;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "\t%.6f (%zu)", *m, matrix.count(t, offset));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::size_t augment_count(std::size_t n, double proportion) {
  if (!(proportion > 0.0) || !std::isfinite(proportion)) {
    throw ValidationError("augmentation proportion must be > 0");
  }
  const double raw = std::ceil(proportion * static_cast<double>(n) - 1e-9);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, raw)));
}

AugmentResult augment(std::span<const TaskInstance> train, Oracle& oracle,
                      const LanguageResources& res, double proportion,
                      const AttackConfig& cfg, std::size_t jobs) {
  cfg.validate();
  const std::size_t k = augment_count(train.size(), proportion);
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(cfg.seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform_index(rng, i)]);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(chosen.begin(), chosen.end());

  struct Slot {
    std::optional<TaskInstance> copy;
    bool flipped = false;
    std::string message;
  };
  std::vector<Slot> slots(chosen.size());
  AttackConfig c = cfg;
  c.algorithm = Algorithm::kGreedy;
  parallel_for(chosen.size(), jobs, [&](std::size_t s) {
    const TaskInstance& inst = train[chosen[s]];
    try {
      Importance imp = token_importance(inst, oracle);
      const bool already_wrong = imp.flipped_original;
      // A misclassified instance still gets a noised copy: the search runs
      // as if it started from a correct prediction.
      imp.flipped_original = false;
      const AttackResult r = greedy_attack(inst, oracle, res, c, imp);
      const std::vector<Operation>& ops = r.success ? r.applied_ops : r.best_effort_ops;
      slots[s].copy = perturbed_copy(inst, ops, res.pos);
      slots[s].flipped = r.success && !already_wrong;
    } catch (const OracleError& e) {
      slots[s].message = e.what();
    } catch (const ValidationError& e) {
      slots[s].message = e.what();
    }
  });

  AugmentResult out;
  out.records.assign(train.begin(), train.end());
  out.selected = k;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s].copy) {
      out.records.push_back(std::move(*slots[s].copy));
      if (slots[s].flipped) ++out.flipped;
    } else {
      out.failures.push_back({train[chosen[s]].id, slots[s].message});
    }
  }
  return out;
}

}  // namespace gramattack
