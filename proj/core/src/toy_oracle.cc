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
#include "gramattack/toy_oracle.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gramattack/error.h"
#include "gramattack/text_util.h"

namespace gramattack {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> lowered_tokens(std::string_view text) {
  std::vector<std::string> out = split_whitespace(text);
  for (std::string& t : out) t = to_lower(t);
  return out;
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(where + " must be finite");
  return d;
}

}  // namespace

LinearClassifier::LinearClassifier(
    std::vector<std::string> labels, std::map<std::string, double> bias,
    std::map<std::string, std::map<std::string, double>> weights, Kind kind)
    : labels_(std::move(labels)),
      bias_(std::move(bias)),
      weights_(std::move(weights)),
      kind_(kind) {
  if (labels_.empty()) throw ValidationError("classifier needs at least one label");
  const std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) throw ValidationError("duplicate classifier label");
  for (const auto& [label, b] : bias_) {
    if (!unique.count(label)) throw ValidationError("bias for unknown label '" + label + "'");
  }
  for (const auto& [label, row] : weights_) {
    if (!unique.count(label)) throw ValidationError("weights for unknown label '" + label + "'");
  }
}

LinearClassifier LinearClassifier::train(std::span<const TaskInstance> data) {
  const bool tagging =
      std::any_of(data.begin(), data.end(), [](const TaskInstance& t) {
        return t.kind == TaskKind::kTagging;
      });
  std::map<std::string, double> prior;
  std::map<std::string, std::map<std::string, double>> counts;
  std::map<std::string, double> totals;
  std::set<std::string> vocab;
  const auto add = [&](const std::string& label, const std::string& tok) {
    counts[label][tok] += 1.0;
    totals[label] += 1.0;
    vocab.insert(tok);
  };
  for (const TaskInstance& inst : data) {
    if (tagging) {
      const TaggedSentence& s = inst.mutable_sentence();
      if (inst.token_labels.size() != s.size()) {
        throw ValidationError("instance " + inst.id + ": token label count mismatch");
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        prior[inst.token_labels[i]] += 1.0;
        add(inst.token_labels[i], to_lower(s[i].surface));
      }
    } else {
      prior[inst.gold_label] += 1.0;
      counts[inst.gold_label];
      for (const TaggedSentence& seg : inst.segments) {
        for (const Token& t : seg.tokens()) add(inst.gold_label, to_lower(t.surface));
      }
    }
  }
  if (prior.size() < 2) {
    throw ValidationError("training data needs at least two labels, found " +
                          std::to_string(prior.size()));
  }

  std::vector<std::string> labels;
  double n_items = 0.0;
  for (const auto& [label, c] : prior) {
    labels.push_back(label);
    n_items += c;
  }
  const double k = static_cast<double>(labels.size());
  const double v = static_cast<double>(vocab.size());

  std::map<std::string, double> bias;
  double mean_prior = 0.0;
  for (const std::string& l : labels) mean_prior += std::log(prior[l] / n_items) / k;
  for (const std::string& l : labels) bias[l] = std::log(prior[l] / n_items) - mean_prior;

  std::map<std::string, std::map<std::string, double>> weights;
  for (const std::string& tok : vocab) {
    std::vector<double> logp;
    double mean = 0.0;
    for (const std::string& l : labels) {
      const auto& row = counts[l];
      const auto it = row.find(tok);
      const double c = it == row.end() ? 0.0 : it->second;
      logp.push_back(std::log((c + 1.0) / (totals[l] + v)));
      mean += logp.back() / k;
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const double w = logp[j] - mean;
      if (w != 0.0) weights[labels[j]][tok] = w;
    }
  }
  return LinearClassifier(std::move(labels), std::move(bias), std::move(weights),
                          tagging ? Kind::kTagging : Kind::kSequence);
}

LinearClassifier LinearClassifier::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("classifier weights: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("classifier weights must be a JSON object");
  Kind kind = Kind::kSequence;
  if (doc.contains("kind")) {
    const json& k = doc["kind"];
    if (k == "tagging") {
      kind = Kind::kTagging;
    } else if (k != "sequence") {
      throw ValidationError("classifier kind must be \"sequence\" or \"tagging\"");
    }
  }
  if (!doc.contains("labels") || !doc["labels"].is_array()) {
    throw ValidationError("classifier weights need a \"labels\" array");
  }
  std::vector<std::string> labels;
  for (const json& l : doc["labels"]) {
    if (!l.is_string()) throw ValidationError("classifier labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  std::map<std::string, double> bias;
  if (doc.contains("bias")) {
    if (!doc["bias"].is_object()) throw ValidationError("\"bias\" must be an object");
    for (const auto& [label, b] : doc["bias"].items()) {
      bias[label] = finite_number(b, "bias of " + label);
    }
  }
  std::map<std::string, std::map<std::string, double>> weights;
  if (doc.contains("weights")) {
    if (!doc["weights"].is_object()) throw ValidationError("\"weights\" must be an object");
    for (const auto& [label, row] : doc["weights"].items()) {
      if (!row.is_object()) throw ValidationError("weights of " + label + " must be an object");
      auto& out = weights[label];
      for (const auto& [tok, w] : row.items()) {
        out[to_lower(tok)] = finite_number(w, "weight of " + label + "/" + tok);
      }
    }
  }
  return LinearClassifier(std::move(labels), std::move(bias), std::move(weights), kind);
}

LinearClassifier LinearClassifier::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read classifier weights: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string LinearClassifier::to_json() const {
  ordered_json doc;
  doc["kind"] = kind_ == Kind::kTagging ? "tagging" : "sequence";
  doc["labels"] = labels_;
  doc["bias"] = ordered_json::object();
  for (const auto& [label, b] : bias_) doc["bias"][label] = b;
  doc["weights"] = ordered_json::object();
  for (const auto& [label, row] : weights_) {
    ordered_json r = ordered_json::object();
    for (const auto& [tok, w] : row) r[tok] = w;
    doc["weights"][label] = std::move(r);
  }
  return doc.dump(2) + "\n";
}

void LinearClassifier::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << to_json();
}

double LinearClassifier::weight(const std::string& label, const std::string& token) const {
  const auto row = weights_.find(label);
  if (row == weights_.end()) return 0.0;
  const auto it = row->second.find(token);
  return it == row->second.end() ? 0.0 : it->second;
}

LabelProbs LinearClassifier::softmax(const std::map<std::string, double>& logits) const {
  double hi = -INFINITY;
  for (const auto& [l, z] : logits) hi = std::max(hi, z);
  double total = 0.0;
  LabelProbs out;
  for (const auto& [l, z] : logits) {
    out[l] = std::exp(z - hi);
    total += out[l];
  }
  for (auto& [l, p] : out) p /= total;
  return out;
}

LabelProbs LinearClassifier::score(const OracleInput& input) const {
  std::vector<std::string> tokens = lowered_tokens(input.text_a);
  if (input.text_b) {
    for (std::string& t : lowered_tokens(*input.text_b)) tokens.push_back(std::move(t));
  }
  std::map<std::string, double> logits;
  for (const std::string& l : labels_) {
    const auto b = bias_.find(l);
    double z = b == bias_.end() ? 0.0 : b->second;
    for (const std::string& t : tokens) z += weight(l, t);
    logits[l] = z;
  }
  return softmax(logits);
}

std::vector<LabelProbs> LinearClassifier::score_tokens(std::string_view text) const {
  std::vector<LabelProbs> rows;
  for (const std::string& t : lowered_tokens(text)) {
    std::map<std::string, double> logits;
    for (const std::string& l : labels_) {
      const auto b = bias_.find(l);
      logits[l] = (b == bias_.end() ? 0.0 : b->second) + weight(l, t);
    }
    rows.push_back(softmax(logits));
  }
  return rows;
}

std::vector<Prediction> LinearClassifier::predict(std::span<const OracleInput> batch) {
  if (batch.empty()) throw OracleError("empty predict batch", false);
  std::vector<Prediction> out;
  out.reserve(batch.size());
  for (const OracleInput& in : batch) {
    Prediction p;
    if (kind_ == Kind::kTagging) {
      p.token_probs = score_tokens(in.text_a);
    } else {
      p.probs = score(in);
    }
    out.push_back(std::move(p));
  }
  return out;
}

BigramMaskedLM::BigramMaskedLM(std::span<const std::vector<std::string>> corpus) {
  std::set<std::string> vocab{std::string(kUnknown)};
  bool any = false;
  for (const auto& sentence : corpus) {
    if (sentence.empty()) continue;
    any = true;
    std::string prev(kStart);
    for (const std::string& w : sentence) {
      const std::string lw = to_lower(w);
      vocab.insert(lw);
      bigrams_[{prev, lw}] += 1.0;
      prev = lw;
    }
    bigrams_[{prev, std::string(kEnd)}] += 1.0;
  }
  if (!any) throw ValidationError("masked LM corpus is empty");
  vocab_.assign(vocab.begin(), vocab.end());
}

BigramMaskedLM BigramMaskedLM::from_sentences(std::span<const TaggedSentence> corpus) {
  std::vector<std::vector<std::string>> raw;
  for (const TaggedSentence& s : corpus) raw.push_back(s.surfaces());
  return BigramMaskedLM(raw);
}

std::string BigramMaskedLM::normalize(std::string_view word) const {
  std::string w = to_lower(word);
  return std::binary_search(vocab_.begin(), vocab_.end(), w) ? w : std::string(kUnknown);
}

double BigramMaskedLM::count(const std::string& left, const std::string& right) const {
  const auto it = bigrams_.find({left, right});
  return it == bigrams_.end() ? 0.0 : it->second;
}

double BigramMaskedLM::probability(std::span<const std::string> tokens,
                                   std::size_t mask_index, std::string_view target) const {
  if (mask_index >= tokens.size()) {
    throw ValidationError("mask index " + std::to_string(mask_index) + " out of range");
  }
  const std::string left =
      mask_index == 0 ? std::string(kStart) : normalize(tokens[mask_index - 1]);
  const std::string right =
      mask_index + 1 == tokens.size() ? std::string(kEnd) : normalize(tokens[mask_index + 1]);
  const auto mass = [&](const std::string& w) {
    return (count(left, w) + 1.0) * (count(w, right) + 1.0);
  };
  double z = 0.0;
  for (const std::string& v : vocab_) z += mass(v);
  return mass(normalize(target)) / z;
}

double BigramMaskedLM::mask_fill(std::span<const std::string> tokens,
                                 std::size_t mask_index, std::string_view target) {
  return probability(tokens, mask_index, target);
}

}  // namespace gramattack
