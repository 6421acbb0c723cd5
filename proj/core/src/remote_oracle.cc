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
#include "gramattack/remote_oracle.h"

#include <chrono>
#include <cmath>
#include <regex>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "gramattack/error.h"

namespace gramattack {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw OracleError("oracle response schema violation: " + what, false);
}

LabelProbs parse_row(const json& row) {
  if (!row.is_object()) schema_error("probability row must be an object");
  LabelProbs out;
  for (const auto& [label, p] : row.items()) {
    if (!p.is_number()) schema_error("probability of '" + label + "' is not a number");
    out[label] = p.get<double>();
  }
  return out;
}

std::string error_message(const httplib::Result& res) {
  std::string msg = "HTTP " + std::to_string(res->status);
  try {
    const json body = json::parse(res->body);
    if (body.is_object() && body.contains("error") && body["error"].is_string()) {
      msg += ": " + body["error"].get<std::string>();
    }
  } catch (const json::exception&) {
  }
  return msg;
}

}  // namespace

RemoteOracle::RemoteOracle(std::string endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(endpoint_, m, kUrl)) {
    throw ValidationError("remote oracle endpoint must look like http://host:port, got '" +
                          endpoint_ + "'");
  }
  if (m[1].str().rfind("https", 0) == 0) {
    throw ValidationError("https endpoints are not supported by this build");
  }
  host_ = m[1].str();
  prefix_ = m[2].matched ? m[2].str() : "";
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  if (options_.retries < 0) throw ValidationError("retries must be >= 0");
  if (options_.max_batch == 0) throw ValidationError("max batch must be >= 1");
}

RemoteOracle::~RemoteOracle() = default;

std::string RemoteOracle::post(const std::string& path, const std::string& body) {
  httplib::Client client(host_);
  const auto timeout = std::chrono::duration<double>(options_.timeout_seconds);
  client.set_connection_timeout(
      std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));

  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) {
      const double delay = options_.backoff_base_seconds *
                           std::pow(options_.backoff_factor, attempt - 1);
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    httplib::Result res = client.Post(prefix_ + path, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    if (res->status >= 400 && res->status < 500) {
      throw OracleError(endpoint_ + path + " rejected the request: " + error_message(res),
                        false);
    }
    last_error = error_message(res);
  }
  throw OracleError(endpoint_ + path + " failed after " + std::to_string(options_.retries + 1) +
                        " attempt(s): " + last_error,
                    true);
}

std::vector<Prediction> RemoteOracle::predict(std::span<const OracleInput> batch) {
  if (batch.empty()) throw OracleError("empty predict batch", false);
  if (batch.size() > options_.max_batch) return predict_all(*this, batch);

  json req;
  req["instances"] = json::array();
  for (const OracleInput& in : batch) {
    json inst;
    inst["textA"] = in.text_a;
    if (in.text_b) inst["textB"] = *in.text_b;
    req["instances"].push_back(std::move(inst));
  }
  const std::string raw = post("/predict", req.dump());

  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    schema_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("probs") || !doc["probs"].is_array()) {
    schema_error("missing \"probs\" array");
  }
  std::vector<Prediction> out;
  for (const json& row : doc["probs"]) {
    Prediction p;
    if (row.is_array()) {
      for (const json& tok : row) p.token_probs.push_back(parse_row(tok));
      if (p.token_probs.empty()) schema_error("empty token row");
    } else {
      p.probs = parse_row(row);
    }
    out.push_back(std::move(p));
  }

  std::lock_guard<std::mutex> lock(labels_mu_);
  validate_predictions(batch, out, &labels_);
  if (labels_.empty()) {
    const LabelProbs& first = out.front().tagging() ? out.front().token_probs.front()
                                                    : out.front().probs;
    for (const auto& [label, prob] : first) labels_.push_back(label);
  }
  queries_ += batch.size();
  return out;
}

double RemoteOracle::mask_fill(std::span<const std::string> tokens, std::size_t mask_index,
                               std::string_view target) {
  if (mask_index >= tokens.size()) {
    throw ValidationError("mask index " + std::to_string(mask_index) + " out of range");
  }
  json req;
  req["tokens"] = std::vector<std::string>(tokens.begin(), tokens.end());
  req["mask_index"] = mask_index;
  req["target"] = std::string(target);
  const std::string raw = post("/mask_fill", req.dump());
  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    schema_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("prob") || !doc["prob"].is_number()) {
    schema_error("missing numeric \"prob\"");
  }
  const double p = doc["prob"].get<double>();
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    schema_error("mask-fill probability " + std::to_string(p) + " outside [0, 1]");
  }
  ++queries_;
  return p;
}

}  // namespace gramattack
