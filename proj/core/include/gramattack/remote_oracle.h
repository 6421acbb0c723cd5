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
#ifndef GRAMATTACK_REMOTE_ORACLE_H_
#define GRAMATTACK_REMOTE_ORACLE_H_

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramattack/oracle.h"

namespace gramattack {

struct RemoteOptions {
  double timeout_seconds = 30.0;
  int retries = 3;  // extra attempts after the first
  double backoff_base_seconds = 0.5;
  double backoff_factor = 2.0;
  std::size_t max_batch = kDefaultMaxBatch;
};

// HTTP client for the victim-model server.
//
//   POST /predict   {"instances": [{"textA": s, "textB": s?}]}
//                -> {"probs": [{label: p}]}        sequence tasks
//                -> {"probs": [[{label: p}, ...]]} tagging tasks, one row per
//                                                  whitespace token of textA
//   POST /mask_fill {"tokens": [s], "mask_index": i, "target": s}
//                -> {"prob": p}
//   Errors: non-2xx status with {"error": s}.
//
// Transport failures and 5xx responses are retried with exponential backoff;
// 4xx responses and schema violations fail at once.
class RemoteOracle : public Oracle, public MaskFillOracle {
 public:
  // `endpoint` is "http://host:port" with an optional path prefix.
  explicit RemoteOracle(std::string endpoint, RemoteOptions options = {});
  ~RemoteOracle() override;

  std::vector<Prediction> predict(std::span<const OracleInput> batch) override;
  std::size_t max_batch() const override { return options_.max_batch; }

  double mask_fill(std::span<const std::string> tokens, std::size_t mask_index,
                   std::string_view target) override;

  // Instances answered by the server (retries not double counted).
  std::size_t queries() const { return queries_.load(); }
  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string post(const std::string& path, const std::string& body);

  std::string endpoint_;
  std::string host_;    // scheme://host:port
  std::string prefix_;  // path prefix without trailing '/'
  RemoteOptions options_;
  std::atomic<std::size_t> queries_{0};
  std::mutex labels_mu_;
  std::vector<std::string> labels_;  // fixed by the first valid response
};

}  // namespace gramattack

#endif  // GRAMATTACK_REMOTE_ORACLE_H_
