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
#ifndef GRAMATTACK_CAMPAIGN_IO_H_
#define GRAMATTACK_CAMPAIGN_IO_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gramattack/attack.h"
#include "gramattack/perturb.h"

namespace gramattack {

// Campaign report, one JSON object per line:
//   {"id", "success", "ops": [op...], "modified_fraction", "queries",
//    "p_gold_before", "p_gold_after", "n_tokens", "budget", "adversarial",
//    "generation_best"?}                                  one per attacked instance
//   {"id", "error"}                                       instance that failed
//   {"summary": {...}}                                    last line
// An op is {"kind", "position", "replacement"?, "swap_with"?, "error_type",
// "original"?}.

std::string operation_json(const Operation& op);
Operation parse_operation_json(std::string_view text);

struct ReportRecord {
  std::string id;
  bool success = false;
  std::vector<Operation> ops;
  double modified_fraction = 0.0;
  std::size_t queries = 0;
  double p_gold_before = 0.0;
  double p_gold_after = 0.0;
  std::size_t n_tokens = 0;
  std::size_t budget = 0;
  std::string adversarial;
  std::vector<double> generation_best;
};

ReportRecord to_record(const AttackResult& result);

struct CampaignReport {
  std::vector<ReportRecord> records;
  std::vector<InstanceFailure> failures;
  CampaignSummary summary;
};

CampaignReport to_report(const Campaign& campaign);

std::string record_json(const ReportRecord& record);
std::string summary_json(const CampaignSummary& summary);

void write_report(std::ostream& out, const CampaignReport& report);
void write_report(const std::filesystem::path& path, const CampaignReport& report);

// Throws ValidationError naming the line on malformed input. A file without
// a summary line gets one computed from its records.
CampaignReport parse_report(std::istream& in);
CampaignReport load_report(const std::filesystem::path& path);

// Summary statistics recomputed from records; counters taken as given.
CampaignSummary summarize_records(std::span<const ReportRecord> records,
                                  std::size_t instances, std::size_t skipped_incorrect,
                                  std::size_t errors);

// Concatenates records and failures; counters add up.
CampaignReport merge_reports(std::span<const CampaignReport> reports);

// "n/a" for an absent value, else the number with 6 decimals.
std::string format_rate(const std::optional<double>& value);

// Two-column "metric,value" CSV, then "error_type,harm_count" rows in type
// order.
std::string summary_csv(const CampaignSummary& summary);

}  // namespace gramattack

#endif  // GRAMATTACK_CAMPAIGN_IO_H_
