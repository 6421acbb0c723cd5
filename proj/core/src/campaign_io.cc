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
#include "gramattack/campaign_io.h"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "gramattack/error.h"

namespace gramattack {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json op_object(const Operation& op) {
  ordered_json o;
  o["kind"] = std::string(to_string(op.kind));
  o["position"] = op.position;
  if (op.kind == OpKind::kSubstitute || op.kind == OpKind::kInsert) {
    o["replacement"] = op.replacement;
  }
  if (op.kind == OpKind::kSwap) o["swap_with"] = op.swap_with;
  o["error_type"] = std::string(to_string(op.error_type));
  if (!op.original.empty()) o["original"] = op.original;
  return o;
}

template <typename T>
T get_field(const json& obj, const char* name) {
  if (!obj.contains(name)) throw ValidationError(std::string("missing field: ") + name);
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("bad field: ") + name);
  }
}

Operation op_from(const json& o) {
  if (!o.is_object()) throw ValidationError("operation must be an object");
  Operation op;
  const auto kind = parse_op_kind(get_field<std::string>(o, "kind"));
  if (!kind) throw ValidationError("unknown operation kind");
  op.kind = *kind;
  op.position = get_field<std::size_t>(o, "position");
  if (op.kind == OpKind::kSubstitute || op.kind == OpKind::kInsert) {
    op.replacement = get_field<std::string>(o, "replacement");
  }
  if (op.kind == OpKind::kSwap) op.swap_with = get_field<std::size_t>(o, "swap_with");
  const auto type = parse_error_type(get_field<std::string>(o, "error_type"));
  if (!type) throw ValidationError("unknown error type in operation");
  op.error_type = *type;
  if (o.contains("original")) op.original = get_field<std::string>(o, "original");
  return op;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json("n/a");
}

std::optional<double> parse_optional(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "n/a") return std::nullopt;
  throw ValidationError("summary rate must be a number or \"n/a\"");
}

CampaignSummary summary_from(const json& s) {
  CampaignSummary out;
  out.instances = get_field<std::size_t>(s, "instances");
  out.attacked = get_field<std::size_t>(s, "attacked");
  out.skipped_incorrect = get_field<std::size_t>(s, "skipped_incorrect");
  out.errors = get_field<std::size_t>(s, "errors");
  out.successes = get_field<std::size_t>(s, "successes");
  out.success_rate = parse_optional(s.at("success_rate"));
  out.mean_modified_fraction = parse_optional(s.at("mean_modified_fraction"));
  if (s.contains("queries")) out.queries = get_field<std::size_t>(s, "queries");
  const json& harm = s.at("harm_counts");
  for (ErrorType t : kAllErrorTypes) {
    const std::string name(to_string(t));
    if (harm.contains(name)) out.harm_counts[index_of(t)] = harm.at(name).get<std::size_t>();
  }
  return out;
}

}  // namespace

std::string operation_json(const Operation& op) { return op_object(op).dump(); }

Operation parse_operation_json(std::string_view text) {
  try {
    return op_from(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("operation: ") + e.what());
  }
}

ReportRecord to_record(const AttackResult& r) {
  ReportRecord rec;
  rec.id = r.id;
  rec.success = r.success;
  rec.ops = r.applied_ops;
  rec.modified_fraction = r.modified_fraction;
  rec.queries = r.oracle_queries;
  rec.p_gold_before = r.initial_gold_prob;
  rec.p_gold_after = r.final_gold_prob;
  rec.n_tokens = r.original.size();
  rec.budget = r.budget;
  rec.adversarial = r.adversarial.text();
  rec.generation_best = r.generation_best;
  return rec;
}

CampaignReport to_report(const Campaign& campaign) {
  CampaignReport report;
  for (const AttackResult& r : campaign.results) report.records.push_back(to_record(r));
  report.failures = campaign.failures;
  report.summary = campaign.summary;
  return report;
}

std::string record_json(const ReportRecord& r) {
  ordered_json o;
  o["id"] = r.id;
  o["success"] = r.success;
  o["ops"] = ordered_json::array();
  for (const Operation& op : r.ops) o["ops"].push_back(op_object(op));
  o["modified_fraction"] = r.modified_fraction;
  o["queries"] = r.queries;
  o["p_gold_before"] = r.p_gold_before;
  o["p_gold_after"] = r.p_gold_after;
  o["n_tokens"] = r.n_tokens;
  o["budget"] = r.budget;
  o["adversarial"] = r.adversarial;
  if (!r.generation_best.empty()) o["generation_best"] = r.generation_best;
  return o.dump();
}

std::string summary_json(const CampaignSummary& s) {
  ordered_json body;
  body["instances"] = s.instances;
  body["attacked"] = s.attacked;
  body["skipped_incorrect"] = s.skipped_incorrect;
  body["errors"] = s.errors;
  body["successes"] = s.successes;
  body["success_rate"] = optional_number(s.success_rate);
  body["mean_modified_fraction"] = optional_number(s.mean_modified_fraction);
  ordered_json harm = ordered_json::object();
  for (ErrorType t : kAllErrorTypes) harm[std::string(to_string(t))] = s.harm_counts[index_of(t)];
  body["harm_counts"] = harm;
  body["queries"] = s.queries;
  ordered_json o;
  o["summary"] = body;
  return o.dump();
}

void write_report(std::ostream& out, const CampaignReport& report) {
  for (const ReportRecord& r : report.records) out << record_json(r) << '\n';
  for (const InstanceFailure& f : report.failures) {
    ordered_json o;
    o["id"] = f.id;
    o["error"] = f.message;
    out << o.dump() << '\n';
  }
  out << summary_json(report.summary) << '\n';
}

void write_report(const std::filesystem::path& path, const CampaignReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  write_report(out, report);
}

CampaignReport parse_report(std::istream& in) {
  CampaignReport report;
  bool have_summary = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      json o;
      try {
        o = json::parse(line);
      } catch (const json::parse_error&) {
        throw ValidationError("malformed JSON");
      }
      if (!o.is_object()) throw ValidationError("record is not an object");
      if (o.contains("summary")) {
        report.summary = summary_from(o.at("summary"));
        have_summary = true;
        continue;
      }
      if (o.contains("error")) {
        report.failures.push_back(
            {get_field<std::string>(o, "id"), get_field<std::string>(o, "error")});
        continue;
      }
      ReportRecord r;
      r.id = get_field<std::string>(o, "id");
      r.success = get_field<bool>(o, "success");
      const json& ops = o.at("ops");
      if (!ops.is_array()) throw ValidationError("ops must be a list");
      for (const json& op : ops) r.ops.push_back(op_from(op));
      r.modified_fraction = get_field<double>(o, "modified_fraction");
      r.queries = get_field<std::size_t>(o, "queries");
      r.p_gold_before = get_field<double>(o, "p_gold_before");
      r.p_gold_after = get_field<double>(o, "p_gold_after");
      if (o.contains("n_tokens")) r.n_tokens = get_field<std::size_t>(o, "n_tokens");
      if (o.contains("budget")) r.budget = get_field<std::size_t>(o, "budget");
      if (o.contains("adversarial")) r.adversarial = get_field<std::string>(o, "adversarial");
      if (o.contains("generation_best")) {
        r.generation_best = get_field<std::vector<double>>(o, "generation_best");
      }
      report.records.push_back(std::move(r));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " @ line " + std::to_string(line_no));
    } catch (const json::exception& e) {
      throw ValidationError(std::string("bad record: ") + e.what() + " @ line " +
                            std::to_string(line_no));
    }
  }
  if (!have_summary) {
    report.summary = summarize_records(report.records, report.records.size() +
                                                           report.failures.size(),
                                       0, report.failures.size());
  }
  return report;
}

CampaignReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  return parse_report(in);
}

CampaignSummary summarize_records(std::span<const ReportRecord> records,
                                  std::size_t instances, std::size_t skipped_incorrect,
                                  std::size_t errors) {
  CampaignSummary s;
  s.instances = instances;
  s.skipped_incorrect = skipped_incorrect;
  s.errors = errors;
  s.attacked = records.size();
  double modified = 0.0;
  for (const ReportRecord& r : records) {
    s.queries += r.queries;
    if (!r.success) continue;
    ++s.successes;
    modified += r.modified_fraction;
    for (const Operation& op : r.ops) ++s.harm_counts[index_of(op.error_type)];
  }
  if (s.attacked > 0) {
    s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.attacked);
  }
  if (s.successes > 0) s.mean_modified_fraction = modified / static_cast<double>(s.successes);
  return s;
}

CampaignReport merge_reports(std::span<const CampaignReport> reports) {
  CampaignReport merged;
  std::size_t instances = 0;
  std::size_t skipped = 0;
  for (const CampaignReport& r : reports) {
    merged.records.insert(merged.records.end(), r.records.begin(), r.records.end());
    merged.failures.insert(merged.failures.end(), r.failures.begin(), r.failures.end());
    instances += r.summary.instances;
    skipped += r.summary.skipped_incorrect;
  }
  merged.summary = summarize_records(merged.records, instances, skipped, merged.failures.size());
  return merged;
}

std::string format_rate(const std::optional<double>& value) {
  if (!value) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *value);
  return buf;
}

std::string summary_csv(const CampaignSummary& s) {
  std::string out = "metric,value\n";
  out += "instances," + std::to_string(s.instances) + "\n";
  out += "attacked," + std::to_string(s.attacked) + "\n";
  out += "skipped_incorrect," + std::to_string(s.skipped_incorrect) + "\n";
  out += "errors," + std::to_string(s.errors) + "\n";
  out += "successes," + std::to_string(s.successes) + "\n";
  out += "success_rate," + format_rate(s.success_rate) + "\n";
  out += "mean_modified_fraction," + format_rate(s.mean_modified_fraction) + "\n";
  out += "queries," + std::to_string(s.queries) + "\n";
  out += "\nerror_type,harm_count\n";
  for (ErrorType t : kAllErrorTypes) {
    out += std::string(to_string(t)) + "," + std::to_string(s.harm_counts[index_of(t)]) + "\n";
  }
  return out;
}

}  // namespace gramattack
