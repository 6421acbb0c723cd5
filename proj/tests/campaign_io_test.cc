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

#include <sstream>

#include <gtest/gtest.h>

#include "gramattack/campaign_io.h"
#include "gramattack/error.h"
#include "gramattack/resources.h"
#include "toy_fixtures.h"

namespace gramattack {
namespace {

ReportRecord record(const std::string& id, bool success, std::vector<ErrorType> types,
                    double modified = 0.25, std::size_t queries = 5) {
  ReportRecord r;
  r.id = id;
  r.success = success;
  for (ErrorType t : types) {
    Operation op;
    op.kind = OpKind::kSubstitute;
    op.position = r.ops.size();
    op.replacement = "x";
    op.original = "y";
    op.error_type = t;
    r.ops.push_back(op);
  }
  r.modified_fraction = success ? modified : 0.0;
  r.queries = queries;
  r.p_gold_before = 0.9;
  r.p_gold_after = success ? 0.3 : 0.9;
  r.n_tokens = 8;
  r.budget = 2;
  r.adversarial = "some text";
  return r;
}

CampaignReport report_of(std::vector<ReportRecord> recs, std::size_t skipped) {
  CampaignReport r;
  r.records = std::move(recs);
  r.summary = summarize_records(r.records, r.records.size() + skipped, skipped, 0);
  return r;
}

TEST(Operation, JsonRoundTripForEveryKind) {
  Operation sub{OpKind::kSubstitute, 2, "these", 0, ErrorType::kArtOrDet, "this", 1.0};
  Operation ins{OpKind::kInsert, 0, "the", 0, ErrorType::kArtOrDet, "", 1.0};
  Operation del{OpKind::kDelete, 1, "", 0, ErrorType::kPrep, "of", 1.0};
  Operation swp{OpKind::kSwap, 3, "", 4, ErrorType::kWorder, "", 1.0};
  for (const Operation& op : {sub, ins, del, swp}) {
    EXPECT_EQ(parse_operation_json(operation_json(op)), op) << operation_json(op);
  }
  EXPECT_EQ(operation_json(sub),
            R"({"kind":"Substitute","position":2,"replacement":"these","error_type":"ArtOrDet","original":"this"})");
}

TEST(Operation, MalformedRejected) {
  EXPECT_THROW(parse_operation_json("{}"), ValidationError);
  EXPECT_THROW(parse_operation_json(R"({"kind":"Twist","position":0,"error_type":"Prep"})"),
               ValidationError);
  EXPECT_THROW(parse_operation_json(R"({"kind":"Delete","position":0,"error_type":"Spelling"})"),
               ValidationError);
  EXPECT_THROW(parse_operation_json("[1"), ValidationError);
}

TEST(Report, RoundTrip) {
  CampaignReport r = report_of({record("a", true, {ErrorType::kPrep, ErrorType::kNn}),
                                record("b", false, {})},
                               1);
  r.records[0].generation_best = {0.8, 0.6, 0.3};
  r.failures.push_back({"c", "oracle error: timeout"});
  r.summary.errors = 1;
  r.summary.instances = 4;
  std::stringstream buf;
  write_report(buf, r);
  const CampaignReport back = parse_report(buf);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_EQ(back.records[0].ops, r.records[0].ops);
  EXPECT_EQ(back.records[0].generation_best, r.records[0].generation_best);
  EXPECT_EQ(back.records[1].adversarial, "some text");
  ASSERT_EQ(back.failures.size(), 1u);
  EXPECT_EQ(back.failures[0].message, "oracle error: timeout");
  EXPECT_EQ(summary_json(back.summary), summary_json(r.summary));
}

TEST(Report, LastLineIsSummary) {
  std::stringstream buf;
  write_report(buf, report_of({record("a", true, {ErrorType::kPrep})}, 0));
  std::string line, last;
  while (std::getline(buf, line)) last = line;
  EXPECT_EQ(last.rfind("{\"summary\":", 0), 0u);
}

TEST(Report, EmptyCampaignRatesAreNa) {
  const CampaignReport r = report_of({}, 3);
  EXPECT_NE(summary_json(r.summary).find("\"success_rate\":\"n/a\""), std::string::npos);
  EXPECT_NE(summary_csv(r.summary).find("success_rate,n/a"), std::string::npos);
  std::stringstream buf;
  write_report(buf, r);
  const CampaignReport back = parse_report(buf);
  EXPECT_FALSE(back.summary.success_rate);
  EXPECT_EQ(back.summary.skipped_incorrect, 3u);
}

TEST(Report, MalformedLineNamed) {
  std::stringstream buf;
  buf << record_json(record("a", true, {ErrorType::kPrep})) << "\n";
  buf << "{\"id\": \"b\", \"success\": true\n";
  try {
    parse_report(buf);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("@ line 2"), std::string::npos) << e.what();
  }
  std::stringstream missing;
  missing << R"({"id":"a","ops":[]})" << "\n";
  EXPECT_THROW(parse_report(missing), ValidationError);
}

TEST(Report, SummaryRecomputedWhenAbsent) {
  std::stringstream buf;
  buf << record_json(record("a", true, {ErrorType::kPrep})) << "\n"
      << record_json(record("b", false, {})) << "\n";
  const CampaignReport r = parse_report(buf);
  EXPECT_EQ(r.summary.attacked, 2u);
  EXPECT_DOUBLE_EQ(*r.summary.success_rate, 0.5);
}

TEST(Report, MergeAddsCounters) {
  const CampaignReport a = report_of({record("a1", true, {ErrorType::kPrep}, 0.1),
                                      record("a2", false, {})},
                                     1);
  const CampaignReport b = report_of({record("b1", true, {ErrorType::kPrep, ErrorType::kSVA}, 0.3),
                                      record("b2", true, {ErrorType::kVform}, 0.2)},
                                     2);
  const std::vector<CampaignReport> both = {a, b};
  const CampaignReport m = merge_reports(both);
  EXPECT_EQ(m.records.size(), 4u);
  EXPECT_EQ(m.summary.instances, 7u);
  EXPECT_EQ(m.summary.skipped_incorrect, 3u);
  EXPECT_EQ(m.summary.successes, 3u);
  EXPECT_DOUBLE_EQ(*m.summary.success_rate, 0.75);
  EXPECT_NEAR(*m.summary.mean_modified_fraction, 0.2, 1e-12);
  EXPECT_EQ(m.summary.harm_counts[index_of(ErrorType::kPrep)], 2u);
  EXPECT_EQ(m.summary.queries, 20u);
}

TEST(Report, CsvHarmRowsInTypeOrder) {
  const CampaignReport r = report_of({record("a", true, {ErrorType::kWorder, ErrorType::kPrep})}, 0);
  const std::string csv = summary_csv(r.summary);
  const std::string tail = csv.substr(csv.find("error_type,harm_count"));
  EXPECT_EQ(tail,
            "error_type,harm_count\nArtOrDet,0\nPrep,1\nTrans,0\nNn,0\nSVA,0\nVform,0\n"
            "Wchoice,0\nWorder,1\n");
  EXPECT_EQ(csv.rfind("metric,value\n", 0), 0u);
}

TEST(Report, FromCampaign) {
  const LanguageResources res = LanguageResources::bundled();
  LinearClassifier o = fixtures::keyword_oracle({{"the", 2.0}, {"a", -1.0}});
  std::vector<TaskInstance> data = {fixtures::single("a", "the cat sleeps", "1", res.pos)};
  const CampaignReport r = to_report(run_campaign(data, o, res, AttackConfig{}));
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].adversarial, "a cat sleeps");
  EXPECT_EQ(r.records[0].n_tokens, 3u);
  EXPECT_EQ(r.records[0].budget, 1u);
}

}  // namespace
}  // namespace gramattack
