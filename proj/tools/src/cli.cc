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

#include "cli.h"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"

#include "gramattack/analysis.h"
#include "gramattack/attack.h"
#include "gramattack/campaign_io.h"
#include "gramattack/confusion.h"
#include "gramattack/error.h"
#include "gramattack/perturb.h"
#include "gramattack/random.h"
#include "gramattack/remote_oracle.h"
#include "gramattack/resources.h"
#include "gramattack/text_model.h"
#include "gramattack/toy_oracle.h"

namespace gramattack::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::string_view kBuiltinPrefix = "builtin:";
constexpr std::string_view kRemotePrefix = "remote:";

struct Common {
  std::string resources_dir;
  std::string confusions;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  std::string format;
};

struct RemoteFlags {
  double timeout = 30.0;
  int retries = 3;
  std::size_t max_batch = kDefaultMaxBatch;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  const char* env = std::getenv("GRAMATTACK_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || *env == '-') {
    throw ValidationError(std::string("GRAMATTACK_SEED is not an unsigned integer: ") + env);
  }
  return v;
}

LanguageResources load_resources(const Common& c, std::ostream& err) {
  LanguageResources res = c.resources_dir.empty()
                              ? LanguageResources::bundled()
                              : LanguageResources::from_directory(c.resources_dir);
  if (!c.confusions.empty()) res.apply(load_confusion_file(c.confusions));
  (void)err;
  return res;
}

DatasetFormat format_for(const std::string& path, const std::string& flag) {
  if (!flag.empty()) {
    const auto f = parse_dataset_format(flag);
    if (!f) throw ValidationError("unknown dataset format: " + flag);
    return *f;
  }
  return fs::path(path).extension() == ".tsv" ? DatasetFormat::kTsv : DatasetFormat::kJsonl;
}

void report_issues(const std::string& path, const std::vector<RecordIssue>& issues,
                   const char* level, std::ostream& err) {
  for (const RecordIssue& i : issues) {
    err << level << ": " << path;
    if (i.line > 0) err << ':' << i.line;
    err << ": " << i.message << '\n';
  }
}

std::vector<TaskInstance> read_dataset(const std::string& path, const Common& c,
                                       const PosLexicon& pos, std::ostream& err) {
  LoadResult<TaskInstance> r = load_dataset(path, format_for(path, c.format), pos);
  report_issues(path, r.warnings, "warning", err);
  if (!r.ok()) {
    report_issues(path, r.errors, "error", err);
    throw ValidationError(std::to_string(r.errors.size()) + " malformed record(s) in " + path);
  }
  return std::move(r.items);
}

std::vector<MinimalEditPair> read_pairs(const std::string& path, const PosLexicon& pos,
                                        std::ostream& err) {
  LoadResult<MinimalEditPair> r = load_minimal_pairs(path, pos);
  report_issues(path, r.warnings, "warning", err);
  if (!r.ok()) {
    report_issues(path, r.errors, "error", err);
    throw ValidationError(std::to_string(r.errors.size()) + " malformed pair(s) in " + path);
  }
  return std::move(r.items);
}

RemoteOptions remote_options(const RemoteFlags& f) {
  RemoteOptions o;
  o.timeout_seconds = f.timeout;
  o.retries = f.retries;
  o.max_batch = f.max_batch;
  return o;
}

// Owns whichever oracle an --oracle value names, behind a query cache.
class OracleHandle {
 public:
  OracleHandle(const std::string& uri, const RemoteFlags& flags) {
    const std::string_view s(uri);
    if (s.starts_with(kBuiltinPrefix)) {
      toy_ = std::make_unique<LinearClassifier>(
          LinearClassifier::load(std::string(s.substr(kBuiltinPrefix.size()))));
      cache_ = std::make_unique<CachingOracle>(*toy_);
    } else if (s.starts_with(kRemotePrefix)) {
      remote_ = std::make_unique<RemoteOracle>(std::string(s.substr(kRemotePrefix.size())),
                                               remote_options(flags));
      cache_ = std::make_unique<CachingOracle>(*remote_);
    } else {
      throw ValidationError("oracle must be builtin:<model.json> or remote:<url>, got " + uri);
    }
  }
  Oracle& get() { return *cache_; }

 private:
  std::unique_ptr<LinearClassifier> toy_;
  std::unique_ptr<RemoteOracle> remote_;
  std::unique_ptr<CachingOracle> cache_;
};

class MaskFillHandle {
 public:
  MaskFillHandle(const std::string& uri, const RemoteFlags& flags, const Common& c,
                 const PosLexicon& pos, std::ostream& err) {
    const std::string_view s(uri);
    if (s.starts_with(kBuiltinPrefix)) {
      const std::string path(s.substr(kBuiltinPrefix.size()));
      std::vector<TaggedSentence> corpus;
      for (const TaskInstance& inst : read_dataset(path, c, pos, err)) {
        corpus.insert(corpus.end(), inst.segments.begin(), inst.segments.end());
      }
      if (corpus.empty()) throw ValidationError("masked-LM corpus is empty: " + path);
      toy_ = std::make_unique<BigramMaskedLM>(BigramMaskedLM::from_sentences(corpus));
    } else if (s.starts_with(kRemotePrefix)) {
      remote_ = std::make_unique<RemoteOracle>(std::string(s.substr(kRemotePrefix.size())),
                                               remote_options(flags));
    } else {
      throw ValidationError("mlm must be builtin:<corpus> or remote:<url>, got " + uri);
    }
  }
  MaskFillOracle& get() {
    if (toy_) return *toy_;
    return *remote_;
  }

 private:
  std::unique_ptr<BigramMaskedLM> toy_;
  std::unique_ptr<RemoteOracle> remote_;
};

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

ordered_json attack_config_json(const AttackConfig& cfg) {
  ordered_json o;
  o["algorithm"] = std::string(to_string(cfg.algorithm));
  o["budget_fraction"] = cfg.budget_fraction;
  o["beam_size"] = cfg.beam_size;
  o["beam_allow_skip"] = cfg.beam_allow_skip;
  o["population"] = cfg.population;
  o["generation_fraction"] = cfg.generation_fraction;
  return o;
}

// Everything an invocation resolved, written next to its main output.
class RunConfig {
 public:
  RunConfig(std::string subcommand, const Common& c) {
    json_["subcommand"] = std::move(subcommand);
    json_["seed"] = resolve_seed(c);
    json_["jobs"] = c.jobs;
    json_["resources"] = c.resources_dir.empty() ? "bundled" : c.resources_dir;
    json_["confusions"] = c.confusions.empty() ? "default" : c.confusions;
  }
  template <typename T>
  void set(const std::string& key, T&& value) {
    json_[key] = std::forward<T>(value);
  }
  void write(const std::string& output) const {
    json_["output"] = output;
    write_text(output + ".config.json", json_.dump(2) + "\n");
  }

 private:
  mutable ordered_json json_;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--resources", c.resources_dir, "Directory overriding bundled lexicon files");
  sub->add_option("--confusions", c.confusions, "Confusion file from `estimate`");
  sub->add_option("--seed", c.seed, "Random seed (overrides GRAMATTACK_SEED)");
  sub->add_option("--format", c.format, "Dataset format: jsonl or tsv (default: by extension)");
}

void add_attack_flags(CLI::App* sub, AttackConfig& cfg, std::string& algorithm) {
  sub->add_option("--algorithm", algorithm, "greedy, beam or genetic")->capture_default_str();
  sub->add_option("--budget", cfg.budget_fraction, "Max fraction of tokens edited")
      ->capture_default_str();
  sub->add_option("--beam-size", cfg.beam_size)->capture_default_str();
  sub->add_option("--population", cfg.population)->capture_default_str();
  sub->add_option("--generations-frac", cfg.generation_fraction,
                  "Generations as a fraction of sentence length")
      ->capture_default_str();
  sub->add_flag("--beam-allow-skip,!--no-beam-allow-skip", cfg.beam_allow_skip,
                "Let beam entries pass over a token unedited");
}

void add_remote_flags(CLI::App* sub, RemoteFlags& f) {
  sub->add_option("--timeout", f.timeout, "Remote oracle timeout in seconds")
      ->capture_default_str();
  sub->add_option("--retries", f.retries, "Remote oracle retries")->capture_default_str();
  sub->add_option("--max-batch", f.max_batch, "Remote oracle batch size")
      ->capture_default_str();
}

AttackConfig resolve_attack(AttackConfig cfg, const std::string& algorithm, const Common& c) {
  const auto a = parse_algorithm(algorithm);
  if (!a) throw ValidationError("unknown algorithm: " + algorithm);
  cfg.algorithm = *a;
  cfg.seed = resolve_seed(c);
  cfg.validate();
  return cfg;
}

std::string summary_line(const CampaignSummary& s) {
  return "attacked " + std::to_string(s.attacked) + ", successes " +
         std::to_string(s.successes) + ", success_rate " + format_rate(s.success_rate) +
         ", mean_modified_fraction " + format_rate(s.mean_modified_fraction) + ", skipped " +
         std::to_string(s.skipped_incorrect) + ", errors " + std::to_string(s.errors);
}

void print_failures(const std::vector<InstanceFailure>& failures, std::ostream& err) {
  for (const InstanceFailure& f : failures) err << "error: " << f.id << ": " << f.message << '\n';
}

// A run where every attempted instance failed is reported as an oracle
// failure; partial failures still exit 0.
int run_status(std::size_t attempted, std::size_t failed) {
  return attempted > 0 && failed == attempted ? kExitOracle : kExitOk;
}

// Labels follow their tokens through a sequence of ops; inserted tokens get
// "O".
std::vector<std::string> carry_labels(std::vector<std::string> labels,
                                      std::span<const Operation> sequential_ops) {
  for (const Operation& op : sequential_ops) {
    std::vector<std::string> next;
    const Operation one[] = {op};
    for (std::ptrdiff_t src : source_indices(labels.size(), one)) {
      next.push_back(src < 0 ? "O" : labels[static_cast<std::size_t>(src)]);
    }
    labels = std::move(next);
  }
  return labels;
}

std::string format_fraction(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", f);
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammatical-error perturbation and black-box attack engine", "gramattack"};
  app.require_subcommand(1);

  Common common;
  RemoteFlags remote;
  AttackConfig attack_cfg;
  std::string algorithm = "greedy";
  std::string data_path, pairs_path, out_path, oracle_uri, mlm_uri, target_type, per_file_out;
  std::size_t n_errors = 1;
  double proportion = 0.0;
  std::vector<double> fractions = {0.15, 0.25, 0.35, 0.45};
  std::vector<std::string> report_paths;

  CLI::App* estimate_cmd = app.add_subcommand("estimate", "Estimate confusion weights from pairs");
  estimate_cmd->add_option("--pairs", pairs_path, "Minimal-edit pair file")->required();
  estimate_cmd->add_option("--out", out_path, "Confusion file to write")->required();
  add_common(estimate_cmd, common);

  CLI::App* perturb_cmd = app.add_subcommand("perturb", "Inject sampled errors into a dataset");
  perturb_cmd->add_option("--data", data_path)->required();
  perturb_cmd->add_option("--out", out_path)->required();
  perturb_cmd->add_option("--n-errors", n_errors, "Errors per sentence")->capture_default_str();
  perturb_cmd->add_option("--target-type", target_type, "Restrict errors to one type");
  add_common(perturb_cmd, common);

  CLI::App* probe_cmd = app.add_subcommand("probe-data", "Build a half-corrupted probing dataset");
  probe_cmd->add_option("--data", data_path)->required();
  probe_cmd->add_option("--out", out_path)->required();
  probe_cmd->add_option("--target-type", target_type)->required();
  add_common(probe_cmd, common);

  CLI::App* train_cmd = app.add_subcommand("train-oracle", "Train the builtin toy classifier");
  train_cmd->add_option("--data", data_path)->required();
  train_cmd->add_option("--out", out_path)->required();
  add_common(train_cmd, common);

  CLI::App* attack_cmd = app.add_subcommand("attack", "Run an attack campaign");
  attack_cmd->add_option("--data", data_path)->required();
  attack_cmd->add_option("--oracle", oracle_uri, "builtin:<model.json> or remote:<url>")
      ->required();
  attack_cmd->add_option("--out", out_path, "Campaign report (JSON lines)")->required();
  attack_cmd->add_option("--jobs", common.jobs)->capture_default_str();
  add_common(attack_cmd, common);
  add_attack_flags(attack_cmd, attack_cfg, algorithm);
  add_remote_flags(attack_cmd, remote);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Greedy success rate per budget fraction");
  sweep_cmd->add_option("--data", data_path)->required();
  sweep_cmd->add_option("--oracle", oracle_uri)->required();
  sweep_cmd->add_option("--out", out_path, "Sweep CSV")->required();
  sweep_cmd->add_option("--fractions", fractions)->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--jobs", common.jobs)->capture_default_str();
  add_common(sweep_cmd, common);
  add_remote_flags(sweep_cmd, remote);

  CLI::App* cloze_cmd = app.add_subcommand("cloze", "Cloze likelihood-drop table");
  cloze_cmd->add_option("--pairs", pairs_path)->required();
  cloze_cmd->add_option("--mlm", mlm_uri, "builtin:<corpus dataset> or remote:<url>")
      ->required();
  cloze_cmd->add_option("--out", out_path, "Table (TSV)")->required();
  add_common(cloze_cmd, common);
  add_remote_flags(cloze_cmd, remote);

  CLI::App* augment_cmd = app.add_subcommand("augment", "Emit originals plus perturbed copies");
  augment_cmd->add_option("--data", data_path)->required();
  augment_cmd->add_option("--oracle", oracle_uri)->required();
  augment_cmd->add_option("--out", out_path)->required();
  augment_cmd->add_option("--proportion", proportion, "Fraction of instances to copy")
      ->required();
  augment_cmd->add_option("--jobs", common.jobs)->capture_default_str();
  add_common(augment_cmd, common);
  add_attack_flags(augment_cmd, attack_cfg, algorithm);
  add_remote_flags(augment_cmd, remote);

  CLI::App* report_cmd = app.add_subcommand("report", "Summarize campaign reports");
  report_cmd->add_option("reports", report_paths, "Campaign report files")->required();
  report_cmd->add_option("--out", out_path, "Summary CSV (default: stdout)");
  report_cmd->add_option("--per-file-out", per_file_out, "One summary row per report file");

  std::vector<std::string> argv_store = {"gramattack"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (common.jobs == 0) {
    err << "error: --jobs must be >= 1\n";
    return kExitValidation;
  }

  try {
    if (estimate_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      const std::vector<MinimalEditPair> pairs = read_pairs(pairs_path, res.pos, err);
      const Estimate est = estimate(pairs);
      write_confusion_file(out_path, {est.distribution, est.sets});
      RunConfig cfg("estimate", common);
      cfg.set("pairs", pairs_path);
      cfg.write(out_path);
      out << "estimated from " << est.supported_edits << " supported edits in " << pairs.size()
          << " pairs\n";
      return kExitOk;
    }

    if (perturb_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      if (n_errors == 0) throw ValidationError("--n-errors must be >= 1");
      ErrorDistribution dist = res.distribution;
      if (!target_type.empty()) {
        const auto t = parse_error_type(target_type);
        if (!t) throw ValidationError("unknown error type: " + target_type);
        dist = ErrorDistribution::point(*t);
      }
      const std::uint64_t seed = resolve_seed(common);
      const std::vector<TaskInstance> data = read_dataset(data_path, common, res.pos, err);
      std::ostringstream body;
      std::size_t corrupted = 0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        TaskInstance inst = data[i];
        std::vector<std::size_t> positions;
        Rng rng(derive_seed(seed, i));
        try {
          Perturbation p = probabilistic_transform(inst.mutable_sentence(), dist, res,
                                                   n_errors, rng);
          if (inst.kind == TaskKind::kTagging) {
            inst.token_labels = carry_labels(inst.token_labels, p.ops);
          }
          inst.segments[inst.mutable_segment] = std::move(p.sentence);
          positions = std::move(p.error_positions);
          ++corrupted;
        } catch (const ValidationError& e) {
          err << "warning: " << inst.id << ": " << e.what() << "; kept unchanged\n";
        }
        body << dataset_record_json(inst, &positions) << '\n';
      }
      write_text(out_path, body.str());
      RunConfig cfg("perturb", common);
      cfg.set("data", data_path);
      cfg.set("n_errors", n_errors);
      cfg.set("target_type", target_type.empty() ? "any" : target_type);
      cfg.write(out_path);
      out << "corrupted " << corrupted << " of " << data.size() << " instances\n";
      return kExitOk;
    }

    if (probe_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      const auto t = parse_error_type(target_type);
      if (!t) throw ValidationError("unknown error type: " + target_type);
      const std::vector<TaskInstance> data = read_dataset(data_path, common, res.pos, err);
      std::vector<TaggedSentence> clean;
      for (const TaskInstance& inst : data) clean.push_back(inst.mutable_sentence());
      Rng rng(resolve_seed(common));
      const ProbeDataset probe = build_probe_dataset(clean, res, *t, rng);
      for (const std::string& w : probe.warnings) err << "warning: " << w << '\n';
      std::ostringstream body;
      std::size_t corrupted = 0;
      for (const ProbeItem& item : probe.items) {
        TaskInstance inst;
        inst.id = data[item.source_index].id;
        inst.segments = {item.sentence};
        inst.gold_label = item.label;
        if (item.label == kUnacceptable) ++corrupted;
        body << dataset_record_json(inst, &item.error_positions) << '\n';
      }
      write_text(out_path, body.str());
      RunConfig cfg("probe-data", common);
      cfg.set("data", data_path);
      cfg.set("target_type", target_type);
      cfg.write(out_path);
      out << "probe dataset: " << probe.items.size() << " sentences, " << corrupted
          << " corrupted\n";
      return kExitOk;
    }

    if (train_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      const std::vector<TaskInstance> data = read_dataset(data_path, common, res.pos, err);
      LinearClassifier::train(data).save(out_path);
      RunConfig cfg("train-oracle", common);
      cfg.set("data", data_path);
      cfg.write(out_path);
      out << "trained on " << data.size() << " instances\n";
      return kExitOk;
    }

    if (attack_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      const AttackConfig cfg = resolve_attack(attack_cfg, algorithm, common);
      const std::vector<TaskInstance> data = read_dataset(data_path, common, res.pos, err);
      OracleHandle oracle(oracle_uri, remote);
      const Campaign campaign = run_campaign(data, oracle.get(), res, cfg, common.jobs);
      std::ostringstream body;
      write_report(body, to_report(campaign));
      write_text(out_path, body.str());
      RunConfig rc("attack", common);
      rc.set("data", data_path);
      rc.set("oracle", oracle_uri);
      rc.set("attack", attack_config_json(cfg));
      rc.write(out_path);
      print_failures(campaign.failures, err);
      out << summary_line(campaign.summary) << '\n';
      return run_status(data.size(), campaign.failures.size());
    }

    if (sweep_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      AttackConfig cfg = attack_cfg;
      cfg.seed = resolve_seed(common);
      const std::vector<TaskInstance> data = read_dataset(data_path, common, res.pos, err);
      OracleHandle oracle(oracle_uri, remote);
      const SweepResult sweep =
          budget_sweep(data, oracle.get(), res, fractions, cfg, common.jobs);
      write_text(out_path, sweep_csv(sweep));
      for (const SweepPoint& p : sweep.points) {
        CampaignReport report;
        for (const AttackResult& r : p.results) report.records.push_back(to_record(r));
        report.failures = sweep.failures;
        report.summary = p.summary;
        std::ostringstream body;
        write_report(body, report);
        write_text(out_path + ".budget-" + format_fraction(p.fraction) + ".jsonl", body.str());
      }
      RunConfig rc("sweep", common);
      rc.set("data", data_path);
      rc.set("oracle", oracle_uri);
      rc.set("fractions", fractions);
      rc.write(out_path);
      print_failures(sweep.failures, err);
      out << sweep_csv(sweep);
      return run_status(data.size(), sweep.failures.size());
    }

    if (cloze_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      const std::vector<MinimalEditPair> pairs = read_pairs(pairs_path, res.pos, err);
      MaskFillHandle mlm(mlm_uri, remote, common, res.pos, err);
      const ClozeResult result = cloze_drop(pairs, mlm.get());
      for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
      write_text(out_path, cloze_table_tsv(result.matrix));
      RunConfig rc("cloze", common);
      rc.set("pairs", pairs_path);
      rc.set("mlm", mlm_uri);
      rc.write(out_path);
      out << "cloze: " << result.usable_pairs << " usable pairs, "
          << result.matrix.total_count() << " cells filled\n";
      return kExitOk;
    }

    if (augment_cmd->parsed()) {
      const LanguageResources res = load_resources(common, err);
      const AttackConfig cfg = resolve_attack(attack_cfg, algorithm, common);
      const std::vector<TaskInstance> data = read_dataset(data_path, common, res.pos, err);
      OracleHandle oracle(oracle_uri, remote);
      const AugmentResult result =
          augment(data, oracle.get(), res, proportion, cfg, common.jobs);
      std::ostringstream body;
      write_dataset_jsonl(body, result.records);
      write_text(out_path, body.str());
      RunConfig rc("augment", common);
      rc.set("data", data_path);
      rc.set("oracle", oracle_uri);
      rc.set("proportion", proportion);
      rc.set("attack", attack_config_json(cfg));
      rc.write(out_path);
      print_failures(result.failures, err);
      out << "augmented: " << result.records.size() << " records, " << result.selected
          << " selected, " << result.flipped << " flipped\n";
      return run_status(result.selected, result.failures.size());
    }

    if (report_cmd->parsed()) {
      std::vector<CampaignReport> reports;
      for (const std::string& p : report_paths) reports.push_back(load_report(p));
      const CampaignReport merged = merge_reports(reports);
      const std::string table = summary_csv(merged.summary);
      if (out_path.empty()) {
        out << table;
      } else {
        write_text(out_path, table);
      }
      if (!per_file_out.empty()) {
        std::string rows = "file,attacked,successes,success_rate,mean_modified_fraction\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
          const CampaignSummary& s = reports[i].summary;
          rows += report_paths[i] + "," + std::to_string(s.attacked) + "," +
                  std::to_string(s.successes) + "," + format_rate(s.success_rate) + "," +
                  format_rate(s.mean_modified_fraction) + "\n";
        }
        write_text(per_file_out, rows);
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const OracleError& e) {
    err << "oracle error: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << "error: no subcommand\n";
  return kExitValidation;
}

}  // namespace gramattack::cli
