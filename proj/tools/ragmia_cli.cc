// Copyright 2026 The ragmia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end for the membership-inference laboratory.
//
// Subcommands:
//   gen-corpus  generate a labeled corpus and dump it as JSONL
//   run         run a full attack experiment, write report JSON + signals CSV
//   report      re-emit a stored report as pretty JSON or per-sample CSV
//   hist        recompute score histograms from a stored report
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ragmia/attack.h"
#include "ragmia/config.h"
#include "ragmia/corpus.h"
#include "ragmia/errors.h"
#include "ragmia/experiment.h"
#include "ragmia/metrics.h"
#include "ragmia/rng.h"

namespace {

using ragmia::ConfigError;
using ragmia::Error;
using ragmia::ExperimentConfig;
using ragmia::Json;

ragmia::Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open input file: " + path);
  }
  try {
    return ragmia::Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError("failed to parse JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file for writing: " + path);
  }
  out << text;
  if (!out) {
    throw Error("failed while writing output file: " + path);
  }
}

ExperimentConfig config_for(const std::string& config_path) {
  if (config_path.empty()) {
    return ragmia::default_config();
  }
  return ragmia::load_config_file(config_path);
}

// Rebuilds per-sample signals from a stored report so the same CSV and
// histogram code paths work on both fresh and reloaded results.
std::vector<ragmia::MembershipSignal> signals_from_report(const Json& report) {
  if (!report.contains("signals") || !report.at("signals").is_array()) {
    throw ConfigError("report is missing the per-sample signal array");
  }
  std::vector<ragmia::MembershipSignal> out;
  out.reserve(report.at("signals").size());
  for (const auto& row : report.at("signals")) {
    ragmia::MembershipSignal sig;
    sig.sample_id = row.at("sample_id").get<int>();
    sig.truth = row.at("truth").get<std::string>() == "member"
                    ? ragmia::Label::kMember
                    : ragmia::Label::kNonMember;
    if (row.contains("p_yes_original")) {
      sig.p_yes_original = row.at("p_yes_original").get<double>();
    }
    if (row.contains("p_yes_perturbed")) {
      sig.p_yes_perturbed = row.at("p_yes_perturbed").get<double>();
    }
    if (row.contains("calibrated")) {
      sig.calibrated = row.at("calibrated").get<double>();
    }
    if (row.contains("f_original")) {
      sig.f_original = row.at("f_original").get<int>();
    }
    if (row.contains("f_perturbed")) {
      sig.f_perturbed = row.at("f_perturbed").get<int>();
    }
    if (row.contains("binary_score")) {
      sig.binary_score = row.at("binary_score").get<int>();
    }
    sig.score = row.at("score").get<double>();
    sig.verdict = row.at("verdict").get<std::string>() == "member"
                      ? ragmia::Verdict::kMember
                      : ragmia::Verdict::kNonMember;
    out.push_back(std::move(sig));
  }
  return out;
}

int run_gen_corpus(const std::string& config_path, const std::string& out_path) {
  ExperimentConfig config = config_for(config_path);
  ragmia::Corpus corpus = ragmia::generate_corpus(config.corpus);
  ragmia::split_membership(corpus, config.corpus.member_fraction,
                           ragmia::derive_seed(config.eval.master_seed, "split"));
  const std::string jsonl = ragmia::corpus_to_jsonl(corpus);
  if (out_path.empty()) {
    std::cout << jsonl;
  } else {
    write_text_file(out_path, jsonl);
    std::cout << "wrote " << corpus.documents.size() << " documents to "
              << out_path << "\n";
  }
  return 0;
}

int run_experiment_cmd(const std::string& config_path, int adversary,
                       const std::string& defense,
                       const std::string& baseline,
                       const std::string& out_path,
                       const std::string& csv_path) {
  ExperimentConfig config = config_for(config_path);
  if (adversary != 0) {
    config.attack.adversary = adversary;
  }
  if (!defense.empty()) {
    config.defense.mode = ragmia::parse_defense_mode(defense);
  }
  if (!baseline.empty()) {
    ragmia::validate_baseline_name(baseline, config.attack.adversary);
    config.attack.baselines = {baseline};
  }
  ragmia::validate_config(config);

  ragmia::ExperimentReport report = ragmia::run_experiment(config);
  const Json json = ragmia::report_to_json(report);
  write_text_file(out_path, json.dump(2) + "\n");
  write_text_file(csv_path, ragmia::signals_to_csv(report.signals));

  std::cout << "adversary " << report.adversary << " defense "
            << ragmia::defense_mode_name(config.defense.mode) << " auc "
            << report.metrics.auc << " accuracy " << report.metrics.accuracy
            << "\n";
  for (const auto& baseline_result : report.baselines) {
    std::cout << "baseline " << baseline_result.name << " auc "
              << baseline_result.metrics.auc << " accuracy "
              << baseline_result.metrics.accuracy << "\n";
  }
  std::cout << "report " << out_path << " signals " << csv_path << "\n";
  return 0;
}

int run_report_cmd(const std::string& in_path, const std::string& format) {
  const Json report = load_json_file(in_path);
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  if (format == "csv") {
    std::cout << ragmia::signals_to_csv(signals_from_report(report));
    return 0;
  }
  throw ConfigError("unknown report format: " + format +
                    " (expected csv or json)");
}

int run_hist_cmd(const std::string& in_path, int bins) {
  if (bins < 2) {
    throw ConfigError("hist requires at least 2 bins");
  }
  const Json report = load_json_file(in_path);
  const auto signals = signals_from_report(report);
  const ragmia::ScoreDistributions dists =
      ragmia::export_distributions(signals, bins);
  Json out;
  out["bins"] = bins;
  out["member"] = ragmia::histogram_to_json(dists.member);
  out["nonmember"] = ragmia::histogram_to_json(dists.nonmember);
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Membership-inference laboratory for retrieval-augmented answering"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  CLI::App* gen = app.add_subcommand(
      "gen-corpus", "Generate a labeled corpus and emit it as JSONL");
  gen->add_option("--config", config_path, "Experiment config file (JSON)");
  gen->add_option("--out", out_path,
                  "Output JSONL path (defaults to standard output)");

  std::string run_config;
  int adversary = 0;
  std::string defense;
  std::string baseline;
  std::string report_out = "report.json";
  std::string csv_out = "signals.csv";
  CLI::App* run = app.add_subcommand(
      "run", "Run an attack experiment and write report + per-sample CSV");
  run->add_option("--config", run_config, "Experiment config file (JSON)");
  run->add_option("--adversary", adversary,
                  "Adversary tier: 1 (calibrated grid fit), 2 (calibrated "
                  "quartile threshold), 3 (binary response flip)")
      ->check(CLI::IsMember({1, 2, 3}));
  run->add_option("--defense", defense,
                  "Defense mode: none, instruction, paraphrase, triples");
  run->add_option("--baseline", baseline,
                  "Single baseline to run: raw-probability or response-only");
  run->add_option("--out", report_out, "Report JSON output path");
  run->add_option("--csv", csv_out, "Per-sample signal CSV output path");

  std::string report_in;
  std::string report_format = "json";
  CLI::App* report = app.add_subcommand(
      "report", "Re-emit a stored report as pretty JSON or per-sample CSV");
  report->add_option("--in", report_in, "Report JSON file")->required();
  report->add_option("--format", report_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string hist_in;
  int hist_bins = 20;
  CLI::App* hist = app.add_subcommand(
      "hist", "Recompute member/nonmember score histograms from a report");
  hist->add_option("--in", hist_in, "Report JSON file")->required();
  hist->add_option("--bins", hist_bins, "Number of histogram bins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      return run_gen_corpus(config_path, out_path);
    }
    if (run->parsed()) {
      return run_experiment_cmd(run_config, adversary, defense, baseline,
                                report_out, csv_out);
    }
    if (report->parsed()) {
      return run_report_cmd(report_in, report_format);
    }
    if (hist->parsed()) {
      return run_hist_cmd(hist_in, hist_bins);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
