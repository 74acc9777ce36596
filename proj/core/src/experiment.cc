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

#include "ragmia/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <utility>

#include "ragmia/errors.h"
#include "ragmia/generator.h"
#include "ragmia/rng.h"

namespace ragmia {

namespace {

constexpr int kReportHistogramBins = 20;

// Rethrows component failures with the failing stage named. ConfigError
// keeps its type (it maps to a distinct process exit code).
template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(stage) + ": " + e.what());
  } catch (const Error& e) {
    throw Error(std::string(stage) + ": " + e.what());
  }
}

std::vector<int32_t> sample_ids(const std::vector<int32_t>& pool, int n,
                                Rng& rng, const char* what) {
  if (static_cast<int>(pool.size()) < n) {
    throw CapacityError(std::string(what) + " pool holds " +
                        std::to_string(pool.size()) + " documents; " +
                        std::to_string(n) + " requested");
  }
  std::vector<size_t> idx = rng.sample_indices(pool.size(), n);
  std::sort(idx.begin(), idx.end());
  std::vector<int32_t> out;
  out.reserve(idx.size());
  for (size_t i : idx) out.push_back(pool[i]);
  return out;
}

MetricsBlock compute_metrics(std::span<const MembershipSignal> signals) {
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<int> verdicts;
  scores.reserve(signals.size());
  labels.reserve(signals.size());
  verdicts.reserve(signals.size());
  for (const MembershipSignal& s : signals) {
    scores.push_back(s.score);
    labels.push_back(s.truth == Label::kMember ? 1 : 0);
    verdicts.push_back(s.verdict == Verdict::kMember ? 1 : 0);
  }
  MetricsBlock block;
  block.auc = auc(scores, labels);
  block.accuracy = accuracy(verdicts, labels);
  block.roc = roc_curve(scores, labels);
  const double integral = trapezoid_area(block.roc);
  if (std::abs(integral - block.auc) > 1e-9) {
    throw MetricError("ROC integral " + std::to_string(integral) +
                      " disagrees with rank AUC " +
                      std::to_string(block.auc));
  }
  return block;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json signal_to_json(const MembershipSignal& s) {
  Json row;
  row["sample_id"] = s.sample_id;
  row["truth"] = label_name(s.truth);
  if (s.p_yes_original) row["p_yes_original"] = *s.p_yes_original;
  if (s.p_yes_perturbed) row["p_yes_perturbed"] = *s.p_yes_perturbed;
  if (s.calibrated) row["calibrated"] = *s.calibrated;
  if (s.f_original) row["f_original"] = *s.f_original;
  if (s.f_perturbed) row["f_perturbed"] = *s.f_perturbed;
  if (s.binary_score) row["binary_score"] = *s.binary_score;
  row["score"] = s.score;
  row["verdict"] = verdict_name(s.verdict);
  return row;
}

}  // namespace

std::string verdict_name(Verdict verdict) {
  return verdict == Verdict::kMember ? "member" : "nonmember";
}

std::string label_name(Label label) {
  switch (label) {
    case Label::kMember: return "member";
    case Label::kNonMember: return "nonmember";
    case Label::kUnassigned: return "unassigned";
  }
  throw InputError("unknown label value");
}

Json histogram_to_json(const Histogram& hist) {
  Json bins = Json::array();
  for (const HistogramBin& bin : hist.bins) {
    bins.push_back({{"lo", bin.lo},
                    {"hi", bin.hi},
                    {"count", bin.count},
                    {"density", bin.density}});
  }
  return Json{{"total", hist.total}, {"bins", std::move(bins)}};
}

ScoreDistributions export_distributions(
    std::span<const MembershipSignal> signals, int bins) {
  if (signals.empty()) {
    throw InputError("cannot export distributions of no signals");
  }
  if (bins < 2) {
    throw InputError("distribution export needs at least 2 bins, got " +
                     std::to_string(bins));
  }
  double lo = signals.front().score;
  double hi = signals.front().score;
  std::vector<double> member_scores;
  std::vector<double> nonmember_scores;
  for (const MembershipSignal& s : signals) {
    lo = std::min(lo, s.score);
    hi = std::max(hi, s.score);
    if (s.truth == Label::kMember) {
      member_scores.push_back(s.score);
    } else {
      nonmember_scores.push_back(s.score);
    }
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  ScoreDistributions dist;
  dist.member = build_histogram(member_scores, bins, lo, hi);
  dist.nonmember = build_histogram(nonmember_scores, bins, lo, hi);
  return dist;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  run_stage("config", [&config] {
    validate_config(config);
    return 0;
  });

  ExperimentReport report;
  report.config = config;
  report.adversary = config.attack.adversary;

  Corpus corpus = run_stage("corpus", [&config] {
    return generate_corpus(config.corpus);
  });
  run_stage("split", [&] {
    split_membership(corpus, config.corpus.member_fraction,
                     derive_seed(config.eval.master_seed, "split"));
    return 0;
  });

  RagSystem system = run_stage("system", [&] {
    return RagSystem(corpus, config.generator, config.retrieval_k,
                     config.defense);
  });
  GrayBoxView gray(system);
  BlackBoxView black(system);
  const Embedder& embedder = system.embedder();

  run_stage("eval", [&] {
    Rng rng(derive_seed(config.eval.master_seed, "eval"));
    report.eval_member_ids = sample_ids(corpus.member_ids,
                                        config.eval.n_member_eval, rng,
                                        "eval member");
    report.eval_nonmember_ids = sample_ids(corpus.nonmember_ids,
                                           config.eval.n_nonmember_eval, rng,
                                           "eval non-member");
    return 0;
  });

  const std::vector<std::string> baselines = resolve_baselines(config.attack);

  ReferenceSet reference;
  run_stage("reference", [&] {
    const uint64_t seed = derive_seed(config.eval.master_seed, "reference");
    if (config.attack.adversary == 1) {
      std::unordered_set<int32_t> exclude(report.eval_member_ids.begin(),
                                          report.eval_member_ids.end());
      reference = sample_reference(corpus, config.eval.n_reference,
                                   config.eval.n_reference,
                                   ReferenceMode::kOverlapping, seed, exclude);
    } else if (config.attack.adversary == 2) {
      reference = sample_reference(corpus, 0, config.eval.n_reference,
                                   ReferenceMode::kDisjoint, seed);
    }
    // Reference/eval disjointness is a hard invariant of the protocol.
    std::unordered_set<int32_t> eval_ids(report.eval_member_ids.begin(),
                                         report.eval_member_ids.end());
    eval_ids.insert(report.eval_nonmember_ids.begin(),
                    report.eval_nonmember_ids.end());
    for (const Document* doc : reference.samples) {
      if (eval_ids.contains(doc->doc_id)) {
        throw Error("reference sample " + std::to_string(doc->doc_id) +
                    " leaked into the evaluation set");
      }
    }
    for (size_t i = 0; i < reference.samples.size(); ++i) {
      if (reference.labels[i] == Label::kMember) {
        report.reference_member_ids.push_back(reference.samples[i]->doc_id);
      } else {
        report.reference_nonmember_ids.push_back(
            reference.samples[i]->doc_id);
      }
    }
    return 0;
  });

  run_stage("fit", [&] {
    if (config.attack.adversary == 1) {
      report.fitted = adv1_fit(reference, gray, embedder,
                               config.attack.theta_grid,
                               config.attack.gamma_grid, config.perturb.seed);
    } else if (config.attack.adversary == 2) {
      report.fitted.theta_star = config.attack.theta_fixed;
      report.fitted.tau =
          adv2_threshold(reference, gray, embedder, config.attack.theta_fixed,
                         config.perturb.seed);
    } else {
      report.fitted.theta_star = config.attack.theta_fixed;
    }
    return 0;
  });

  run_stage("evaluate", [&] {
    std::vector<int32_t> order = report.eval_member_ids;
    order.insert(order.end(), report.eval_nonmember_ids.begin(),
                 report.eval_nonmember_ids.end());
    report.signals.reserve(order.size());
    for (int32_t id : order) {
      const Document& doc = corpus.documents[id];
      switch (config.attack.adversary) {
        case 1:
          report.signals.push_back(adv1_infer(doc, gray, embedder,
                                              report.fitted,
                                              config.perturb.seed));
          break;
        case 2:
          report.signals.push_back(
              adv2_infer(doc, gray, embedder, report.fitted.tau,
                         report.fitted.theta_star, config.perturb.seed));
          break;
        default:
          report.signals.push_back(adv3_infer(doc, black, embedder,
                                              report.fitted.theta_star,
                                              config.perturb.seed));
          break;
      }
    }
    return 0;
  });

  run_stage("metrics", [&] {
    report.metrics = compute_metrics(report.signals);
    return 0;
  });

  run_stage("baseline", [&] {
    for (const std::string& name : baselines) {
      BaselineResult result;
      result.name = name;
      if (name == "raw-probability") {
        // Thresholded by the same mechanism as the adversary under test.
        double gamma = 0.0;
        if (config.attack.adversary == 1) {
          gamma = fit_raw_gamma(reference, gray, config.attack.gamma_grid);
        } else {
          gamma = raw_quartile_threshold(reference, gray);
        }
        result.threshold = gamma;
        for (int32_t id : report.eval_member_ids) {
          result.signals.push_back(
              baseline_raw_probability(corpus.documents[id], gray, gamma));
        }
        for (int32_t id : report.eval_nonmember_ids) {
          result.signals.push_back(
              baseline_raw_probability(corpus.documents[id], gray, gamma));
        }
      } else {  // response-only
        for (int32_t id : report.eval_member_ids) {
          result.signals.push_back(
              baseline_response_only(corpus.documents[id], black));
        }
        for (int32_t id : report.eval_nonmember_ids) {
          result.signals.push_back(
              baseline_response_only(corpus.documents[id], black));
        }
      }
      result.metrics = compute_metrics(result.signals);
      report.baselines.push_back(std::move(result));
    }
    return 0;
  });

  run_stage("export", [&] {
    report.distributions =
        export_distributions(report.signals, kReportHistogramBins);
    return 0;
  });

  const auto t1 = std::chrono::steady_clock::now();
  report.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  return report;
}

Json report_to_json(const ExperimentReport& report, bool include_wall_time) {
  Json root;
  root["config"] = config_to_json(report.config);
  root["adversary"] = report.adversary;

  Json fitted;
  fitted["theta_star"] = report.fitted.theta_star;
  if (report.adversary == 1) {
    fitted["gamma_star"] = report.fitted.gamma_star;
    Json grid = Json::array();
    for (const GridCell& cell : report.fitted.grid_trace) {
      grid.push_back({{"theta", cell.theta},
                      {"gamma", cell.gamma},
                      {"accuracy", cell.accuracy}});
    }
    fitted["grid_trace"] = std::move(grid);
  } else if (report.adversary == 2) {
    fitted["tau"] = report.fitted.tau;
  }
  root["fitted"] = std::move(fitted);

  Json metrics;
  metrics["auc"] = report.metrics.auc;
  metrics["accuracy"] = report.metrics.accuracy;
  Json roc = Json::array();
  for (const RocPoint& point : report.metrics.roc) {
    roc.push_back({{"fpr", point.fpr},
                   {"tpr", point.tpr},
                   {"threshold", point.threshold}});
  }
  metrics["roc"] = std::move(roc);
  root["metrics"] = std::move(metrics);

  Json baselines = Json::array();
  for (const BaselineResult& baseline : report.baselines) {
    Json b;
    b["name"] = baseline.name;
    if (baseline.threshold) b["threshold"] = *baseline.threshold;
    b["auc"] = baseline.metrics.auc;
    b["accuracy"] = baseline.metrics.accuracy;
    baselines.push_back(std::move(b));
  }
  root["baselines"] = std::move(baselines);

  root["histograms"] = {
      {"member", histogram_to_json(report.distributions.member)},
      {"nonmember", histogram_to_json(report.distributions.nonmember)},
  };

  Json signals = Json::array();
  for (const MembershipSignal& s : report.signals) {
    signals.push_back(signal_to_json(s));
  }
  root["signals"] = std::move(signals);

  root["eval"] = {
      {"member_ids", report.eval_member_ids},
      {"nonmember_ids", report.eval_nonmember_ids},
  };
  root["reference"] = {
      {"member_ids", report.reference_member_ids},
      {"nonmember_ids", report.reference_nonmember_ids},
  };
  if (include_wall_time) root["wall_time_s"] = report.wall_time_s;
  return root;
}

std::string signals_to_csv(std::span<const MembershipSignal> signals) {
  std::string out =
      "sample_id,truth,p_yes_original,p_yes_perturbed,calibrated,"
      "f_original,f_perturbed,binary_score,score,verdict\n";
  for (const MembershipSignal& s : signals) {
    out += std::to_string(s.sample_id);
    out += ',';
    out += label_name(s.truth);
    out += ',';
    if (s.p_yes_original) out += format_double(*s.p_yes_original);
    out += ',';
    if (s.p_yes_perturbed) out += format_double(*s.p_yes_perturbed);
    out += ',';
    if (s.calibrated) out += format_double(*s.calibrated);
    out += ',';
    if (s.f_original) out += std::to_string(*s.f_original);
    out += ',';
    if (s.f_perturbed) out += std::to_string(*s.f_perturbed);
    out += ',';
    if (s.binary_score) out += std::to_string(*s.binary_score);
    out += ',';
    out += format_double(s.score);
    out += ',';
    out += verdict_name(s.verdict);
    out += '\n';
  }
  return out;
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const Document& doc : corpus.documents) {
    Json row;
    row["id"] = doc.doc_id;
    row["label"] = label_name(doc.label);
    Json tokens = Json::array();
    for (const Token& token : doc.tokens) tokens.push_back(token.id);
    row["tokens"] = std::move(tokens);
    out += row.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ragmia
