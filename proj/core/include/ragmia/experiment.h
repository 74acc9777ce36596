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

#ifndef RAGMIA_EXPERIMENT_H_
#define RAGMIA_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ragmia/attack.h"
#include "ragmia/config.h"
#include "ragmia/corpus.h"
#include "ragmia/metrics.h"

namespace ragmia {

struct MetricsBlock {
  double auc = 0.0;
  double accuracy = 0.0;
  std::vector<RocPoint> roc;
};

struct BaselineResult {
  std::string name;
  std::optional<double> threshold;  // absent for response-only
  MetricsBlock metrics;
  std::vector<MembershipSignal> signals;
};

struct ScoreDistributions {
  Histogram member;
  Histogram nonmember;
};

// Per-label score histograms on a shared [min, max] axis. Requires
// bins >= 2 and at least one signal.
ScoreDistributions export_distributions(
    std::span<const MembershipSignal> signals, int bins);

struct ExperimentReport {
  ExperimentConfig config;
  int adversary = 1;
  FittedThresholds fitted;
  std::vector<MembershipSignal> signals;  // eval members, then non-members
  MetricsBlock metrics;
  std::vector<BaselineResult> baselines;
  ScoreDistributions distributions;
  std::vector<int32_t> eval_member_ids;
  std::vector<int32_t> eval_nonmember_ids;
  std::vector<int32_t> reference_member_ids;
  std::vector<int32_t> reference_nonmember_ids;
  double wall_time_s = 0.0;
};

// Full pipeline: corpus -> split -> system -> reference fitting -> disjoint
// evaluation -> metrics -> baselines -> distribution export. Deterministic
// for a fixed config (wall_time_s aside). Component errors are rethrown
// with the failing stage named; ConfigError keeps its type.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Serialization. The JSON form omits wall_time_s when include_wall_time is
// false so determinism can be checked byte-for-byte. Optional signal fields
// that an access model does not expose are omitted, not null.
Json report_to_json(const ExperimentReport& report,
                    bool include_wall_time = true);
std::string signals_to_csv(std::span<const MembershipSignal> signals);
std::string corpus_to_jsonl(const Corpus& corpus);

std::string verdict_name(Verdict verdict);
std::string label_name(Label label);
Json histogram_to_json(const Histogram& hist);

}  // namespace ragmia

#endif  // RAGMIA_EXPERIMENT_H_
