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

#ifndef RAGMIA_CONFIG_H_
#define RAGMIA_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ragmia/corpus.h"
#include "ragmia/defense.h"
#include "ragmia/generator.h"

namespace ragmia {

using Json = nlohmann::ordered_json;

struct AttackConfig {
  int adversary = 1;
  std::vector<double> theta_grid = {0.04, 0.06, 0.08, 0.10, 0.12};
  std::vector<double> gamma_grid = {0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.6, 0.7, 0.8, 0.9, 1.0};
  double theta_fixed = 0.06;
  // Baseline attacks evaluated alongside the main one. Empty means the
  // default for the adversary: raw-probability for gray-box adversaries,
  // response-only for the black-box one.
  std::vector<std::string> baselines;
};

struct EvalConfig {
  int n_member_eval = 500;
  int n_nonmember_eval = 500;
  // Reference pool size per class: adversary 1 draws this many members plus
  // this many holdout non-members; adversaries 2 and 3 use a non-member
  // holdout pool of the same size.
  int n_reference = 200;
  uint64_t master_seed = 1729;
};

struct PerturbStageConfig {
  double theta = 0.06;
  uint64_t seed = 0;  // resolved from master_seed unless set in the file
};

// Full experiment profile. Defaults reproduce the desk-scale profile:
// 2500 documents at member fraction 0.8, 500+500 evaluation samples,
// 200-per-class references, k = 4, dim = 64.
struct ExperimentConfig {
  CorpusConfig corpus;
  int retrieval_k = 4;
  GeneratorParams generator;
  DefenseConfig defense;
  PerturbStageConfig perturb;
  AttackConfig attack;
  EvalConfig eval;
};

// Defaults with every stage seed resolved from the default master seed.
ExperimentConfig default_config();

// Strict parse: unknown blocks or keys raise ConfigError naming the field,
// as do out-of-range values. Omitted keys keep their defaults; omitted
// stage seeds (corpus.seed, perturb.seed, defense.seed) are derived from
// eval.master_seed with per-stage labels.
ExperimentConfig parse_config(const Json& root);
ExperimentConfig load_config_file(const std::string& path);

// Range validation shared by parse and programmatic construction.
void validate_config(const ExperimentConfig& config);

// Snapshot for report embedding; parse_config(config_to_json(c)) == c.
Json config_to_json(const ExperimentConfig& config);

// Baseline names: "raw-probability" (gray-box) and "response-only"
// (black-box). Throws ConfigError for anything else, and for gray-box
// baselines under the black-box adversary.
void validate_baseline_name(const std::string& name, int adversary);

// The effective baseline list after applying the per-adversary default.
std::vector<std::string> resolve_baselines(const AttackConfig& attack);

}  // namespace ragmia

#endif  // RAGMIA_CONFIG_H_
