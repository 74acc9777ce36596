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

#include "ragmia/config.h"

#include <algorithm>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "ragmia/errors.h"
#include "ragmia/rng.h"

namespace ragmia {

namespace {

void check_known_keys(const Json& block, const std::string& block_name,
                      const std::unordered_set<std::string>& allowed) {
  for (const auto& item : block.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigError("unknown key \"" + block_name + "." + item.key() +
                        "\"");
    }
  }
}

double get_number(const Json& block, const std::string& block_name,
                  const std::string& key, double fallback) {
  if (!block.contains(key)) return fallback;
  const Json& v = block.at(key);
  if (!v.is_number()) {
    throw ConfigError("\"" + block_name + "." + key + "\" must be a number");
  }
  return v.get<double>();
}

int get_int(const Json& block, const std::string& block_name,
            const std::string& key, int fallback) {
  if (!block.contains(key)) return fallback;
  const Json& v = block.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("\"" + block_name + "." + key +
                      "\" must be an integer");
  }
  return v.get<int>();
}

uint64_t get_seed(const Json& block, const std::string& block_name,
                  const std::string& key, uint64_t fallback) {
  if (!block.contains(key)) return fallback;
  const Json& v = block.at(key);
  if (!(v.is_number_unsigned() ||
        (v.is_number_integer() && v.get<int64_t>() >= 0))) {
    throw ConfigError("\"" + block_name + "." + key +
                      "\" must be a non-negative integer");
  }
  return v.get<uint64_t>();
}

std::string get_string(const Json& block, const std::string& block_name,
                       const std::string& key, const std::string& fallback) {
  if (!block.contains(key)) return fallback;
  const Json& v = block.at(key);
  if (!v.is_string()) {
    throw ConfigError("\"" + block_name + "." + key + "\" must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> get_number_list(const Json& block,
                                    const std::string& block_name,
                                    const std::string& key,
                                    std::vector<double> fallback) {
  if (!block.contains(key)) return fallback;
  const Json& v = block.at(key);
  if (!v.is_array() || v.empty()) {
    throw ConfigError("\"" + block_name + "." + key +
                      "\" must be a non-empty array of numbers");
  }
  std::vector<double> out;
  for (const Json& x : v) {
    if (!x.is_number()) {
      throw ConfigError("\"" + block_name + "." + key +
                        "\" must contain only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig config;
  config.corpus.seed = derive_seed(config.eval.master_seed, "corpus");
  config.perturb.seed = derive_seed(config.eval.master_seed, "perturb");
  config.defense.seed = derive_seed(config.eval.master_seed, "defense");
  return config;
}

ExperimentConfig parse_config(const Json& root) {
  if (!root.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  check_known_keys(root, "config",
                   {"corpus", "retrieval", "generator", "perturb", "attack",
                    "defense", "eval"});
  ExperimentConfig config;

  const Json empty = Json::object();
  const auto block = [&root, &empty](const char* name) -> const Json& {
    if (!root.contains(name)) return empty;
    const Json& b = root.at(name);
    if (!b.is_object()) {
      throw ConfigError(std::string("config block \"") + name +
                        "\" must be an object");
    }
    return b;
  };

  // eval first: stage seeds default to labeled derivations from it.
  const Json& eval = block("eval");
  check_known_keys(eval, "eval",
                   {"n_member_eval", "n_nonmember_eval", "n_reference",
                    "master_seed"});
  config.eval.master_seed =
      get_seed(eval, "eval", "master_seed", config.eval.master_seed);
  config.eval.n_member_eval =
      get_int(eval, "eval", "n_member_eval", config.eval.n_member_eval);
  config.eval.n_nonmember_eval =
      get_int(eval, "eval", "n_nonmember_eval", config.eval.n_nonmember_eval);
  config.eval.n_reference =
      get_int(eval, "eval", "n_reference", config.eval.n_reference);

  const Json& corpus = block("corpus");
  check_known_keys(corpus, "corpus",
                   {"seed", "n_docs", "vocab_size", "doc_len",
                    "modifier_fraction", "dim", "n_holdout",
                    "member_fraction"});
  config.corpus.seed = get_seed(corpus, "corpus", "seed",
                                derive_seed(config.eval.master_seed, "corpus"));
  config.corpus.n_docs =
      get_int(corpus, "corpus", "n_docs", config.corpus.n_docs);
  config.corpus.vocab_size =
      get_int(corpus, "corpus", "vocab_size", config.corpus.vocab_size);
  if (corpus.contains("doc_len")) {
    const Json& v = corpus.at("doc_len");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer()) {
      throw ConfigError("\"corpus.doc_len\" must be an array [min, max]");
    }
    config.corpus.doc_len = {v[0].get<int>(), v[1].get<int>()};
  }
  config.corpus.modifier_fraction = get_number(
      corpus, "corpus", "modifier_fraction", config.corpus.modifier_fraction);
  config.corpus.dim = get_int(corpus, "corpus", "dim", config.corpus.dim);
  config.corpus.n_holdout =
      get_int(corpus, "corpus", "n_holdout", config.corpus.n_holdout);
  config.corpus.member_fraction = get_number(
      corpus, "corpus", "member_fraction", config.corpus.member_fraction);

  const Json& retrieval = block("retrieval");
  check_known_keys(retrieval, "retrieval", {"k"});
  config.retrieval_k = get_int(retrieval, "retrieval", "k", config.retrieval_k);

  const Json& generator = block("generator");
  check_known_keys(generator, "generator",
                   {"base", "sharpness", "alpha", "defense_mode"});
  config.generator.base =
      get_number(generator, "generator", "base", config.generator.base);
  config.generator.sharpness = get_number(generator, "generator", "sharpness",
                                          config.generator.sharpness);
  config.generator.alpha =
      get_number(generator, "generator", "alpha", config.generator.alpha);

  const Json& defense = block("defense");
  check_known_keys(defense, "defense",
                   {"mode", "dampening", "swap_fraction", "seed"});
  // The defense switch may be named in either block; a disagreement between
  // the two is a configuration bug, not a preference.
  const std::string generator_mode =
      get_string(generator, "generator", "defense_mode", "");
  const std::string defense_mode = get_string(defense, "defense", "mode", "");
  if (!generator_mode.empty() && !defense_mode.empty() &&
      generator_mode != defense_mode) {
    throw ConfigError("generator.defense_mode (\"" + generator_mode +
                      "\") conflicts with defense.mode (\"" + defense_mode +
                      "\")");
  }
  const std::string mode_name =
      !defense_mode.empty() ? defense_mode : generator_mode;
  config.defense.mode =
      mode_name.empty() ? DefenseMode::kNone : parse_defense_mode(mode_name);
  config.defense.dampening =
      get_number(defense, "defense", "dampening", config.defense.dampening);
  config.defense.swap_fraction = get_number(defense, "defense", "swap_fraction",
                                            config.defense.swap_fraction);
  config.defense.seed =
      get_seed(defense, "defense", "seed",
               derive_seed(config.eval.master_seed, "defense"));

  const Json& perturb = block("perturb");
  check_known_keys(perturb, "perturb", {"theta", "seed"});
  config.perturb.theta =
      get_number(perturb, "perturb", "theta", config.perturb.theta);
  config.perturb.seed =
      get_seed(perturb, "perturb", "seed",
               derive_seed(config.eval.master_seed, "perturb"));

  const Json& attack = block("attack");
  check_known_keys(attack, "attack",
                   {"adversary", "theta_grid", "gamma_grid", "theta_fixed",
                    "baselines"});
  config.attack.adversary =
      get_int(attack, "attack", "adversary", config.attack.adversary);
  config.attack.theta_grid = get_number_list(attack, "attack", "theta_grid",
                                             config.attack.theta_grid);
  config.attack.gamma_grid = get_number_list(attack, "attack", "gamma_grid",
                                             config.attack.gamma_grid);
  config.attack.theta_fixed =
      get_number(attack, "attack", "theta_fixed", config.attack.theta_fixed);
  if (attack.contains("baselines")) {
    const Json& v = attack.at("baselines");
    if (!v.is_array()) {
      throw ConfigError("\"attack.baselines\" must be an array of names");
    }
    config.attack.baselines.clear();
    for (const Json& x : v) {
      if (!x.is_string()) {
        throw ConfigError("\"attack.baselines\" must contain only strings");
      }
      config.attack.baselines.push_back(x.get<std::string>());
    }
  }

  validate_config(config);
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file \"" + path + "\"");
  }
  Json root;
  try {
    root = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file \"" + path +
                      "\" is not valid JSON: " + e.what());
  }
  return parse_config(root);
}

void validate_config(const ExperimentConfig& config) {
  validate_corpus_config(config.corpus);
  if (config.retrieval_k < 1) {
    throw ConfigError("retrieval.k must be at least 1, got " +
                      std::to_string(config.retrieval_k));
  }
  validate_generator_params(config.generator);
  if (!(config.defense.dampening >= 0.0 && config.defense.dampening <= 1.0)) {
    throw ConfigError("defense.dampening must lie in [0, 1], got " +
                      std::to_string(config.defense.dampening));
  }
  if (!(config.defense.swap_fraction >= 0.0 &&
        config.defense.swap_fraction <= 1.0)) {
    throw ConfigError("defense.swap_fraction must lie in [0, 1], got " +
                      std::to_string(config.defense.swap_fraction));
  }
  if (!(config.perturb.theta > 0.0 && config.perturb.theta < 1.0)) {
    throw ConfigError("perturb.theta must lie in (0, 1), got " +
                      std::to_string(config.perturb.theta));
  }
  if (config.attack.adversary < 1 || config.attack.adversary > 3) {
    throw ConfigError("attack.adversary must be 1, 2, or 3, got " +
                      std::to_string(config.attack.adversary));
  }
  for (double theta : config.attack.theta_grid) {
    if (!(theta > 0.0 && theta < 1.0)) {
      throw ConfigError("attack.theta_grid values must lie in (0, 1), got " +
                        std::to_string(theta));
    }
  }
  for (double gamma : config.attack.gamma_grid) {
    if (!(gamma >= -1.0 && gamma <= 1.0)) {
      throw ConfigError("attack.gamma_grid values must lie in [-1, 1], got " +
                        std::to_string(gamma));
    }
  }
  if (!(config.attack.theta_fixed > 0.0 && config.attack.theta_fixed < 1.0)) {
    throw ConfigError("attack.theta_fixed must lie in (0, 1), got " +
                      std::to_string(config.attack.theta_fixed));
  }
  for (const std::string& name : config.attack.baselines) {
    validate_baseline_name(name, config.attack.adversary);
  }
  if (config.eval.n_member_eval < 1 || config.eval.n_nonmember_eval < 1) {
    throw ConfigError("eval.n_member_eval and eval.n_nonmember_eval must be "
                      "at least 1");
  }
  if (config.eval.n_reference < 1) {
    throw ConfigError("eval.n_reference must be at least 1, got " +
                      std::to_string(config.eval.n_reference));
  }
}

Json config_to_json(const ExperimentConfig& config) {
  Json root;
  root["corpus"] = {
      {"seed", config.corpus.seed},
      {"n_docs", config.corpus.n_docs},
      {"vocab_size", config.corpus.vocab_size},
      {"doc_len", {config.corpus.doc_len[0], config.corpus.doc_len[1]}},
      {"modifier_fraction", config.corpus.modifier_fraction},
      {"dim", config.corpus.dim},
      {"n_holdout", config.corpus.n_holdout},
      {"member_fraction", config.corpus.member_fraction},
  };
  root["retrieval"] = {{"k", config.retrieval_k}};
  root["generator"] = {
      {"base", config.generator.base},
      {"sharpness", config.generator.sharpness},
      {"alpha", config.generator.alpha},
      {"defense_mode", defense_mode_name(config.defense.mode)},
  };
  root["perturb"] = {
      {"theta", config.perturb.theta},
      {"seed", config.perturb.seed},
  };
  root["attack"] = {
      {"adversary", config.attack.adversary},
      {"theta_grid", config.attack.theta_grid},
      {"gamma_grid", config.attack.gamma_grid},
      {"theta_fixed", config.attack.theta_fixed},
      {"baselines", config.attack.baselines},
  };
  root["defense"] = {
      {"mode", defense_mode_name(config.defense.mode)},
      {"dampening", config.defense.dampening},
      {"swap_fraction", config.defense.swap_fraction},
      {"seed", config.defense.seed},
  };
  root["eval"] = {
      {"n_member_eval", config.eval.n_member_eval},
      {"n_nonmember_eval", config.eval.n_nonmember_eval},
      {"n_reference", config.eval.n_reference},
      {"master_seed", config.eval.master_seed},
  };
  return root;
}

void validate_baseline_name(const std::string& name, int adversary) {
  if (name == "raw-probability") {
    if (adversary == 3) {
      throw ConfigError(
          "baseline \"raw-probability\" needs gray-box access; adversary 3 "
          "is black-box");
    }
    return;
  }
  if (name == "response-only") return;
  throw ConfigError("unknown baseline \"" + name +
                    "\"; expected raw-probability or response-only");
}

std::vector<std::string> resolve_baselines(const AttackConfig& attack) {
  if (!attack.baselines.empty()) return attack.baselines;
  if (attack.adversary == 3) return {"response-only"};
  return {"raw-probability"};
}

}  // namespace ragmia
