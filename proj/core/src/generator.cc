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

#include "ragmia/generator.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "ragmia/errors.h"

namespace ragmia {

void validate_generator_params(const GeneratorParams& params) {
  if (!(params.base >= 0.0 && params.base < 1.0)) {
    throw ConfigError("generator.base must lie in [0, 1), got " +
                      std::to_string(params.base));
  }
  if (!(params.sharpness >= 1.0)) {
    throw ConfigError("generator.sharpness must be at least 1, got " +
                      std::to_string(params.sharpness));
  }
  if (!(params.alpha > params.base && params.alpha < 1.0)) {
    throw ConfigError(
        "generator.alpha must lie in (base, 1) so both answers are "
        "reachable, got " +
        std::to_string(params.alpha));
  }
}

double match_score(std::span<const Token> a, std::span<const Token> b) {
  std::unordered_set<int32_t> set_a;
  for (const Token& t : a) set_a.insert(t.id);
  std::unordered_set<int32_t> set_b;
  for (const Token& t : b) set_b.insert(t.id);
  size_t intersection = 0;
  for (int32_t id : set_a) {
    if (set_b.contains(id)) ++intersection;
  }
  const size_t uni = set_a.size() + set_b.size() - intersection;
  if (uni == 0) {
    throw InputError("match score of two empty token sets is undefined");
  }
  return static_cast<double>(intersection) / static_cast<double>(uni);
}

double conditional_yes_prob(double match, const GeneratorParams& params) {
  if (!(match >= 0.0 && match <= 1.0)) {
    throw InputError("match score must lie in [0, 1], got " +
                     std::to_string(match));
  }
  return params.base + (1.0 - params.base) * std::pow(match, params.sharpness);
}

RagSystem::RagSystem(const Corpus& corpus, const GeneratorParams& params,
                     int k, const DefenseConfig& defense)
    : corpus_(&corpus),
      params_(params),
      k_(k),
      defense_(defense),
      embedder_(corpus.dim, corpus.embed_seed),
      vocab_(corpus.vocabulary()),
      db_(corpus) {
  validate_generator_params(params_);
  if (k < 1) {
    throw ConfigError("retrieval.k must be at least 1, got " +
                      std::to_string(k));
  }
  if (!(defense_.dampening >= 0.0 && defense_.dampening <= 1.0)) {
    throw ConfigError("defense.dampening must lie in [0, 1], got " +
                      std::to_string(defense_.dampening));
  }
  if (!(defense_.swap_fraction >= 0.0 && defense_.swap_fraction <= 1.0)) {
    throw ConfigError("defense.swap_fraction must lie in [0, 1], got " +
                      std::to_string(defense_.swap_fraction));
  }
  if (defense_.mode == DefenseMode::kTriples) {
    triple_cache_.reserve(db_.size());
    for (const Document* doc : db_.documents()) {
      triple_cache_.push_back(extract_triples(doc->tokens));
    }
  }
}

std::span<const Token> RagSystem::context_tokens(size_t db_index) const {
  if (defense_.mode == DefenseMode::kTriples) {
    return triple_cache_[db_index];
  }
  return db_.documents()[db_index]->tokens;
}

GenerationTrace RagSystem::trace_query(std::span<const Token> query) const {
  std::vector<Token> rewritten;
  if (defense_.mode == DefenseMode::kParaphrase) {
    rewritten = paraphrase_query(query, defense_.seed, defense_.swap_fraction,
                                 vocab_);
    query = rewritten;
  }
  const std::vector<double> embedding = embedder_.embed_tokens(query);
  const RetrievalResult retrieved = retrieve_top_k(db_, embedding, k_);
  const std::vector<double> weights = relevance_weights(retrieved.hits);

  GenerationTrace trace;
  trace.truncated = retrieved.truncated;
  trace.entries.reserve(retrieved.hits.size());
  const auto& docs = db_.documents();
  for (size_t i = 0; i < retrieved.hits.size(); ++i) {
    const ScoredDoc& hit = retrieved.hits[i];
    // The database is ordered by ascending doc_id; locate the hit's slot so
    // the triple cache (parallel to it) can serve the context.
    const auto it = std::lower_bound(
        docs.begin(), docs.end(), hit.doc_id,
        [](const Document* d, int32_t id) { return d->doc_id < id; });
    const auto db_index = static_cast<size_t>(it - docs.begin());
    double p = conditional_yes_prob(
        match_score(context_tokens(db_index), query), params_);
    if (defense_.mode == DefenseMode::kInstruction) {
      p = apply_instruction_defense(p, params_.base, defense_.dampening);
    }
    trace.entries.push_back({hit.doc_id, hit.similarity, weights[i], p});
    trace.yes_prob += weights[i] * p;
  }
  trace.epsilon =
      trace.yes_prob - trace.entries[0].weight * trace.entries[0].conditional_yes;
  trace.yes = trace.yes_prob > params_.alpha;
  return trace;
}

AnswerOutcome RagSystem::answer_query(std::span<const Token> query) {
  const GenerationTrace trace = trace_query(query);
  return {trace.yes_prob, trace.yes};
}

}  // namespace ragmia
