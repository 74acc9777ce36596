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

#ifndef RAGMIA_GENERATOR_H_
#define RAGMIA_GENERATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ragmia/corpus.h"
#include "ragmia/defense.h"
#include "ragmia/retrieval.h"

namespace ragmia {

// Mock verification model. For a retrieved context with token-set overlap m
// against the query sample, the conditional yes-probability is
// base + (1 - base) * m^sharpness; the system answer mixes these over the
// retrieved set with softmax relevance weights and thresholds at alpha.
struct GeneratorParams {
  double base = 0.1;
  double sharpness = 4.0;
  double alpha = 0.5;
};

// Throws ConfigError unless 0 <= base < 1, sharpness >= 1, and
// base < alpha < 1 (both answers reachable).
void validate_generator_params(const GeneratorParams& params);

// Set-level Jaccard overlap of token ids in [0, 1].
double match_score(std::span<const Token> a, std::span<const Token> b);

double conditional_yes_prob(double match, const GeneratorParams& params);

struct TraceEntry {
  int32_t doc_id = -1;
  double similarity = 0.0;
  double weight = 0.0;           // softmax relevance weight
  double conditional_yes = 0.0;  // per-document p after any defense
};

struct GenerationTrace {
  std::vector<TraceEntry> entries;  // retrieval rank order
  double yes_prob = 0.0;            // sum of weight * conditional_yes
  double epsilon = 0.0;             // yes_prob minus the rank-1 term
  bool yes = false;                 // yes_prob > alpha, strict
  bool truncated = false;
};

struct AnswerOutcome {
  double yes_prob = 0.0;
  bool yes = false;
};

// The single entry point attacks call. Concrete systems apply their own
// retrieval and defenses behind it.
class QuerySystem {
 public:
  virtual ~QuerySystem() = default;
  virtual AnswerOutcome answer_query(std::span<const Token> query) = 0;
};

// Fully assembled pipeline: (paraphrase) -> embed -> retrieve top-k ->
// per-document conditional probability over (possibly triple-ized) contexts
// (possibly dampened) -> relevance-weighted mixture -> threshold.
class RagSystem : public QuerySystem {
 public:
  RagSystem(const Corpus& corpus, const GeneratorParams& params, int k,
            const DefenseConfig& defense = {});

  AnswerOutcome answer_query(std::span<const Token> query) override;
  GenerationTrace trace_query(std::span<const Token> query) const;

  const RetrievalDatabase& database() const { return db_; }
  const Embedder& embedder() const { return embedder_; }
  const GeneratorParams& params() const { return params_; }
  const DefenseConfig& defense() const { return defense_; }
  int top_k() const { return k_; }

 private:
  std::span<const Token> context_tokens(size_t db_index) const;

  const Corpus* corpus_;
  GeneratorParams params_;
  int k_;
  DefenseConfig defense_;
  Embedder embedder_;
  Vocabulary vocab_;
  RetrievalDatabase db_;
  std::vector<std::vector<Token>> triple_cache_;  // parallel to db_ docs
};

// Access views. The gray-box view exposes the yes-probability; the
// black-box view exposes only the thresholded response, enforced by the
// interface itself (it has no probability accessor to call).
class GrayBoxView {
 public:
  explicit GrayBoxView(QuerySystem& system) : system_(&system) {}
  double yes_probability(std::span<const Token> query) const {
    return system_->answer_query(query).yes_prob;
  }
  bool response(std::span<const Token> query) const {
    return system_->answer_query(query).yes;
  }

 private:
  QuerySystem* system_;
};

class BlackBoxView {
 public:
  explicit BlackBoxView(QuerySystem& system) : system_(&system) {}
  bool response(std::span<const Token> query) const {
    return system_->answer_query(query).yes;
  }

 private:
  QuerySystem* system_;
};

}  // namespace ragmia

#endif  // RAGMIA_GENERATOR_H_
