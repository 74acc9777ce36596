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

#ifndef RAGMIA_PERTURB_H_
#define RAGMIA_PERTURB_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ragmia/corpus.h"
#include "ragmia/token.h"

namespace ragmia {

// Rounds .5 upward, e.g. 2.5 -> 3; the flip-count rule depends on it.
int round_half_up(double x);

// Renders the verification question around the sample tokens. Template
// words never enter the retrieval embedding; only the sample tokens do.
std::string build_query(std::span<const Token> sample_tokens);

struct QueryPair {
  std::vector<Token> original;
  std::vector<Token> perturbed;
  double theta = 0.0;
  std::vector<size_t> replaced_positions;  // ascending
  double displacement = 0.0;  // ||e_q' - e_q|| / ||e_q||
  bool capped = false;        // requested flips exceeded the modifier count
  std::string original_text;
  std::string perturbed_text;
};

// Flips n = max(1, round_half_up(theta * modifier_count)) modifier tokens,
// each to its antonym, chosen by seeded uniform sampling without
// replacement. The per-sample stream is keyed on (seed, sample_id), so the
// same sample perturbs identically across fitting and evaluation.
// Throws PerturbationError when the sample has no modifier tokens.
QueryPair perturb_sample(std::span<const Token> sample_tokens,
                         int32_t sample_id, double theta, uint64_t seed,
                         const Embedder& embedder);

QueryPair perturb_document(const Document& doc, double theta, uint64_t seed,
                           const Embedder& embedder);

// r = ||e_q' - e_q|| / ||e_q||.
double displacement(std::span<const double> e_q,
                    std::span<const double> e_q_perturbed);

// Numerical robustness check of the softmax numerator under perturbation:
// |exp(s(d, q')) - exp(s(d, q))| <= 2 exp(s(d, q)) r + slack_c2 r^2.
struct SimilarityBound {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

SimilarityBound check_similarity_bound(std::span<const double> e_q,
                                       std::span<const double> e_q_perturbed,
                                       std::span<const double> e_d,
                                       double slack_c2);

}  // namespace ragmia

#endif  // RAGMIA_PERTURB_H_
