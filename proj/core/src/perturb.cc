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

#include "ragmia/perturb.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ragmia/errors.h"
#include "ragmia/rng.h"

namespace ragmia {

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

std::string build_query(std::span<const Token> sample_tokens) {
  if (sample_tokens.empty()) {
    throw InputError("cannot build a query from an empty sample");
  }
  std::string text = "Is this: \"";
  for (size_t i = 0; i < sample_tokens.size(); ++i) {
    if (i > 0) text += ' ';
    if (sample_tokens[i].id == kNullTokenId) {
      text += '_';
    } else {
      text += 'w' + std::to_string(sample_tokens[i].id);
    }
  }
  text += "\" right? Answer with Yes or No.";
  return text;
}

QueryPair perturb_sample(std::span<const Token> sample_tokens,
                         int32_t sample_id, double theta, uint64_t seed,
                         const Embedder& embedder) {
  if (sample_tokens.empty()) {
    throw InputError("cannot perturb an empty sample");
  }
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InputError("perturbation magnitude theta must lie in (0, 1), got " +
                     std::to_string(theta));
  }
  std::vector<size_t> modifier_positions;
  for (size_t i = 0; i < sample_tokens.size(); ++i) {
    if (sample_tokens[i].cls == TokenClass::kModifier) {
      modifier_positions.push_back(i);
    }
  }
  if (modifier_positions.empty()) {
    throw PerturbationError("sample " + std::to_string(sample_id) +
                            " has no modifier tokens to perturb");
  }
  const int modifier_count = static_cast<int>(modifier_positions.size());
  int n = std::max(1, round_half_up(theta * modifier_count));
  QueryPair pair;
  // The warning flag marks the ceiling case: every modifier gets flipped.
  if (n >= modifier_count) {
    n = modifier_count;
    pair.capped = true;
  }

  Rng rng(mix64(seed, static_cast<uint64_t>(static_cast<uint32_t>(sample_id))));
  std::vector<size_t> picks =
      rng.sample_indices(modifier_positions.size(), static_cast<size_t>(n));
  std::sort(picks.begin(), picks.end());

  pair.theta = theta;
  pair.original.assign(sample_tokens.begin(), sample_tokens.end());
  pair.perturbed = pair.original;
  for (size_t pick : picks) {
    const size_t pos = modifier_positions[pick];
    const Token& t = pair.original[pos];
    // The antonym map is an involution: id and antonym_id swap roles.
    pair.perturbed[pos] = Token{t.antonym_id, TokenClass::kModifier, t.id};
    pair.replaced_positions.push_back(pos);
  }

  const std::vector<double> e_q = embedder.embed_tokens(pair.original);
  const std::vector<double> e_qp = embedder.embed_tokens(pair.perturbed);
  pair.displacement = displacement(e_q, e_qp);
  pair.original_text = build_query(pair.original);
  pair.perturbed_text = build_query(pair.perturbed);
  return pair;
}

QueryPair perturb_document(const Document& doc, double theta, uint64_t seed,
                           const Embedder& embedder) {
  return perturb_sample(doc.tokens, doc.doc_id, theta, seed, embedder);
}

double displacement(std::span<const double> e_q,
                    std::span<const double> e_q_perturbed) {
  if (e_q.size() != e_q_perturbed.size()) {
    throw InputError("displacement requires embeddings of equal dimension");
  }
  double delta_sq = 0.0;
  double norm_sq = 0.0;
  for (size_t i = 0; i < e_q.size(); ++i) {
    const double d = e_q_perturbed[i] - e_q[i];
    delta_sq += d * d;
    norm_sq += e_q[i] * e_q[i];
  }
  if (norm_sq <= 0.0) {
    throw InputError("displacement is undefined for a zero query embedding");
  }
  return std::sqrt(delta_sq) / std::sqrt(norm_sq);
}

SimilarityBound check_similarity_bound(std::span<const double> e_q,
                                       std::span<const double> e_q_perturbed,
                                       std::span<const double> e_d,
                                       double slack_c2) {
  if (e_q.size() != e_q_perturbed.size() || e_q.size() != e_d.size()) {
    throw InputError("bound check requires embeddings of equal dimension");
  }
  double s = 0.0;
  double s_perturbed = 0.0;
  for (size_t i = 0; i < e_q.size(); ++i) {
    s += e_d[i] * e_q[i];
    s_perturbed += e_d[i] * e_q_perturbed[i];
  }
  const double r = displacement(e_q, e_q_perturbed);
  SimilarityBound bound;
  bound.lhs = std::abs(std::exp(s_perturbed) - std::exp(s));
  bound.rhs = 2.0 * std::exp(s) * r + slack_c2 * r * r;
  bound.holds = bound.lhs <= bound.rhs + 1e-12;
  return bound;
}

}  // namespace ragmia
