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

#ifndef RAGMIA_CORPUS_H_
#define RAGMIA_CORPUS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ragmia/token.h"

namespace ragmia {

enum class Label { kUnassigned, kMember, kNonMember };

struct Document {
  int32_t doc_id = -1;
  std::vector<Token> tokens;
  Label label = Label::kUnassigned;
  std::vector<double> embedding;  // L2 norm 1 within 1e-9
};

// Latent shape of a generated cluster. The mix is what gives the evaluation
// pools their distinct signal populations:
//  - kTopical: short docs sharing all but one content slot and all modifiers.
//    Database members answer Yes and reverse to No under an antonym flip;
//    non-members answer a stable No.
//  - kBoilerplate: longer near-identical docs, one modifier each from
//    distinct antonym pairs. Everything near them answers Yes and stays Yes
//    under perturbation, member or not, so response-only inference pays for
//    them while calibrated scores stay near zero.
//  - kDuplicated: topical-style docs plus one exact token-level copy. The
//    copy is pinned outside the database; it scores identically to its
//    member twin under every rule, so no threshold can reject it.
//  - kBackground: singleton docs far from everything; they answer No.
enum class ClusterType { kTopical, kBoilerplate, kDuplicated, kBackground };

struct ClusterInfo {
  ClusterType type = ClusterType::kBackground;
  std::vector<int32_t> doc_ids;
  std::vector<int32_t> holdout_doc_ids;
  // Split pinning: forced ids override the uniform membership draw.
  std::vector<int32_t> forced_member_ids;
  std::vector<int32_t> forced_nonmember_ids;
  bool quota_split = false;  // true for boilerplate clusters
};

struct CorpusConfig {
  uint64_t seed = 7;
  int n_docs = 2500;
  int vocab_size = 800;
  std::array<int, 2> doc_len = {7, 15};
  double modifier_fraction = 0.3;
  int dim = 64;
  // Extra same-distribution documents kept outside the database and the
  // member/non-member split; adversary reference pools draw from them.
  // Negative selects the default of 16% of n_docs.
  int n_holdout = -1;
  double member_fraction = 0.8;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<Document> holdout_documents;  // labeled kNonMember, never in db
  std::vector<ClusterInfo> clusters;
  int32_t vocab_size = 0;
  int32_t modifier_count = 0;
  int dim = 0;
  uint64_t seed = 0;
  uint64_t embed_seed = 0;
  bool split_done = false;
  std::vector<int32_t> member_ids;     // ascending
  std::vector<int32_t> nonmember_ids;  // ascending

  Vocabulary vocabulary() const { return Vocabulary(vocab_size, modifier_count); }
  const Document& document(int32_t doc_id) const;
};

// Deterministic token-to-vector embedder. Every vector is a pure function of
// (seed, token identity): content tokens get an independent hashed Gaussian
// direction; the two halves of an antonym pair share a hashed base direction
// and differ by a small signed offset along a pair-specific axis. The offset
// keeps an antonym flip's embedding displacement near 0.49/sqrt(len) --
// small enough that retrieval is stable under perturbation -- while the
// token-set overlap still drops by a full token.
class Embedder {
 public:
  Embedder(int dim, uint64_t seed);

  int dim() const { return dim_; }

  // Unit vector for one token.
  std::vector<double> token_vector(const Token& token) const;

  // L2-normalized mean of the per-token vectors.
  std::vector<double> embed_tokens(std::span<const Token> tokens) const;

  // Normalized mean of explicit vectors; throws DegenerateEmbeddingError if
  // they cancel. Exposed so the cancellation contract is testable.
  static std::vector<double> normalized_mean(
      const std::vector<std::vector<double>>& vectors);

 private:
  int dim_;
  uint64_t seed_;
};

// Convenience wrapper matching the one-shot embedding operation.
std::vector<double> embed_document(const Document& doc, int dim,
                                   uint64_t embed_seed);

// Throws ConfigError naming the offending field.
void validate_corpus_config(const CorpusConfig& config);

// Builds the synthetic corpus (documents, clusters, holdout pool) and embeds
// every document. Deterministic for a fixed config.
Corpus generate_corpus(const CorpusConfig& config);

// Assigns member/non-member labels. |members| = round-half-up(fraction * n).
// Boilerplate clusters are split by a fixed per-cluster quota and duplicated
// clusters by their pinned roles; everything else is a seeded uniform draw.
// The pinned pools are demoted/promoted deterministically if an extreme
// fraction makes the quotas infeasible, so the global count is always exact.
void split_membership(Corpus& corpus, double member_fraction, uint64_t seed);

enum class ReferenceMode { kOverlapping, kDisjoint };

// Labeled reference samples for threshold fitting. kOverlapping draws
// members from the database split and non-members from the holdout pool;
// kDisjoint draws only holdout documents (zero database overlap).
struct ReferenceSet {
  ReferenceMode mode = ReferenceMode::kOverlapping;
  std::vector<const Document*> samples;
  std::vector<Label> labels;
};

ReferenceSet sample_reference(const Corpus& corpus, int n_member,
                              int n_nonmember, ReferenceMode mode,
                              uint64_t seed,
                              const std::unordered_set<int32_t>& exclude_ids = {});

}  // namespace ragmia

#endif  // RAGMIA_CORPUS_H_
