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

#include "ragmia/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ragmia/errors.h"
#include "ragmia/rng.h"

namespace ragmia {
namespace {

constexpr int kTopicalClusterSize = 4;
constexpr int kBoilerplateClusterSize = 7;
constexpr int kDuplicatedClusterSize = 5;

// Composition rates. Boilerplate and duplicated rates count clusters; the
// background rate counts documents. Whatever they leave over becomes topical
// clusters, with the sub-cluster remainder folded into background.
constexpr double kBoilerplateClusterRate = 0.024;
constexpr double kDuplicatedClusterRate = 0.03;
constexpr double kBackgroundDocRate = 0.04;

// Holdout mix mirrors the non-member mix the default split produces, so
// thresholds fitted on holdout scores transfer to the evaluation pool.
constexpr double kHoldoutTwinShare = 0.36;
constexpr double kHoldoutCopyShare = 0.15;
constexpr double kHoldoutBackgroundShare = 0.03;

// Boilerplate split quota keeps two extra siblings per cluster out of the
// database, so the non-member pool holds plenty of stable-Yes documents.
constexpr int kBoilerplateQuotaBias = 2;

// Offset scale for the two halves of an antonym pair. cos(u+, u-) =
// (1 - s^2) / (1 + s^2) ~ 0.88, so a single flip moves a query embedding by
// about 0.49 / sqrt(len): far too little to disturb retrieval, while the
// token-set overlap still loses a full token.
constexpr double kAntonymAxisScale = 0.25;

constexpr double kHoldoutDefaultShare = 0.16;

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

struct LayoutPlan {
  int topical_clusters = 0;
  int boilerplate_clusters = 0;
  int duplicated_clusters = 0;
  int background_docs = 0;
  int holdout_twins = 0;       // extra boilerplate siblings
  int holdout_copies = 0;      // exact copies of duplicated-cluster members
  int holdout_variants = 0;    // extra topical siblings
  int holdout_background = 0;  // fresh singletons
};

LayoutPlan plan_layout(int n_docs, int n_holdout) {
  LayoutPlan plan;
  plan.boilerplate_clusters = round_half_up(kBoilerplateClusterRate * n_docs);
  plan.duplicated_clusters = round_half_up(kDuplicatedClusterRate * n_docs);
  plan.background_docs = round_half_up(kBackgroundDocRate * n_docs);
  const auto used = [&plan] {
    return kBoilerplateClusterSize * plan.boilerplate_clusters +
           kDuplicatedClusterSize * plan.duplicated_clusters +
           plan.background_docs;
  };
  while (used() > n_docs) {
    if (plan.boilerplate_clusters > 0) {
      --plan.boilerplate_clusters;
    } else if (plan.duplicated_clusters > 0) {
      --plan.duplicated_clusters;
    } else {
      --plan.background_docs;
    }
  }
  const int rest = n_docs - used();
  plan.topical_clusters = rest / kTopicalClusterSize;
  plan.background_docs += rest % kTopicalClusterSize;

  int twins = round_half_up(kHoldoutTwinShare * n_holdout);
  int copies = round_half_up(kHoldoutCopyShare * n_holdout);
  int background = round_half_up(kHoldoutBackgroundShare * n_holdout);
  twins = std::min(twins, n_holdout);
  copies = std::min(copies, n_holdout - twins);
  background = std::min(background, n_holdout - twins - copies);
  int variants = n_holdout - twins - copies - background;
  // Shift shares whose host archetype is absent in a small layout.
  if (copies > plan.duplicated_clusters) {
    variants += copies - plan.duplicated_clusters;
    copies = plan.duplicated_clusters;
  }
  if (plan.boilerplate_clusters == 0) {
    variants += twins;
    twins = 0;
  }
  if (plan.topical_clusters == 0) {
    background += variants;
    variants = 0;
  }
  plan.holdout_twins = twins;
  plan.holdout_copies = copies;
  plan.holdout_variants = variants;
  plan.holdout_background = background;
  return plan;
}

// Internal generation state for one cluster, kept so holdout documents can
// be grown from the same shared material in a second pass.
struct ClusterRecipe {
  int len = 0;
  std::vector<Token> fixed_content;
  std::vector<Token> modifiers;  // topical-style shared modifiers
  std::unordered_set<int32_t> used_content;
  std::unordered_set<int32_t> used_pairs;
};

class CorpusBuilder {
 public:
  explicit CorpusBuilder(const CorpusConfig& config)
      : config_(config),
        vocab_(config.vocab_size),
        rng_(derive_seed(config.seed, "corpus")) {}

  Corpus build();

 private:
  Token draw_content(std::unordered_set<int32_t>& used) {
    if (static_cast<int>(used.size()) >= vocab_.content_count()) {
      throw ConfigError(
          "content vocabulary exhausted while building a cluster; increase "
          "vocab_size (content tokens available: " +
          std::to_string(vocab_.content_count()) + ")");
    }
    for (;;) {
      const int32_t id =
          vocab_.content_begin() +
          static_cast<int32_t>(rng_.below(vocab_.content_count()));
      if (used.insert(id).second) return vocab_.token(id);
    }
  }

  Token draw_pair_modifier(std::unordered_set<int32_t>& used_pairs) {
    if (static_cast<int>(used_pairs.size()) >= vocab_.pair_count()) {
      throw ConfigError(
          "antonym pairs exhausted while building a cluster; increase "
          "vocab_size (pairs available: " +
          std::to_string(vocab_.pair_count()) + ")");
    }
    for (;;) {
      const int32_t pair = static_cast<int32_t>(rng_.below(vocab_.pair_count()));
      if (!used_pairs.insert(pair).second) continue;
      const int32_t id = 2 * pair + (rng_.bernoulli(0.5) ? 1 : 0);
      return vocab_.token(id);
    }
  }

  int modifier_count_for(int len) const {
    int m = std::max(1, round_half_up(config_.modifier_fraction * len));
    m = std::min(m, len - 1);  // keep at least one content slot
    return std::min(m, vocab_.pair_count());
  }

  int draw_len(int lo, int hi) {
    return static_cast<int>(rng_.int_in(lo, hi));
  }

  Document make_document(std::vector<Token> tokens) {
    Document doc;
    doc.doc_id = next_doc_id_++;
    rng_.shuffle(tokens);
    doc.tokens = std::move(tokens);
    return doc;
  }

  std::vector<Token> topical_tokens(ClusterRecipe& recipe) {
    std::vector<Token> tokens = recipe.fixed_content;
    tokens.push_back(draw_content(recipe.used_content));  // variable slot
    tokens.insert(tokens.end(), recipe.modifiers.begin(),
                  recipe.modifiers.end());
    return tokens;
  }

  void start_topical_recipe(ClusterRecipe& recipe) {
    recipe.len = draw_len(config_.doc_len[0],
                          std::min(config_.doc_len[1], config_.doc_len[0] + 2));
    const int modifiers = modifier_count_for(recipe.len);
    const int fixed = recipe.len - 1 - modifiers;
    for (int i = 0; i < fixed; ++i) {
      recipe.fixed_content.push_back(draw_content(recipe.used_content));
    }
    for (int i = 0; i < modifiers; ++i) {
      recipe.modifiers.push_back(draw_pair_modifier(recipe.used_pairs));
    }
  }

  void build_topical_cluster(int size, ClusterType type);
  void build_boilerplate_cluster();
  void build_background_doc();
  void add_holdout_docs(const LayoutPlan& plan);

  const CorpusConfig& config_;
  Vocabulary vocab_;
  Rng rng_;
  int32_t next_doc_id_ = 0;
  Corpus corpus_;
  std::vector<ClusterRecipe> recipes_;
};

void CorpusBuilder::build_topical_cluster(int size, ClusterType type) {
  ClusterInfo info;
  info.type = type;
  ClusterRecipe recipe;
  start_topical_recipe(recipe);
  const int distinct = (type == ClusterType::kDuplicated) ? size - 1 : size;
  for (int i = 0; i < distinct; ++i) {
    Document doc = make_document(topical_tokens(recipe));
    info.doc_ids.push_back(doc.doc_id);
    corpus_.documents.push_back(std::move(doc));
  }
  if (type == ClusterType::kDuplicated) {
    // The final sibling is a token-level copy of the first. The split pins
    // the original inside the database and the copy outside it, so the copy
    // scores exactly like a member under every decision rule.
    Document copy;
    copy.doc_id = next_doc_id_++;
    copy.tokens = corpus_.documents[info.doc_ids.front()].tokens;
    info.doc_ids.push_back(copy.doc_id);
    corpus_.documents.push_back(std::move(copy));
    info.forced_member_ids.assign(info.doc_ids.begin(),
                                  info.doc_ids.end() - 1);
    info.forced_nonmember_ids.push_back(info.doc_ids.back());
  }
  corpus_.clusters.push_back(std::move(info));
  recipes_.push_back(std::move(recipe));
}

void CorpusBuilder::build_boilerplate_cluster() {
  ClusterInfo info;
  info.type = ClusterType::kBoilerplate;
  info.quota_split = true;
  ClusterRecipe recipe;
  // Long documents with identical content; each sibling carries exactly one
  // modifier drawn from a pair no sibling shares, so a perturbed query never
  // matches a flipped token anywhere in the cluster.
  recipe.len = draw_len(std::max(config_.doc_len[0], config_.doc_len[1] - 2),
                        config_.doc_len[1]);
  for (int i = 0; i < recipe.len - 1; ++i) {
    recipe.fixed_content.push_back(draw_content(recipe.used_content));
  }
  for (int i = 0; i < kBoilerplateClusterSize; ++i) {
    std::vector<Token> tokens = recipe.fixed_content;
    tokens.push_back(draw_pair_modifier(recipe.used_pairs));
    Document doc = make_document(std::move(tokens));
    info.doc_ids.push_back(doc.doc_id);
    corpus_.documents.push_back(std::move(doc));
  }
  corpus_.clusters.push_back(std::move(info));
  recipes_.push_back(std::move(recipe));
}

void CorpusBuilder::build_background_doc() {
  ClusterInfo info;
  info.type = ClusterType::kBackground;
  ClusterRecipe recipe;
  recipe.len = draw_len(config_.doc_len[0], config_.doc_len[1]);
  const int modifiers = modifier_count_for(recipe.len);
  std::vector<Token> tokens;
  for (int i = 0; i < recipe.len - modifiers; ++i) {
    tokens.push_back(draw_content(recipe.used_content));
  }
  for (int i = 0; i < modifiers; ++i) {
    tokens.push_back(draw_pair_modifier(recipe.used_pairs));
  }
  Document doc = make_document(std::move(tokens));
  info.doc_ids.push_back(doc.doc_id);
  corpus_.documents.push_back(std::move(doc));
  corpus_.clusters.push_back(std::move(info));
  recipes_.push_back(std::move(recipe));
}

void CorpusBuilder::add_holdout_docs(const LayoutPlan& plan) {
  // Cluster indices by archetype, in creation order.
  std::vector<size_t> topical;
  std::vector<size_t> boiler;
  std::vector<size_t> duplicated;
  for (size_t i = 0; i < corpus_.clusters.size(); ++i) {
    switch (corpus_.clusters[i].type) {
      case ClusterType::kTopical: topical.push_back(i); break;
      case ClusterType::kBoilerplate: boiler.push_back(i); break;
      case ClusterType::kDuplicated: duplicated.push_back(i); break;
      case ClusterType::kBackground: break;
    }
  }

  const auto add_to_cluster = [&](size_t cluster_idx, std::vector<Token> tokens,
                                  bool copy_order) {
    Document doc;
    doc.doc_id = next_doc_id_++;
    doc.label = Label::kNonMember;
    if (!copy_order) rng_.shuffle(tokens);
    doc.tokens = std::move(tokens);
    corpus_.clusters[cluster_idx].holdout_doc_ids.push_back(doc.doc_id);
    corpus_.holdout_documents.push_back(std::move(doc));
  };

  // Topical variants: one fresh variable slot each, round-robin over
  // clusters so every cluster recipe is stretched evenly.
  for (int i = 0; i < plan.holdout_variants; ++i) {
    const size_t cluster_idx = topical[i % topical.size()];
    add_to_cluster(cluster_idx, topical_tokens(recipes_[cluster_idx]),
                   /*copy_order=*/false);
  }
  // Boilerplate twins: same content, one more unused antonym pair each.
  for (int i = 0; i < plan.holdout_twins; ++i) {
    const size_t cluster_idx = boiler[i % boiler.size()];
    ClusterRecipe& recipe = recipes_[cluster_idx];
    std::vector<Token> tokens = recipe.fixed_content;
    tokens.push_back(draw_pair_modifier(recipe.used_pairs));
    add_to_cluster(cluster_idx, std::move(tokens), /*copy_order=*/false);
  }
  // Copies: exact token-level copies of a pinned member of a duplicated
  // cluster, so the reference pool sees the same inseparable population the
  // evaluation pool does.
  for (int i = 0; i < plan.holdout_copies; ++i) {
    const size_t cluster_idx = duplicated[i];
    const int32_t source = corpus_.clusters[cluster_idx].doc_ids[1];
    add_to_cluster(cluster_idx, corpus_.documents[source].tokens,
                   /*copy_order=*/true);
  }
  // Fresh background singletons, in holdout-only clusters.
  for (int i = 0; i < plan.holdout_background; ++i) {
    ClusterInfo info;
    info.type = ClusterType::kBackground;
    ClusterRecipe recipe;
    recipe.len = draw_len(config_.doc_len[0], config_.doc_len[1]);
    const int modifiers = modifier_count_for(recipe.len);
    std::vector<Token> tokens;
    for (int j = 0; j < recipe.len - modifiers; ++j) {
      tokens.push_back(draw_content(recipe.used_content));
    }
    for (int j = 0; j < modifiers; ++j) {
      tokens.push_back(draw_pair_modifier(recipe.used_pairs));
    }
    Document doc;
    doc.doc_id = next_doc_id_++;
    doc.label = Label::kNonMember;
    rng_.shuffle(tokens);
    doc.tokens = std::move(tokens);
    info.holdout_doc_ids.push_back(doc.doc_id);
    corpus_.holdout_documents.push_back(std::move(doc));
    corpus_.clusters.push_back(std::move(info));
    recipes_.push_back(std::move(recipe));
  }
}

Corpus CorpusBuilder::build() {
  const int n_holdout =
      config_.n_holdout < 0
          ? round_half_up(kHoldoutDefaultShare * config_.n_docs)
          : config_.n_holdout;
  const LayoutPlan plan = plan_layout(config_.n_docs, n_holdout);

  corpus_.documents.reserve(config_.n_docs);
  corpus_.holdout_documents.reserve(n_holdout);
  for (int i = 0; i < plan.topical_clusters; ++i) {
    build_topical_cluster(kTopicalClusterSize, ClusterType::kTopical);
  }
  for (int i = 0; i < plan.boilerplate_clusters; ++i) {
    build_boilerplate_cluster();
  }
  for (int i = 0; i < plan.duplicated_clusters; ++i) {
    build_topical_cluster(kDuplicatedClusterSize, ClusterType::kDuplicated);
  }
  for (int i = 0; i < plan.background_docs; ++i) {
    build_background_doc();
  }
  add_holdout_docs(plan);

  corpus_.vocab_size = config_.vocab_size;
  corpus_.modifier_count = vocab_.modifier_count();
  corpus_.dim = config_.dim;
  corpus_.seed = config_.seed;
  corpus_.embed_seed = derive_seed(config_.seed, "embed");

  const Embedder embedder(config_.dim, corpus_.embed_seed);
  for (Document& doc : corpus_.documents) {
    doc.embedding = embedder.embed_tokens(doc.tokens);
  }
  for (Document& doc : corpus_.holdout_documents) {
    doc.embedding = embedder.embed_tokens(doc.tokens);
  }
  return std::move(corpus_);
}

}  // namespace

void validate_corpus_config(const CorpusConfig& config) {
  if (config.n_docs < 1) {
    throw ConfigError("corpus.n_docs must be at least 1, got " +
                      std::to_string(config.n_docs));
  }
  if (config.doc_len[0] < 2 || config.doc_len[0] > config.doc_len[1]) {
    throw ConfigError("corpus.doc_len must satisfy 2 <= min <= max, got [" +
                      std::to_string(config.doc_len[0]) + ", " +
                      std::to_string(config.doc_len[1]) + "]");
  }
  if (!(config.modifier_fraction > 0.0 && config.modifier_fraction < 1.0)) {
    throw ConfigError("corpus.modifier_fraction must lie in (0, 1), got " +
                      std::to_string(config.modifier_fraction));
  }
  if (!(config.member_fraction >= 0.0 && config.member_fraction <= 1.0)) {
    throw ConfigError("corpus.member_fraction must lie in [0, 1], got " +
                      std::to_string(config.member_fraction));
  }
  if (config.dim < 2) {
    throw ConfigError("corpus.dim must be at least 2, got " +
                      std::to_string(config.dim));
  }
  // The vocabulary constructor enforces its own size constraints.
  Vocabulary probe(config.vocab_size);
  (void)probe;
}

const Document& Corpus::document(int32_t doc_id) const {
  const auto n = static_cast<int32_t>(documents.size());
  if (doc_id >= 0 && doc_id < n) return documents[doc_id];
  const auto h = static_cast<int32_t>(holdout_documents.size());
  if (doc_id >= n && doc_id < n + h) return holdout_documents[doc_id - n];
  throw InputError("unknown document id " + std::to_string(doc_id));
}

Embedder::Embedder(int dim, uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim < 2) {
    throw ConfigError("embedding dim must be at least 2, got " +
                      std::to_string(dim));
  }
}

namespace {

std::vector<double> unit_gaussian(int dim, uint64_t stream_seed) {
  Rng rng(stream_seed);
  std::vector<double> v(dim);
  double norm_sq = 0.0;
  for (double& x : v) {
    x = rng.normal();
    norm_sq += x * x;
  }
  const double norm = std::sqrt(norm_sq);
  if (norm < 1e-12) {
    throw DegenerateEmbeddingError("token vector has near-zero norm");
  }
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace

std::vector<double> Embedder::token_vector(const Token& token) const {
  if (token.id == kNullTokenId) {
    throw InputError("null padding tokens have no embedding");
  }
  if (token.cls == TokenClass::kContent) {
    return unit_gaussian(
        dim_, mix64(seed_, mix64(hash_label("content"),
                                 static_cast<uint64_t>(token.id))));
  }
  const auto pair = static_cast<uint64_t>(token.id >> 1);
  std::vector<double> base =
      unit_gaussian(dim_, mix64(seed_, mix64(hash_label("pair"), pair)));
  const std::vector<double> axis =
      unit_gaussian(dim_, mix64(seed_, mix64(hash_label("axis"), pair)));
  const double sign = (token.id & 1) ? -1.0 : 1.0;
  double norm_sq = 0.0;
  for (int i = 0; i < dim_; ++i) {
    base[i] += sign * kAntonymAxisScale * axis[i];
    norm_sq += base[i] * base[i];
  }
  const double norm = std::sqrt(norm_sq);
  if (norm < 1e-12) {
    throw DegenerateEmbeddingError("antonym vector has near-zero norm");
  }
  for (double& x : base) x /= norm;
  return base;
}

std::vector<double> Embedder::normalized_mean(
    const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) {
    throw InputError("cannot average an empty set of vectors");
  }
  const size_t dim = vectors.front().size();
  std::vector<double> mean(dim, 0.0);
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw InputError("vectors of mixed dimensionality cannot be averaged");
    }
    for (size_t i = 0; i < dim; ++i) mean[i] += v[i];
  }
  double norm_sq = 0.0;
  for (double& x : mean) {
    x /= static_cast<double>(vectors.size());
    norm_sq += x * x;
  }
  const double norm = std::sqrt(norm_sq);
  if (norm < 1e-12) {
    throw DegenerateEmbeddingError(
        "token vectors cancel; the embedding cannot be normalized");
  }
  for (double& x : mean) x /= norm;
  return mean;
}

std::vector<double> Embedder::embed_tokens(std::span<const Token> tokens) const {
  if (tokens.empty()) {
    throw InputError("cannot embed an empty token sequence");
  }
  std::vector<std::vector<double>> vectors;
  vectors.reserve(tokens.size());
  for (const Token& token : tokens) vectors.push_back(token_vector(token));
  return normalized_mean(vectors);
}

std::vector<double> embed_document(const Document& doc, int dim,
                                   uint64_t embed_seed) {
  return Embedder(dim, embed_seed).embed_tokens(doc.tokens);
}

Corpus generate_corpus(const CorpusConfig& config) {
  validate_corpus_config(config);
  CorpusBuilder builder(config);
  return builder.build();
}

void split_membership(Corpus& corpus, double member_fraction, uint64_t seed) {
  if (!(member_fraction >= 0.0 && member_fraction <= 1.0)) {
    throw ConfigError("member_fraction must lie in [0, 1], got " +
                      std::to_string(member_fraction));
  }
  if (corpus.documents.empty()) {
    throw InputError("cannot split an empty corpus");
  }
  const int n = static_cast<int>(corpus.documents.size());
  const int target = round_half_up(member_fraction * n);
  Rng rng(seed);

  for (Document& doc : corpus.documents) doc.label = Label::kUnassigned;
  std::vector<char> pinned(n, 0);
  std::vector<int32_t> members;
  std::vector<int32_t> forced_nm;
  std::vector<int32_t> quota_nm;

  for (const ClusterInfo& cluster : corpus.clusters) {
    for (int32_t id : cluster.forced_member_ids) {
      members.push_back(id);
      pinned[id] = 1;
    }
    for (int32_t id : cluster.forced_nonmember_ids) {
      forced_nm.push_back(id);
      pinned[id] = 1;
    }
  }
  for (const ClusterInfo& cluster : corpus.clusters) {
    if (!cluster.quota_split) continue;
    const int size = static_cast<int>(cluster.doc_ids.size());
    const int quota = std::clamp(
        round_half_up(member_fraction * size) - kBoilerplateQuotaBias, 0, size);
    std::vector<size_t> pick = rng.sample_indices(size, quota);
    std::sort(pick.begin(), pick.end());
    std::vector<char> chosen(size, 0);
    for (size_t p : pick) chosen[p] = 1;
    for (int i = 0; i < size; ++i) {
      const int32_t id = cluster.doc_ids[i];
      pinned[id] = 1;
      if (chosen[i]) {
        members.push_back(id);
      } else {
        quota_nm.push_back(id);
      }
    }
  }

  std::vector<int32_t> pool;
  for (int32_t id = 0; id < n; ++id) {
    if (!pinned[id]) pool.push_back(id);
  }
  rng.shuffle(pool);
  for (int32_t id : pool) {
    if (static_cast<int>(members.size()) >= target) break;
    members.push_back(id);
  }
  // Extreme fractions can make the pinned tiers overshoot or starve the
  // target; demote the most recent picks, or promote reserved non-members,
  // until the global count is exact.
  while (static_cast<int>(members.size()) > target) members.pop_back();
  if (static_cast<int>(members.size()) < target) {
    rng.shuffle(quota_nm);
    for (int32_t id : quota_nm) {
      if (static_cast<int>(members.size()) >= target) break;
      members.push_back(id);
    }
  }
  if (static_cast<int>(members.size()) < target) {
    rng.shuffle(forced_nm);
    for (int32_t id : forced_nm) {
      if (static_cast<int>(members.size()) >= target) break;
      members.push_back(id);
    }
  }

  for (int32_t id : members) corpus.documents[id].label = Label::kMember;
  corpus.member_ids.clear();
  corpus.nonmember_ids.clear();
  for (int32_t id = 0; id < n; ++id) {
    if (corpus.documents[id].label == Label::kMember) {
      corpus.member_ids.push_back(id);
    } else {
      corpus.documents[id].label = Label::kNonMember;
      corpus.nonmember_ids.push_back(id);
    }
  }
  corpus.split_done = true;
}

ReferenceSet sample_reference(const Corpus& corpus, int n_member,
                              int n_nonmember, ReferenceMode mode,
                              uint64_t seed,
                              const std::unordered_set<int32_t>& exclude_ids) {
  if (n_member < 0 || n_nonmember < 0) {
    throw InputError("reference sample counts must be non-negative");
  }
  if (!corpus.split_done) {
    throw InputError("membership split must run before reference sampling");
  }
  if (mode == ReferenceMode::kDisjoint && n_member != 0) {
    throw InputError(
        "disjoint reference mode draws holdout documents only; requested " +
        std::to_string(n_member) + " member samples");
  }
  ReferenceSet out;
  out.mode = mode;
  Rng rng(seed);

  if (n_member > 0) {
    std::vector<int32_t> candidates;
    for (int32_t id : corpus.member_ids) {
      if (!exclude_ids.contains(id)) candidates.push_back(id);
    }
    if (static_cast<int>(candidates.size()) < n_member) {
      throw CapacityError("reference member pool holds " +
                          std::to_string(candidates.size()) +
                          " documents after exclusions; " +
                          std::to_string(n_member) + " requested");
    }
    std::vector<size_t> idx = rng.sample_indices(candidates.size(), n_member);
    std::sort(idx.begin(), idx.end());
    for (size_t i : idx) {
      out.samples.push_back(&corpus.documents[candidates[i]]);
      out.labels.push_back(Label::kMember);
    }
  }
  if (static_cast<int>(corpus.holdout_documents.size()) < n_nonmember) {
    throw CapacityError("holdout pool holds " +
                        std::to_string(corpus.holdout_documents.size()) +
                        " documents; " + std::to_string(n_nonmember) +
                        " non-member references requested");
  }
  std::vector<size_t> idx =
      rng.sample_indices(corpus.holdout_documents.size(), n_nonmember);
  std::sort(idx.begin(), idx.end());
  for (size_t i : idx) {
    out.samples.push_back(&corpus.holdout_documents[i]);
    out.labels.push_back(Label::kNonMember);
  }
  return out;
}

}  // namespace ragmia
