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

#include "ragmia/retrieval.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.h"
#include "ragmia/corpus.h"
#include "ragmia/errors.h"
#include "ragmia/rng.h"

namespace ragmia {
namespace {

Corpus split_corpus(int n_docs = 150, uint64_t seed = 3) {
  CorpusConfig config;
  config.n_docs = n_docs;
  config.vocab_size = 600;
  config.seed = seed;
  Corpus corpus = generate_corpus(config);
  split_membership(corpus, 0.8, 11);
  return corpus;
}

std::vector<double> random_unit(Rng& rng, int dim) {
  std::vector<double> v(static_cast<size_t>(dim));
  double norm_sq = 0.0;
  for (double& x : v) {
    x = rng.normal();
    norm_sq += x * x;
  }
  const double norm = std::sqrt(norm_sq);
  for (double& x : v) x /= norm;
  return v;
}

TEST(CosineSimilarity, MatchesGeometry) {
  const std::vector<double> ex = {1.0, 0.0};
  const std::vector<double> ey = {0.0, 1.0};
  const std::vector<double> neg = {-1.0, 0.0};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::vector<double> diag = {inv_sqrt2, inv_sqrt2};
  EXPECT_DOUBLE_EQ(cosine_similarity(ex, ex), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(ex, ey), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(ex, neg), -1.0);
  EXPECT_NEAR(cosine_similarity(ex, diag), inv_sqrt2, 1e-12);
}

TEST(CosineSimilarity, EnforcesTheUnitNormContract) {
  const std::vector<double> unit = {1.0, 0.0};
  const std::vector<double> half = {0.5, 0.0};
  const std::vector<double> twice = {2.0, 0.0};
  const std::vector<double> wider = {1.0, 0.0, 0.0};
  const std::vector<double> empty;
  const std::vector<double> near_unit = {1.0 + 5e-7, 0.0};
  EXPECT_THROW(cosine_similarity(unit, half), NormalizationError);
  EXPECT_THROW(cosine_similarity(twice, unit), NormalizationError);
  EXPECT_THROW(cosine_similarity(unit, wider), InputError);
  EXPECT_THROW(cosine_similarity(empty, empty), InputError);
  // Drift up to the tolerance passes.
  EXPECT_NO_THROW(cosine_similarity(unit, near_unit));
}

TEST(RetrievalDatabase, HoldsExactlyTheMemberDocuments) {
  const Corpus corpus = split_corpus();
  const RetrievalDatabase db(corpus);
  EXPECT_EQ(db.size(), corpus.member_ids.size());
  int32_t prev = -1;
  for (const Document* doc : db.documents()) {
    EXPECT_EQ(doc->label, Label::kMember);
    EXPECT_GT(doc->doc_id, prev);  // ascending, no duplicates
    prev = doc->doc_id;
  }
  EXPECT_EQ(db.document(corpus.member_ids.front()).doc_id,
            corpus.member_ids.front());
  EXPECT_THROW(db.document(corpus.nonmember_ids.front()), InputError);
}

TEST(RetrievalDatabase, RequiresASplitCorpus) {
  CorpusConfig config;
  config.n_docs = 40;
  config.vocab_size = 400;
  const Corpus unsplit = generate_corpus(config);
  EXPECT_THROW(RetrievalDatabase db(unsplit), InputError);
}

TEST(RetrieveTopK, MatchesTheBruteForceOracle) {
  const Corpus corpus = split_corpus();
  const RetrievalDatabase db(corpus);
  std::vector<std::vector<double>> doc_vecs;
  for (const Document* doc : db.documents()) {
    doc_vecs.push_back(doc->embedding);
  }
  Rng rng(314);
  for (int trial = 0; trial < 20; ++trial) {
    const auto query = random_unit(rng, corpus.dim);
    const RetrievalResult got = retrieve_top_k(db, query, 5);
    const auto want = oracles::top_k(doc_vecs, query, 5);
    ASSERT_EQ(got.hits.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(got.hits[i].doc_id, db.documents()[want[i].first]->doc_id);
      EXPECT_NEAR(got.hits[i].similarity, want[i].second, 1e-12);
    }
    EXPECT_FALSE(got.truncated);
  }
}

TEST(RetrieveTopK, RanksBySimilarityThenDocId) {
  const Corpus corpus = split_corpus();
  const RetrievalDatabase db(corpus);
  Rng rng(159);
  const auto query = random_unit(rng, corpus.dim);
  const RetrievalResult result =
      retrieve_top_k(db, query, static_cast<int>(db.size()));
  for (size_t i = 1; i < result.hits.size(); ++i) {
    const auto& prev = result.hits[i - 1];
    const auto& cur = result.hits[i];
    EXPECT_TRUE(prev.similarity > cur.similarity ||
                (prev.similarity == cur.similarity &&
                 prev.doc_id < cur.doc_id));
  }
}

TEST(RetrieveTopK, BreaksExactTiesByAscendingDocId) {
  // With everything promoted to member, each duplicated cluster puts two
  // token-identical documents in the database: an exact similarity tie.
  CorpusConfig config;
  config.n_docs = 150;
  config.vocab_size = 600;
  config.seed = 3;
  Corpus corpus = generate_corpus(config);
  split_membership(corpus, 1.0, 11);
  const RetrievalDatabase db(corpus);
  bool saw_tie = false;
  for (const ClusterInfo& cluster : corpus.clusters) {
    if (cluster.type != ClusterType::kDuplicated) continue;
    saw_tie = true;
    const Document& original = corpus.document(cluster.doc_ids.front());
    const Document& copy = corpus.document(cluster.doc_ids.back());
    ASSERT_EQ(original.embedding, copy.embedding);
    const RetrievalResult result = retrieve_top_k(db, original.embedding, 2);
    ASSERT_EQ(result.hits.size(), 2u);
    EXPECT_EQ(result.hits[0].similarity, result.hits[1].similarity);
    EXPECT_EQ(result.hits[0].doc_id, original.doc_id);
    EXPECT_EQ(result.hits[1].doc_id, copy.doc_id);
  }
  EXPECT_TRUE(saw_tie);
}

TEST(RetrieveTopK, FlagsTruncationWhenKExceedsTheDatabase) {
  CorpusConfig config;
  config.n_docs = 12;
  config.vocab_size = 400;
  config.seed = 21;
  Corpus corpus = generate_corpus(config);
  split_membership(corpus, 0.5, 4);
  const RetrievalDatabase db(corpus);
  Rng rng(1);
  const auto query = random_unit(rng, corpus.dim);
  const RetrievalResult result =
      retrieve_top_k(db, query, static_cast<int>(db.size()) + 3);
  EXPECT_TRUE(result.truncated);
  EXPECT_EQ(result.hits.size(), db.size());
  EXPECT_THROW(retrieve_top_k(db, query, 0), InputError);
}

TEST(RetrieveTopK, EmptyDatabaseIsAnError) {
  CorpusConfig config;
  config.n_docs = 12;
  config.vocab_size = 400;
  Corpus corpus = generate_corpus(config);
  split_membership(corpus, 0.0, 4);
  const RetrievalDatabase db(corpus);
  EXPECT_EQ(db.size(), 0u);
  Rng rng(1);
  const auto query = random_unit(rng, corpus.dim);
  EXPECT_THROW(retrieve_top_k(db, query, 1), RetrievalError);
}

TEST(RelevanceWeights, MatchesTheLonghandSoftmax) {
  std::vector<ScoredDoc> hits = {{0, 0.9}, {1, 0.4}, {2, -0.2}, {3, 0.0}};
  const auto weights = relevance_weights(hits);
  std::vector<double> sims;
  for (const auto& hit : hits) sims.push_back(hit.similarity);
  const auto want = oracles::softmax(sims);
  ASSERT_EQ(weights.size(), want.size());
  double total = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    EXPECT_NEAR(weights[i], want[i], 1e-12);
    total += weights[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(RelevanceWeights, KnownTwoPointCase) {
  // Similarities {0, ln 3} give weights {0.25, 0.75}.
  std::vector<ScoredDoc> hits = {{0, 0.0}, {1, std::log(3.0)}};
  const auto weights = relevance_weights(hits);
  EXPECT_NEAR(weights[0], 0.25, 1e-12);
  EXPECT_NEAR(weights[1], 0.75, 1e-12);
}

TEST(RelevanceWeights, IsShiftInvariant) {
  std::vector<ScoredDoc> base = {{0, 0.1}, {1, 0.5}, {2, 0.9}};
  std::vector<ScoredDoc> shifted = {{0, 7.1}, {1, 7.5}, {2, 7.9}};
  const auto a = relevance_weights(base);
  const auto b = relevance_weights(shifted);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(RelevanceWeights, SingleHitGetsFullWeight) {
  std::vector<ScoredDoc> hits = {{4, 0.37}};
  const auto weights = relevance_weights(hits);
  ASSERT_EQ(weights.size(), 1u);
  EXPECT_DOUBLE_EQ(weights[0], 1.0);
  EXPECT_THROW(relevance_weights({}), InputError);
}

}  // namespace
}  // namespace ragmia
