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

#include <algorithm>
#include <cmath>
#include <string>

#include "ragmia/errors.h"

namespace ragmia {

namespace {

constexpr double kNormTolerance = 1e-6;

void check_unit_norm(std::span<const double> v, const char* which) {
  double norm_sq = 0.0;
  for (double x : v) norm_sq += x * x;
  const double norm = std::sqrt(norm_sq);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw NormalizationError(std::string(which) + " vector norm is " +
                             std::to_string(norm) +
                             "; expected 1 within 1e-6");
  }
}

}  // namespace

RetrievalDatabase::RetrievalDatabase(const Corpus& corpus) {
  if (!corpus.split_done) {
    throw InputError(
        "retrieval database requires a corpus with a membership split");
  }
  documents_.reserve(corpus.member_ids.size());
  for (int32_t id : corpus.member_ids) {
    documents_.push_back(&corpus.documents[id]);
  }
}

const Document& RetrievalDatabase::document(int32_t doc_id) const {
  const auto it = std::lower_bound(
      documents_.begin(), documents_.end(), doc_id,
      [](const Document* doc, int32_t id) { return doc->doc_id < id; });
  if (it == documents_.end() || (*it)->doc_id != doc_id) {
    throw InputError("document " + std::to_string(doc_id) +
                     " is not in the retrieval database");
  }
  return **it;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("cosine requires equal dimensions, got " +
                     std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  if (a.empty()) throw InputError("cosine of empty vectors is undefined");
  check_unit_norm(a, "first");
  check_unit_norm(b, "second");
  double dot = 0.0;
  for (size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot;
}

RetrievalResult retrieve_top_k(const RetrievalDatabase& db,
                               std::span<const double> query_embedding,
                               int k) {
  if (k < 1) {
    throw InputError("retrieval needs k >= 1, got " + std::to_string(k));
  }
  if (db.size() == 0) {
    throw RetrievalError("retrieval database is empty");
  }
  RetrievalResult result;
  result.hits.reserve(db.size());
  for (const Document* doc : db.documents()) {
    result.hits.push_back(
        {doc->doc_id, cosine_similarity(doc->embedding, query_embedding)});
  }
  std::sort(result.hits.begin(), result.hits.end(),
            [](const ScoredDoc& a, const ScoredDoc& b) {
              if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
              }
              return a.doc_id < b.doc_id;
            });
  if (static_cast<size_t>(k) > result.hits.size()) {
    result.truncated = true;
  } else {
    result.hits.resize(k);
  }
  return result;
}

std::vector<double> relevance_weights(std::span<const ScoredDoc> hits) {
  if (hits.empty()) {
    throw InputError("relevance weights of an empty retrieval are undefined");
  }
  double max_sim = hits.front().similarity;
  for (const ScoredDoc& hit : hits) max_sim = std::max(max_sim, hit.similarity);
  std::vector<double> weights(hits.size());
  double total = 0.0;
  for (size_t i = 0; i < hits.size(); ++i) {
    weights[i] = std::exp(hits[i].similarity - max_sim);
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return weights;
}

}  // namespace ragmia
