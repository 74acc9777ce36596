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

#ifndef RAGMIA_RETRIEVAL_H_
#define RAGMIA_RETRIEVAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ragmia/corpus.h"

namespace ragmia {

struct ScoredDoc {
  int32_t doc_id = -1;
  double similarity = 0.0;
};

struct RetrievalResult {
  std::vector<ScoredDoc> hits;  // similarity descending, doc_id ascending ties
  bool truncated = false;       // k exceeded the database size
};

// The retrieval database holds exactly the member documents of a split
// corpus; non-member and holdout documents are never retrievable.
class RetrievalDatabase {
 public:
  explicit RetrievalDatabase(const Corpus& corpus);

  size_t size() const { return documents_.size(); }
  const std::vector<const Document*>& documents() const { return documents_; }
  const Document& document(int32_t doc_id) const;

 private:
  std::vector<const Document*> documents_;  // ascending doc_id
};

// Dot product of unit vectors. Throws InputError on dimension mismatch and
// NormalizationError if either norm strays from 1 by more than 1e-6.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Exhaustive scan over the database; ties broken by ascending doc_id.
RetrievalResult retrieve_top_k(const RetrievalDatabase& db,
                               std::span<const double> query_embedding, int k);

// Softmax over hit similarities (max-shifted for stability); sums to 1.
std::vector<double> relevance_weights(std::span<const ScoredDoc> hits);

}  // namespace ragmia

#endif  // RAGMIA_RETRIEVAL_H_
