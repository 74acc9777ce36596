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

#ifndef RAGMIA_TOKEN_H_
#define RAGMIA_TOKEN_H_

#include <cstdint>

#include "ragmia/errors.h"

namespace ragmia {

// Padding token id used when a transformed document is shorter than one
// subject-relation-object window.
inline constexpr int32_t kNullTokenId = -1;

enum class TokenClass { kContent, kModifier };

// A vocabulary entry reference. antonym_id is defined only for modifiers;
// content tokens carry kNullTokenId there.
struct Token {
  int32_t id = kNullTokenId;
  TokenClass cls = TokenClass::kContent;
  int32_t antonym_id = kNullTokenId;
};

inline bool operator==(const Token& a, const Token& b) {
  return a.id == b.id && a.cls == b.cls && a.antonym_id == b.antonym_id;
}

// Fixed-layout vocabulary: ids [0, modifier_count) are modifiers arranged in
// adjacent antonym pairs (antonym(id) = id ^ 1), ids [modifier_count, size)
// are content tokens. The pairing makes the antonym relation a symmetric
// involution by construction.
class Vocabulary {
 public:
  // modifier_count < 0 selects the default: the largest even count <= 40% of
  // the vocabulary, at least one pair.
  explicit Vocabulary(int32_t size, int32_t modifier_count = -1)
      : size_(size) {
    if (size < 4) {
      throw ConfigError("vocabulary: size must be at least 4");
    }
    if (modifier_count < 0) {
      modifier_count = static_cast<int32_t>(0.4 * size) & ~1;
      if (modifier_count < 2) modifier_count = 2;
    }
    if (modifier_count < 2 || modifier_count % 2 != 0 ||
        modifier_count > size - 2) {
      throw ConfigError(
          "vocabulary: modifier_count must be even, >= 2, and leave at least "
          "two content tokens");
    }
    modifier_count_ = modifier_count;
  }

  int32_t size() const { return size_; }
  int32_t modifier_count() const { return modifier_count_; }
  int32_t content_count() const { return size_ - modifier_count_; }
  int32_t content_begin() const { return modifier_count_; }
  int32_t pair_count() const { return modifier_count_ / 2; }

  bool is_modifier(int32_t id) const { return id >= 0 && id < modifier_count_; }

  bool is_valid(int32_t id) const { return id >= 0 && id < size_; }

  int32_t antonym(int32_t id) const {
    if (!is_modifier(id)) {
      throw InputError("vocabulary: content tokens have no antonym");
    }
    return id ^ 1;
  }

  Token token(int32_t id) const {
    if (!is_valid(id)) {
      throw InputError("vocabulary: token id out of range");
    }
    if (is_modifier(id)) {
      return Token{id, TokenClass::kModifier, id ^ 1};
    }
    return Token{id, TokenClass::kContent, kNullTokenId};
  }

 private:
  int32_t size_;
  int32_t modifier_count_;
};

}  // namespace ragmia

#endif  // RAGMIA_TOKEN_H_
