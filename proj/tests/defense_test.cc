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

#include "ragmia/defense.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "ragmia/errors.h"
#include "ragmia/rng.h"
#include "ragmia/token.h"

namespace ragmia {
namespace {

std::vector<Token> mixed_sample(const Vocabulary& vocab) {
  // Content and modifier tokens interleaved.
  return {vocab.token(vocab.content_begin()),     vocab.token(0),
          vocab.token(vocab.content_begin() + 1), vocab.token(2),
          vocab.token(vocab.content_begin() + 2), vocab.token(5),
          vocab.token(vocab.content_begin() + 3)};
}

TEST(DefenseMode, NamesRoundTrip) {
  for (DefenseMode mode :
       {DefenseMode::kNone, DefenseMode::kInstruction, DefenseMode::kParaphrase,
        DefenseMode::kTriples}) {
    EXPECT_EQ(parse_defense_mode(defense_mode_name(mode)), mode);
  }
  EXPECT_THROW(parse_defense_mode("nonsense"), ConfigError);
  EXPECT_THROW(parse_defense_mode(""), ConfigError);
}

TEST(InstructionDefense, ShrinksAroundTheBase) {
  EXPECT_DOUBLE_EQ(apply_instruction_defense(0.9, 0.1, 0.3),
                   0.1 + 0.7 * 0.8);
  // No dampening is the identity.
  EXPECT_DOUBLE_EQ(apply_instruction_defense(0.73, 0.1, 0.0), 0.73);
  // Full dampening collapses everything to the base rate.
  EXPECT_DOUBLE_EQ(apply_instruction_defense(0.73, 0.1, 1.0), 0.1);
  EXPECT_DOUBLE_EQ(apply_instruction_defense(0.1, 0.1, 0.5), 0.1);
  EXPECT_THROW(apply_instruction_defense(0.5, 0.1, -0.01), ConfigError);
  EXPECT_THROW(apply_instruction_defense(0.5, 0.1, 1.01), ConfigError);
}

TEST(InstructionDefense, ScalesProbabilityDifferencesUniformly) {
  // The defense is affine with slope (1 - dampening), so any score built
  // from a difference of probabilities shrinks by that exact factor.
  Rng rng(55);
  const double dampening = 0.3;
  for (int trial = 0; trial < 200; ++trial) {
    const double p1 = rng.unit();
    const double p2 = rng.unit();
    const double shrunk = apply_instruction_defense(p1, 0.1, dampening) -
                          apply_instruction_defense(p2, 0.1, dampening);
    EXPECT_NEAR(shrunk, (1.0 - dampening) * (p1 - p2), 1e-12);
  }
}

TEST(ParaphraseQuery, IsDeterministicPerTokenSequence) {
  const Vocabulary vocab(60, 20);
  const auto sample = mixed_sample(vocab);
  const auto a = paraphrase_query(sample, 42, 0.7, vocab);
  const auto b = paraphrase_query(sample, 42, 0.7, vocab);
  EXPECT_EQ(a, b);
  const auto other_seed = paraphrase_query(sample, 43, 0.7, vocab);
  ASSERT_EQ(other_seed.size(), sample.size());

  // A different sequence draws an independent rewrite stream.
  auto reversed = sample;
  std::reverse(reversed.begin(), reversed.end());
  const auto c = paraphrase_query(reversed, 42, 0.7, vocab);
  ASSERT_EQ(c.size(), reversed.size());
}

TEST(ParaphraseQuery, PreservesLengthContentAndClassCounts) {
  const Vocabulary vocab(60, 20);
  const auto sample = mixed_sample(vocab);
  std::multiset<int32_t> content_before;
  size_t modifiers_before = 0;
  for (const Token& t : sample) {
    if (t.cls == TokenClass::kContent) {
      content_before.insert(t.id);
    } else {
      ++modifiers_before;
    }
  }
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const auto out = paraphrase_query(sample, seed, 0.7, vocab);
    ASSERT_EQ(out.size(), sample.size());
    std::multiset<int32_t> content_after;
    size_t modifiers_after = 0;
    for (const Token& t : out) {
      if (t.cls == TokenClass::kContent) {
        content_after.insert(t.id);
      } else {
        ++modifiers_after;
        EXPECT_TRUE(vocab.is_modifier(t.id));
      }
    }
    EXPECT_EQ(content_after, content_before);
    EXPECT_EQ(modifiers_after, modifiers_before);
  }
}

TEST(ParaphraseQuery, ZeroFractionIsTheIdentity) {
  const Vocabulary vocab(60, 20);
  const auto sample = mixed_sample(vocab);
  EXPECT_EQ(paraphrase_query(sample, 42, 0.0, vocab), sample);
}

TEST(ParaphraseQuery, FullFractionSwapsEveryAdjacentPairAndEveryModifier) {
  const Vocabulary vocab(60, 20);
  const auto sample = mixed_sample(vocab);
  const auto out = paraphrase_query(sample, 42, 1.0, vocab);
  ASSERT_EQ(out.size(), sample.size());
  // Every even-indexed adjacent pair swapped.
  std::vector<Token> swapped = sample;
  for (size_t i = 0; i + 1 < swapped.size(); i += 2) {
    std::swap(swapped[i], swapped[i + 1]);
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (swapped[i].cls == TokenClass::kContent) {
      EXPECT_EQ(out[i], swapped[i]) << "content moved beyond the swap";
    } else {
      // Every modifier is substituted into a different antonym pair.
      EXPECT_EQ(out[i].cls, TokenClass::kModifier);
      EXPECT_NE(out[i].id >> 1, swapped[i].id >> 1);
    }
  }
}

TEST(ParaphraseQuery, SinglePairVocabularyRewritesNothingButSwaps) {
  const Vocabulary vocab(8, 2);  // one antonym pair: no substitution target
  std::vector<Token> sample = {vocab.token(0), vocab.token(3), vocab.token(4)};
  const auto out = paraphrase_query(sample, 9, 1.0, vocab);
  ASSERT_EQ(out.size(), 3u);
  // The swap still happens, but the modifier keeps its identity.
  std::multiset<int32_t> ids_before{0, 3, 4}, ids_after;
  for (const Token& t : out) ids_after.insert(t.id);
  EXPECT_EQ(ids_after, ids_before);
  EXPECT_THROW(paraphrase_query(sample, 9, 1.5, vocab), ConfigError);
}

TEST(ExtractTriples, KeepsContentPadsToWholeTriples) {
  const Vocabulary vocab(60, 20);
  // Four content tokens among modifiers: pad 4 -> 6.
  std::vector<Token> sample = {vocab.token(0),  vocab.token(25),
                               vocab.token(26), vocab.token(3),
                               vocab.token(27), vocab.token(28)};
  const auto out = extract_triples(sample);
  ASSERT_EQ(out.size(), 6u);
  EXPECT_EQ(out[0].id, 25);
  EXPECT_EQ(out[1].id, 26);
  EXPECT_EQ(out[2].id, 27);
  EXPECT_EQ(out[3].id, 28);
  EXPECT_EQ(out[4].id, kNullTokenId);
  EXPECT_EQ(out[5].id, kNullTokenId);
}

TEST(ExtractTriples, ExactMultiplesGetNoPadding) {
  const Vocabulary vocab(60, 20);
  std::vector<Token> sample = {vocab.token(25), vocab.token(26),
                               vocab.token(27)};
  const auto out = extract_triples(sample);
  ASSERT_EQ(out.size(), 3u);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(out[i], sample[i]);
}

TEST(ExtractTriples, AllModifierInputYieldsOneNullTriple) {
  const Vocabulary vocab(60, 20);
  std::vector<Token> sample = {vocab.token(0), vocab.token(1), vocab.token(2)};
  const auto out = extract_triples(sample);
  ASSERT_EQ(out.size(), 3u);
  for (const Token& t : out) EXPECT_EQ(t.id, kNullTokenId);
  // Re-running the extraction never accumulates extra padding.
  const auto repadded = extract_triples(out);
  ASSERT_EQ(repadded.size(), 3u);
  for (const Token& t : repadded) EXPECT_EQ(t.id, kNullTokenId);
}

}  // namespace
}  // namespace ragmia
