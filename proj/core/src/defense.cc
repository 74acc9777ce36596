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

#include <utility>

#include "ragmia/errors.h"
#include "ragmia/rng.h"

namespace ragmia {

std::string defense_mode_name(DefenseMode mode) {
  switch (mode) {
    case DefenseMode::kNone: return "none";
    case DefenseMode::kInstruction: return "instruction";
    case DefenseMode::kParaphrase: return "paraphrase";
    case DefenseMode::kTriples: return "triples";
  }
  throw InputError("unknown defense mode value");
}

DefenseMode parse_defense_mode(const std::string& name) {
  if (name == "none") return DefenseMode::kNone;
  if (name == "instruction") return DefenseMode::kInstruction;
  if (name == "paraphrase") return DefenseMode::kParaphrase;
  if (name == "triples") return DefenseMode::kTriples;
  throw ConfigError("unknown defense mode \"" + name +
                    "\"; expected none, instruction, paraphrase, or triples");
}

double apply_instruction_defense(double p_theta, double base,
                                 double dampening) {
  if (!(dampening >= 0.0 && dampening <= 1.0)) {
    throw ConfigError("defense.dampening must lie in [0, 1], got " +
                      std::to_string(dampening));
  }
  return base + (1.0 - dampening) * (p_theta - base);
}

namespace {

uint64_t token_fingerprint(std::span<const Token> tokens) {
  // FNV-1a over the id stream; order-sensitive on purpose.
  uint64_t h = 1469598103934665603ull;
  for (const Token& t : tokens) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(t.id));
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<Token> paraphrase_query(std::span<const Token> tokens,
                                    uint64_t seed, double swap_fraction,
                                    const Vocabulary& vocab) {
  if (!(swap_fraction >= 0.0 && swap_fraction <= 1.0)) {
    throw ConfigError("defense.swap_fraction must lie in [0, 1], got " +
                      std::to_string(swap_fraction));
  }
  std::vector<Token> out(tokens.begin(), tokens.end());
  Rng rng(mix64(seed, token_fingerprint(tokens)));
  for (size_t i = 0; i + 1 < out.size(); i += 2) {
    if (rng.bernoulli(swap_fraction)) std::swap(out[i], out[i + 1]);
  }
  // One antonym pair in the vocabulary leaves no non-antonym alternative.
  if (vocab.pair_count() < 2) return out;
  for (Token& token : out) {
    if (token.cls != TokenClass::kModifier) continue;
    if (!rng.bernoulli(swap_fraction)) continue;
    const int32_t own_pair = token.id >> 1;
    int32_t pair = own_pair;
    while (pair == own_pair) {
      pair = static_cast<int32_t>(rng.below(vocab.pair_count()));
    }
    token = vocab.token(2 * pair + (rng.bernoulli(0.5) ? 1 : 0));
  }
  return out;
}

std::vector<Token> extract_triples(std::span<const Token> tokens) {
  std::vector<Token> out;
  for (const Token& token : tokens) {
    if (token.cls == TokenClass::kContent && token.id != kNullTokenId) {
      out.push_back(token);
    }
  }
  const Token null_token{kNullTokenId, TokenClass::kContent, kNullTokenId};
  while (out.size() < 3 || out.size() % 3 != 0) out.push_back(null_token);
  return out;
}

}  // namespace ragmia
