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

#ifndef RAGMIA_DEFENSE_H_
#define RAGMIA_DEFENSE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ragmia/token.h"

namespace ragmia {

enum class DefenseMode { kNone, kInstruction, kParaphrase, kTriples };

std::string defense_mode_name(DefenseMode mode);
DefenseMode parse_defense_mode(const std::string& name);  // ConfigError

struct DefenseConfig {
  DefenseMode mode = DefenseMode::kNone;
  double dampening = 0.3;      // instruction: refusal pressure in [0, 1]
  double swap_fraction = 0.7;  // paraphrase: rewrite rate in [0, 1]
  uint64_t seed = 9001;        // paraphrase rewrite stream
};

// Instruction defense: a defensive prompt that pushes the generator toward
// refusal, modeled as shrinking verification sensitivity around the floor:
// p' = base + (1 - dampening) * (p - base).
double apply_instruction_defense(double p_theta, double base, double dampening);

// Paraphrase defense: deterministic rule-based rewrite of the incoming query
// before retrieval and generation. Swaps adjacent token pairs with
// probability swap_fraction and substitutes each modifier token, with the
// same probability, by a same-class token from a different antonym pair.
// The rewrite stream is keyed on (seed, token fingerprint), so a query and
// its perturbed variant are rewritten independently.
std::vector<Token> paraphrase_query(std::span<const Token> tokens,
                                    uint64_t seed, double swap_fraction,
                                    const Vocabulary& vocab);

// Triples defense: re-serializes a retrieved document as (subject, relation,
// object) windows of 3, keeping only content tokens and padding with null
// tokens up to a whole number of triples (at least one). Modifier tokens
// vanish from the generation context, so the match score is exactly
// invariant under modifier-only query perturbations.
std::vector<Token> extract_triples(std::span<const Token> tokens);

}  // namespace ragmia

#endif  // RAGMIA_DEFENSE_H_
