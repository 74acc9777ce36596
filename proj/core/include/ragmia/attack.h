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

#ifndef RAGMIA_ATTACK_H_
#define RAGMIA_ATTACK_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ragmia/corpus.h"
#include "ragmia/generator.h"

namespace ragmia {

enum class Verdict { kNonMember, kMember };

// One evaluated sample. Probability fields are present only for gray-box
// attacks, response fields only for black-box ones; `score` is whichever
// scalar the attack ranks by (calibrated difference, raw probability, or
// binary reversal score).
struct MembershipSignal {
  int32_t sample_id = -1;
  Label truth = Label::kUnassigned;
  std::optional<double> p_yes_original;
  std::optional<double> p_yes_perturbed;
  std::optional<double> calibrated;
  std::optional<int> f_original;
  std::optional<int> f_perturbed;
  std::optional<int> binary_score;
  Verdict verdict = Verdict::kNonMember;
  double score = 0.0;
};

// Calibrated membership score: p(q) - p(q'). The perturbed query strips the
// shared-context contribution, leaving the exact-match excess.
double calibrated_prob(double p_q, double p_q_perturbed);

// Binary calibration score f(q) - f(q') in {-1, 0, 1}; 1 is the
// decision-reversal case that marks a member.
int adv3_score(int f_q, int f_q_perturbed);

struct GridCell {
  double theta = 0.0;
  double gamma = 0.0;
  double accuracy = 0.0;
};

struct FittedThresholds {
  double theta_star = 0.0;
  double gamma_star = 0.0;
  double tau = 0.0;  // quartile threshold, when fitted
  std::vector<GridCell> grid_trace;
};

// Adversary 1: full grid search over (theta, gamma) maximizing reference
// accuracy of the rule calibrated > gamma; ties resolve to the smallest
// theta, then the smallest gamma. Throws FittingError when the reference
// carries a single label.
FittedThresholds adv1_fit(const ReferenceSet& reference,
                          const GrayBoxView& system, const Embedder& embedder,
                          std::span<const double> theta_grid,
                          std::span<const double> gamma_grid,
                          uint64_t perturb_seed);

MembershipSignal adv1_infer(const Document& sample, const GrayBoxView& system,
                            const Embedder& embedder,
                            const FittedThresholds& fitted,
                            uint64_t perturb_seed);

// Adversary 2: tau = Q3 of the calibrated scores of a disjoint
// same-distribution reference pool (>= 4 samples, else
// InsufficientReferenceError).
double adv2_threshold(const ReferenceSet& reference, const GrayBoxView& system,
                      const Embedder& embedder, double theta,
                      uint64_t perturb_seed);

MembershipSignal adv2_infer(const Document& sample, const GrayBoxView& system,
                            const Embedder& embedder, double tau, double theta,
                            uint64_t perturb_seed);

// Adversary 3: black-box; member iff the binary score equals 1.
MembershipSignal adv3_infer(const Document& sample, const BlackBoxView& system,
                            const Embedder& embedder, double theta,
                            uint64_t perturb_seed);

// Raw-probability baseline: score = p(q) with no calibration, thresholded
// by the same mechanism as the adversary it is compared against.
MembershipSignal baseline_raw_probability(const Document& sample,
                                          const GrayBoxView& system,
                                          double gamma);

double fit_raw_gamma(const ReferenceSet& reference, const GrayBoxView& system,
                     std::span<const double> gamma_grid);

double raw_quartile_threshold(const ReferenceSet& reference,
                              const GrayBoxView& system);

// Response-only baseline: member iff the system answers Yes.
MembershipSignal baseline_response_only(const Document& sample,
                                        const BlackBoxView& system);

}  // namespace ragmia

#endif  // RAGMIA_ATTACK_H_
