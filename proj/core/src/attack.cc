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

#include "ragmia/attack.h"

#include <algorithm>
#include <string>

#include "ragmia/errors.h"
#include "ragmia/metrics.h"
#include "ragmia/perturb.h"

namespace ragmia {

namespace {

void require_both_labels(const ReferenceSet& reference, const char* what) {
  bool has_member = false;
  bool has_nonmember = false;
  for (Label label : reference.labels) {
    has_member = has_member || label == Label::kMember;
    has_nonmember = has_nonmember || label == Label::kNonMember;
  }
  if (!has_member || !has_nonmember) {
    throw FittingError(std::string(what) +
                       " needs both labels in the reference set; accuracy "
                       "cannot discriminate with one class");
  }
}

void require_disjoint_mode(const ReferenceSet& reference, const char* what) {
  if (reference.mode != ReferenceMode::kDisjoint) {
    throw InputError(std::string(what) +
                     " calibrates on a disjoint same-distribution reference "
                     "pool, not an overlapping one");
  }
}

std::vector<double> reference_calibrated_scores(const ReferenceSet& reference,
                                                const GrayBoxView& system,
                                                const Embedder& embedder,
                                                double theta,
                                                uint64_t perturb_seed) {
  std::vector<double> scores;
  scores.reserve(reference.samples.size());
  for (const Document* doc : reference.samples) {
    const QueryPair pair =
        perturb_document(*doc, theta, perturb_seed, embedder);
    scores.push_back(calibrated_prob(system.yes_probability(pair.original),
                                     system.yes_probability(pair.perturbed)));
  }
  return scores;
}

double probability_in_unit(double p, const char* which) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError(std::string(which) + " probability must lie in [0, 1]");
  }
  return p;
}

}  // namespace

double calibrated_prob(double p_q, double p_q_perturbed) {
  probability_in_unit(p_q, "original");
  probability_in_unit(p_q_perturbed, "perturbed");
  return p_q - p_q_perturbed;
}

int adv3_score(int f_q, int f_q_perturbed) {
  if ((f_q != 0 && f_q != 1) || (f_q_perturbed != 0 && f_q_perturbed != 1)) {
    throw InputError("binary responses must be 0 or 1");
  }
  return f_q - f_q_perturbed;
}

FittedThresholds adv1_fit(const ReferenceSet& reference,
                          const GrayBoxView& system, const Embedder& embedder,
                          std::span<const double> theta_grid,
                          std::span<const double> gamma_grid,
                          uint64_t perturb_seed) {
  if (theta_grid.empty() || gamma_grid.empty()) {
    throw InputError("threshold fitting needs non-empty grids");
  }
  if (reference.samples.empty()) {
    throw FittingError("cannot fit thresholds on an empty reference set");
  }
  require_both_labels(reference, "grid fitting");
  std::vector<double> thetas(theta_grid.begin(), theta_grid.end());
  std::vector<double> gammas(gamma_grid.begin(), gamma_grid.end());
  // Ascending sweeps make the tie-break (smallest theta, then gamma) fall
  // out of strict-improvement comparisons.
  std::sort(thetas.begin(), thetas.end());
  std::sort(gammas.begin(), gammas.end());

  FittedThresholds fitted;
  double best_accuracy = -1.0;
  for (double theta : thetas) {
    const std::vector<double> scores = reference_calibrated_scores(
        reference, system, embedder, theta, perturb_seed);
    for (double gamma : gammas) {
      size_t correct = 0;
      for (size_t i = 0; i < scores.size(); ++i) {
        const bool member_verdict = scores[i] > gamma;
        const bool is_member = reference.labels[i] == Label::kMember;
        if (member_verdict == is_member) ++correct;
      }
      const double cell_accuracy =
          static_cast<double>(correct) / static_cast<double>(scores.size());
      fitted.grid_trace.push_back({theta, gamma, cell_accuracy});
      if (cell_accuracy > best_accuracy) {
        best_accuracy = cell_accuracy;
        fitted.theta_star = theta;
        fitted.gamma_star = gamma;
      }
    }
  }
  return fitted;
}

MembershipSignal adv1_infer(const Document& sample, const GrayBoxView& system,
                            const Embedder& embedder,
                            const FittedThresholds& fitted,
                            uint64_t perturb_seed) {
  return adv2_infer(sample, system, embedder, fitted.gamma_star,
                    fitted.theta_star, perturb_seed);
}

double adv2_threshold(const ReferenceSet& reference, const GrayBoxView& system,
                      const Embedder& embedder, double theta,
                      uint64_t perturb_seed) {
  require_disjoint_mode(reference, "the quartile threshold");
  if (reference.samples.size() < 4) {
    throw InsufficientReferenceError(
        "quartile threshold needs at least 4 reference samples, got " +
        std::to_string(reference.samples.size()));
  }
  const std::vector<double> scores = reference_calibrated_scores(
      reference, system, embedder, theta, perturb_seed);
  return quantile(scores, 0.75);
}

MembershipSignal adv2_infer(const Document& sample, const GrayBoxView& system,
                            const Embedder& embedder, double tau, double theta,
                            uint64_t perturb_seed) {
  const QueryPair pair = perturb_document(sample, theta, perturb_seed, embedder);
  MembershipSignal signal;
  signal.sample_id = sample.doc_id;
  signal.truth = sample.label;
  signal.p_yes_original = system.yes_probability(pair.original);
  signal.p_yes_perturbed = system.yes_probability(pair.perturbed);
  signal.calibrated =
      calibrated_prob(*signal.p_yes_original, *signal.p_yes_perturbed);
  signal.score = *signal.calibrated;
  signal.verdict =
      *signal.calibrated > tau ? Verdict::kMember : Verdict::kNonMember;
  return signal;
}

MembershipSignal adv3_infer(const Document& sample, const BlackBoxView& system,
                            const Embedder& embedder, double theta,
                            uint64_t perturb_seed) {
  const QueryPair pair = perturb_document(sample, theta, perturb_seed, embedder);
  MembershipSignal signal;
  signal.sample_id = sample.doc_id;
  signal.truth = sample.label;
  signal.f_original = system.response(pair.original) ? 1 : 0;
  signal.f_perturbed = system.response(pair.perturbed) ? 1 : 0;
  signal.binary_score = adv3_score(*signal.f_original, *signal.f_perturbed);
  signal.score = static_cast<double>(*signal.binary_score);
  signal.verdict =
      *signal.binary_score == 1 ? Verdict::kMember : Verdict::kNonMember;
  return signal;
}

MembershipSignal baseline_raw_probability(const Document& sample,
                                          const GrayBoxView& system,
                                          double gamma) {
  MembershipSignal signal;
  signal.sample_id = sample.doc_id;
  signal.truth = sample.label;
  signal.p_yes_original = system.yes_probability(sample.tokens);
  signal.score = *signal.p_yes_original;
  signal.verdict =
      *signal.p_yes_original > gamma ? Verdict::kMember : Verdict::kNonMember;
  return signal;
}

double fit_raw_gamma(const ReferenceSet& reference, const GrayBoxView& system,
                     std::span<const double> gamma_grid) {
  if (gamma_grid.empty()) {
    throw InputError("threshold fitting needs a non-empty grid");
  }
  if (reference.samples.empty()) {
    throw FittingError("cannot fit a threshold on an empty reference set");
  }
  require_both_labels(reference, "raw-probability fitting");
  std::vector<double> scores;
  scores.reserve(reference.samples.size());
  for (const Document* doc : reference.samples) {
    scores.push_back(system.yes_probability(doc->tokens));
  }
  std::vector<double> gammas(gamma_grid.begin(), gamma_grid.end());
  std::sort(gammas.begin(), gammas.end());
  double best_gamma = gammas.front();
  double best_accuracy = -1.0;
  for (double gamma : gammas) {
    size_t correct = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
      const bool member_verdict = scores[i] > gamma;
      if (member_verdict == (reference.labels[i] == Label::kMember)) ++correct;
    }
    const double cell_accuracy =
        static_cast<double>(correct) / static_cast<double>(scores.size());
    if (cell_accuracy > best_accuracy) {
      best_accuracy = cell_accuracy;
      best_gamma = gamma;
    }
  }
  return best_gamma;
}

double raw_quartile_threshold(const ReferenceSet& reference,
                              const GrayBoxView& system) {
  require_disjoint_mode(reference, "the raw quartile threshold");
  if (reference.samples.size() < 4) {
    throw InsufficientReferenceError(
        "quartile threshold needs at least 4 reference samples, got " +
        std::to_string(reference.samples.size()));
  }
  std::vector<double> scores;
  scores.reserve(reference.samples.size());
  for (const Document* doc : reference.samples) {
    scores.push_back(system.yes_probability(doc->tokens));
  }
  return quantile(scores, 0.75);
}

MembershipSignal baseline_response_only(const Document& sample,
                                        const BlackBoxView& system) {
  MembershipSignal signal;
  signal.sample_id = sample.doc_id;
  signal.truth = sample.label;
  signal.f_original = system.response(sample.tokens) ? 1 : 0;
  signal.score = static_cast<double>(*signal.f_original);
  signal.verdict =
      *signal.f_original == 1 ? Verdict::kMember : Verdict::kNonMember;
  return signal;
}

}  // namespace ragmia
