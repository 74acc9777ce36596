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

#ifndef RAGMIA_METRICS_H_
#define RAGMIA_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace ragmia {

// Fraction of positions where verdict equals label. Throws InputError on
// mismatched lengths or empty input.
double accuracy(std::span<const int> verdicts, std::span<const int> labels);

// Mann-Whitney AUC with half-credit ties: P(pos > neg) + 0.5 P(pos = neg),
// computed by midranks. Throws MetricError when a class is missing.
double auc(std::span<const double> scores, std::span<const int> labels);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;  // verdict rule: score > threshold
};

// Threshold sweep over distinct score values, from (0,0) to (1,1). The
// trapezoid integral of these points equals the Mann-Whitney AUC.
std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const int> labels);

double trapezoid_area(std::span<const RocPoint> points);

// Linear-interpolation quantile with the h = (n-1)p + 1 convention:
// {0.1, 0.2, 0.3, 0.4} at p = 0.75 gives 0.325.
double quantile(std::span<const double> values, double p);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  long count = 0;
  double density = 0.0;  // count / (total * width)
};

struct Histogram {
  std::vector<HistogramBin> bins;
  size_t total = 0;
};

// Equal-width bins over [min, max] of the values (widened by 0.5 each way
// when all values coincide). Throws InputError on empty input or bins < 1.
Histogram build_histogram(std::span<const double> values, int bins);

// Fixed-range variant used for per-label histograms that must share axes;
// accepts empty values (all-zero counts) and clamps outliers to edge bins.
Histogram build_histogram(std::span<const double> values, int bins, double lo,
                          double hi);

}  // namespace ragmia

#endif  // RAGMIA_METRICS_H_
