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

#include "ragmia/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ragmia/errors.h"

namespace ragmia {

namespace {

void check_binary_labels(std::span<const int> labels) {
  for (int label : labels) {
    if (label != 0 && label != 1) {
      throw InputError("labels must be 0 or 1, got " + std::to_string(label));
    }
  }
}

}  // namespace

double accuracy(std::span<const int> verdicts, std::span<const int> labels) {
  if (verdicts.size() != labels.size()) {
    throw InputError("accuracy requires equal lengths, got " +
                     std::to_string(verdicts.size()) + " verdicts and " +
                     std::to_string(labels.size()) + " labels");
  }
  if (verdicts.empty()) {
    throw InputError("accuracy of an empty evaluation is undefined");
  }
  size_t correct = 0;
  for (size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i] == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(verdicts.size());
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw InputError("auc requires equal lengths");
  }
  check_binary_labels(labels);
  const size_t n = scores.size();
  size_t n_pos = 0;
  for (int label : labels) n_pos += static_cast<size_t>(label);
  const size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw MetricError("auc is undefined when a class is absent (" +
                      std::to_string(n_pos) + " positive, " +
                      std::to_string(n_neg) + " negative)");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&scores](size_t a, size_t b) { return scores[a] < scores[b]; });
  // Midranks give the half-credit tie convention exactly.
  double rank_sum_pos = 0.0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // 1-indexed
    for (size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) rank_sum_pos += midrank;
    }
    i = j;
  }
  const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) *
                                      static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw InputError("roc_curve requires equal lengths");
  }
  check_binary_labels(labels);
  const size_t n = scores.size();
  size_t n_pos = 0;
  for (int label : labels) n_pos += static_cast<size_t>(label);
  const size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw MetricError("roc_curve is undefined when a class is absent");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&scores](size_t a, size_t b) { return scores[a] > scores[b]; });
  std::vector<RocPoint> points;
  points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  size_t tp = 0;
  size_t fp = 0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    for (size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) {
        ++tp;
      } else {
        ++fp;
      }
    }
    points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                      static_cast<double>(tp) / static_cast<double>(n_pos),
                      scores[order[i]]});
    i = j;
  }
  return points;
}

double trapezoid_area(std::span<const RocPoint> points) {
  if (points.size() < 2) {
    throw InputError("trapezoid integration needs at least two points");
  }
  double area = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) *
            (points[i].tpr + points[i - 1].tpr) * 0.5;
  }
  return area;
}

double quantile(std::span<const double> values, double p) {
  if (values.empty()) {
    throw InputError("quantile of an empty sample is undefined");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("quantile order must lie in [0, 1], got " +
                     std::to_string(p));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * p + 1.0;  // 1-indexed
  const auto lo = static_cast<size_t>(std::floor(h));
  const double frac = h - std::floor(h);
  if (lo >= n) return sorted[n - 1];
  return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

Histogram build_histogram(std::span<const double> values, int bins) {
  if (values.empty()) {
    throw InputError("cannot build a histogram from no values");
  }
  double lo = values[0];
  double hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return build_histogram(values, bins, lo, hi);
}

Histogram build_histogram(std::span<const double> values, int bins, double lo,
                          double hi) {
  if (bins < 1) {
    throw InputError("histogram needs at least one bin, got " +
                     std::to_string(bins));
  }
  if (!(lo < hi)) {
    throw InputError("histogram range must satisfy lo < hi");
  }
  const double width = (hi - lo) / bins;
  Histogram hist;
  hist.total = values.size();
  hist.bins.resize(bins);
  for (int b = 0; b < bins; ++b) {
    hist.bins[b].lo = lo + b * width;
    hist.bins[b].hi = lo + (b + 1) * width;
  }
  for (double v : values) {
    auto idx = static_cast<long>((v - lo) / width);
    idx = std::clamp(idx, long{0}, static_cast<long>(bins - 1));
    ++hist.bins[idx].count;
  }
  for (HistogramBin& bin : hist.bins) {
    bin.density = hist.total == 0
                      ? 0.0
                      : static_cast<double>(bin.count) /
                            (static_cast<double>(hist.total) * width);
  }
  return hist;
}

}  // namespace ragmia
