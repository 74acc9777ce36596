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

#include "ragmia/rng.h"

#include <cmath>
#include <numbers>
#include <string>

#include "ragmia/errors.h"

namespace ragmia {

uint64_t Rng::below(uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject draws from the final partial bucket so the modulus is unbiased.
  const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
  uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

int64_t Rng::int_in(int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = unit();
  while (u1 <= 0.0) u1 = unit();
  const double u2 = unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::vector<size_t> Rng::sample_indices(size_t n, size_t k) {
  if (k > n) {
    throw InputError("cannot sample " + std::to_string(k) +
                     " distinct indices from a pool of " + std::to_string(n));
  }
  std::vector<size_t> pool(n);
  for (size_t i = 0; i < n; ++i) pool[i] = i;
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace ragmia
