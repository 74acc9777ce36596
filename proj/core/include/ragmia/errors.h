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

#ifndef RAGMIA_ERRORS_H_
#define RAGMIA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ragmia {

// Root of the library's error hierarchy. The CLI maps ConfigError to exit
// code 2 and every other Error to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value; messages name the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A request exceeds an available pool; messages report available counts.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Malformed runtime input (empty sample, length mismatch, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

// Retrieval against an unusable database (e.g. empty).
class RetrievalError : public Error {
 public:
  using Error::Error;
};

// A vector violated the unit-norm contract of the similarity functions.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Token vectors cancelled to a zero mean; the embedding is undefined.
class DegenerateEmbeddingError : public Error {
 public:
  using Error::Error;
};

// Response generation failed (e.g. empty retrieved set).
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Perturbation is infeasible for the sample (no modifier tokens).
class PerturbationError : public Error {
 public:
  using Error::Error;
};

// Threshold fitting is undefined (e.g. single-label reference set).
class FittingError : public Error {
 public:
  using Error::Error;
};

// Too few reference samples for a quantile threshold.
class InsufficientReferenceError : public Error {
 public:
  using Error::Error;
};

// A metric is undefined on the given inputs (e.g. single-class AUC).
class MetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace ragmia

#endif  // RAGMIA_ERRORS_H_
