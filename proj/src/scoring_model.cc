// Copyright 2026 The CAS Workbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cas/scoring_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cas/errors.h"

namespace cas {

double safe_log(double p) {
  if (p <= 0.0) return kLogProbFloor;
  return std::max(std::log(p), kLogProbFloor);
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - m);
  return m + std::log(sum);
}

void DecodeConfig::validate() const {
  if (beam_size < 1) throw ConfigError("beam_size must be >= 1");
  if (max_length < 1) throw ConfigError("max_length must be >= 1");
  if (length_penalty_alpha < 0.0) {
    throw ConfigError("length_penalty_alpha must be >= 0");
  }
  if (candidates_per_hypothesis < 0) {
    throw ConfigError("candidates_per_hypothesis must be >= 0");
  }
}

}  // namespace cas
