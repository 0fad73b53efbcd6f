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

#ifndef CAS_SCORING_MODEL_H_
#define CAS_SCORING_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cas/vocabulary.h"

namespace cas {

// Log-probability assigned to zero-probability tokens. Finite so that score
// arithmetic never produces NaN.
inline constexpr double kLogProbFloor = -1e9;

// Converts a probability to a log-probability, flooring zeros.
double safe_log(double p);

double log_sum_exp(std::span<const double> values);

// A next-token distribution over a fixed vocabulary. Implementations are
// immutable after construction and may be shared across decoding threads.
class ScoringModel {
 public:
  virtual ~ScoringModel() = default;

  // Log-probabilities of every vocabulary entry following `prefix`. The
  // prefix holds generated tokens only (no BOS). The result has
  // vocab().size() entries and log-sum-exps to 0.
  virtual std::vector<double> next_logprobs(
      std::span<const TokenId> prefix) const = 0;

  virtual const Vocabulary& vocab() const = 0;
};

struct DecodeConfig {
  int beam_size = 5;
  // Maximum generated tokens before EOS is forced.
  int max_length = 40;
  double length_penalty_alpha = 1.0;
  std::uint64_t seed = 0;
  // Tokens proposed per hypothesis from the model's top scores; 0 means
  // beam_size.
  int candidates_per_hypothesis = 0;
  bool trace = false;

  // Throws ConfigError when beam_size < 1 or max_length < 1.
  void validate() const;
  int effective_candidates() const {
    return candidates_per_hypothesis > 0 ? candidates_per_hypothesis
                                         : beam_size;
  }
};

}  // namespace cas

#endif  // CAS_SCORING_MODEL_H_
