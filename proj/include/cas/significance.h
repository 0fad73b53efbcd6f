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

#ifndef CAS_SIGNIFICANCE_H_
#define CAS_SIGNIFICANCE_H_

#include <cstdint>
#include <span>
#include <string_view>

namespace cas {

enum class SignificanceMethod { kBootstrap, kApproxRandomization };

std::string_view significance_method_name(SignificanceMethod method);

struct SignificanceResult {
  double p_value = 1.0;
  int n_resamples = 0;
  SignificanceMethod method = SignificanceMethod::kBootstrap;
  std::uint64_t seed = 0;
};

// Paired bootstrap: fraction of resamples (records drawn with replacement)
// in which mean(A) <= mean(B). Small p means A is reliably better.
// Throws Error on length mismatch or fewer than two records.
SignificanceResult paired_bootstrap(std::span<const double> scores_a,
                                    std::span<const double> scores_b,
                                    int n_resamples, std::uint64_t seed);

// Approximate randomization with paired sign flips: fraction of shuffles
// whose mean difference (A - B) is >= the observed one.
SignificanceResult approx_randomization(std::span<const double> scores_a,
                                        std::span<const double> scores_b,
                                        int n_shuffles, std::uint64_t seed);

}  // namespace cas

#endif  // CAS_SIGNIFICANCE_H_
