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

#include "cas/significance.h"

#include <random>
#include <vector>

#include "cas/errors.h"

namespace cas {
namespace {

std::vector<double> differences(std::span<const double> a,
                                std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("paired test needs equally long score lists");
  }
  if (a.size() < 2) throw Error("paired test needs at least two records");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

}  // namespace

std::string_view significance_method_name(SignificanceMethod method) {
  return method == SignificanceMethod::kBootstrap ? "bootstrap"
                                                  : "approx_randomization";
}

SignificanceResult paired_bootstrap(std::span<const double> scores_a,
                                    std::span<const double> scores_b,
                                    int n_resamples, std::uint64_t seed) {
  const auto d = differences(scores_a, scores_b);
  if (n_resamples < 1) throw Error("n_resamples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
  int not_better = 0;
  for (int r = 0; r < n_resamples; ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) sum += d[pick(rng)];
    if (sum <= 0.0) ++not_better;
  }
  return {static_cast<double>(not_better) / n_resamples, n_resamples,
          SignificanceMethod::kBootstrap, seed};
}

SignificanceResult approx_randomization(std::span<const double> scores_a,
                                        std::span<const double> scores_b,
                                        int n_shuffles, std::uint64_t seed) {
  const auto d = differences(scores_a, scores_b);
  if (n_shuffles < 1) throw Error("n_shuffles must be >= 1");
  double observed = 0.0;
  for (double x : d) observed += x;
  std::mt19937_64 rng(seed);
  int at_least = 0;
  for (int r = 0; r < n_shuffles; ++r) {
    double sum = 0.0;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i % 64 == 0) bits = rng();
      sum += (bits & 1U) ? -d[i] : d[i];
      bits >>= 1;
    }
    if (sum >= observed) ++at_least;
  }
  return {static_cast<double>(at_least) / n_shuffles, n_shuffles,
          SignificanceMethod::kApproxRandomization, seed};
}

}  // namespace cas
