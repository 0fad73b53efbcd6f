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

#ifndef CAS_BENCH_H_
#define CAS_BENCH_H_

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "cas/constraints.h"
#include "cas/scoring_model.h"

namespace cas {

// One benchmark document: a model already bound to it plus the texts that
// supply constraint tokens.
struct BenchItem {
  std::shared_ptr<const ScoringModel> model;
  TokenSequence document;
  TokenSequence reference;
};

struct BenchConfig {
  std::vector<int> beam_sizes = {5, 10, 20};
  std::vector<int> constraint_counts = {1, 8};
  // Timed passes per configuration; the median is reported.
  int repetitions = 3;
  // Untimed passes run first.
  int warmup = 1;
  int max_length = 30;
  double length_penalty_alpha = 1.0;
  std::uint64_t seed = 0;
  // Also time plain beam_search at every beam size.
  bool include_unconstrained = true;
};

struct BenchRow {
  std::string mode;  // "unconstrained" or "dba"
  int beam_size = 0;
  int c_total = 0;  // requested constraint tokens per document
  double mean_c_total = 0.0;  // achieved, averaged over documents
  double median_seconds = 0.0;  // whole workload
  double mean_doc_seconds = 0.0;
  double docs_per_sec = 0.0;
  int repetitions = 0;
  // Timed passes in run order.
  std::vector<double> seconds;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  int num_docs = 0;
  std::uint64_t seed = 0;

  // Null when absent.
  const BenchRow* find(const std::string& mode, int beam_size,
                       int c_total) const;
  std::string to_csv() const;
};

// `count` distinct single-token constraints per item, sampled with `seed`
// from reference content tokens (no stopwords, punctuation or reserved
// tokens) that also occur in the document, topped up from other document
// content tokens when the reference runs short.
std::vector<ConstraintSet> bench_constraints(
    const std::vector<BenchItem>& items, const Vocabulary& vocab, int count,
    std::uint64_t seed, const std::unordered_set<std::string>& stopwords);

// Times decoding of every item for each (beam size, constraint count).
// Repetition r of every configuration runs before repetition r + 1 of any.
// Throws ConfigError for empty inputs or repetitions < 3.
BenchReport bench_decode(const std::vector<BenchItem>& items,
                         const Vocabulary& vocab, const BenchConfig& config,
                         const std::unordered_set<std::string>& stopwords);

}  // namespace cas

#endif  // CAS_BENCH_H_
