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

#ifndef CAS_KEYPHRASE_H_
#define CAS_KEYPHRASE_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cas/constraints.h"
#include "cas/vocabulary.h"

namespace cas {

// Minimum keyphrase score for automatic constraints. Calibrated with
// calibrate_min_score on the bundled synthetic corpus (default seed) so that
// roughly one record in ten receives constraints.
inline constexpr double kDefaultMinScore = 29.8;

const std::unordered_set<std::string>& default_stopwords();

struct KeyphraseCandidate {
  TokenSequence tokens;  // 1..max_ngram tokens
  double score = 0.0;
  int first_position = 0;
};

struct KpeConfig {
  int max_ngram = 5;
  int top_k = 3;
  double min_score = kDefaultMinScore;
  std::unordered_set<std::string> stopwords = default_stopwords();
};

// Smoothed inverse document frequency: ln((1 + N) / (1 + df)) + 1. Words
// never seen get the df = 0 value.
class IdfTable {
 public:
  IdfTable() = default;
  IdfTable(std::unordered_map<std::string, double> values, double unseen)
      : values_(std::move(values)), unseen_(unseen) {}

  static IdfTable from_documents(const std::vector<TokenSequence>& documents,
                                 const Vocabulary& vocab);

  double idf(std::string_view word) const;

 private:
  std::unordered_map<std::string, double> values_;
  double unseen_ = 1.0;
};

// Ranks every n-gram (n <= max_ngram) of `document` that holds no
// punctuation or UNK and neither starts nor ends with a stopword:
//
//   score(p) = sum over distinct tokens t of p of tf(t) * idf(t)
//              * 1 / (1 + first_position / |document|)
//
// tf counts occurrences in the document. Sorted by score, then earlier
// first position, then shorter phrase, then token ids.
std::vector<KeyphraseCandidate> extract_keyphrases(
    const TokenSequence& document, const Vocabulary& vocab,
    const IdfTable& idf, const KpeConfig& config);

enum class FilterReason { kKept, kInSummary, kLowScore, kSubPhrase, kOverLimit };

std::string_view filter_reason_name(FilterReason reason);

struct FilterDecision {
  KeyphraseCandidate candidate;
  FilterReason reason;
};

// The filter applied to each ranked candidate, in rank order: drop phrases
// already in the unconstrained summary, phrases scoring below min_score, and
// sub-phrases of an already kept phrase; keep at most top_k.
std::vector<FilterDecision> explain_filter(
    const std::vector<KeyphraseCandidate>& candidates,
    const TokenSequence& s_prime, const KpeConfig& config);

// The kept phrases of explain_filter as a constraint set.
ConstraintSet filter_constraints(
    const std::vector<KeyphraseCandidate>& candidates,
    const TokenSequence& s_prime, const Vocabulary& vocab,
    const KpeConfig& config);

// Highest score among candidates absent from `s_prime`; -infinity when none
// survive.
double best_surviving_score(const std::vector<KeyphraseCandidate>& candidates,
                            const TokenSequence& s_prime);

// Threshold that admits `target_fraction` of the given per-record best
// surviving scores: the midpoint between the k-th and (k+1)-th largest
// scores, k = round(target_fraction * n).
double calibrate_min_score(std::vector<double> best_scores,
                           double target_fraction);

}  // namespace cas

#endif  // CAS_KEYPHRASE_H_
