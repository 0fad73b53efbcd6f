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

#ifndef CAS_ROUGE_H_
#define CAS_ROUGE_H_

#include <span>
#include <utility>
#include <vector>

#include "cas/vocabulary.h"

namespace cas {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool operator==(const RougeScore&) const = default;
};

// f1 = 2pr / (p + r), or 0 when p + r == 0.
RougeScore make_rouge_score(double precision, double recall);

// Clipped n-gram overlap. BOS/EOS are ignored. Sequences shorter than n
// yield zeros.
RougeScore rouge_n(std::span<const TokenId> candidate,
                   std::span<const TokenId> reference, int n);

// Longest-common-subsequence ROUGE over the whole sequence.
RougeScore rouge_l(std::span<const TokenId> candidate,
                   std::span<const TokenId> reference);

// Per-record F1 for the three reported variants.
struct RougeTriple {
  RougeScore r1, r2, rl;
  bool operator==(const RougeTriple&) const = default;
};

RougeTriple rouge_all(std::span<const TokenId> candidate,
                      std::span<const TokenId> reference);

// Unweighted mean of per-record F1, scaled to 0..100.
struct CorpusRouge {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;
  bool operator==(const CorpusRouge&) const = default;
};

// (candidate, reference) pairs. Throws Error when empty.
CorpusRouge corpus_rouge(
    const std::vector<std::pair<TokenSequence, TokenSequence>>& pairs);

// Mean of already-computed per-record triples. Throws Error when empty.
CorpusRouge corpus_rouge(const std::vector<RougeTriple>& per_record);

}  // namespace cas

#endif  // CAS_ROUGE_H_
