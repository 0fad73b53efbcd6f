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

#include "cas/rouge.h"

#include <algorithm>
#include <map>

#include "cas/errors.h"

namespace cas {
namespace {

TokenSequence content(std::span<const TokenId> seq) {
  TokenSequence out;
  out.reserve(seq.size());
  for (TokenId t : seq) {
    if (t != Vocabulary::kBos && t != Vocabulary::kEos) out.push_back(t);
  }
  return out;
}

std::map<TokenSequence, int> ngram_counts(const TokenSequence& seq,
                                          std::size_t n) {
  std::map<TokenSequence, int> counts;
  if (seq.size() < n) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    ++counts[TokenSequence(seq.begin() + static_cast<std::ptrdiff_t>(i),
                           seq.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

RougeScore make_rouge_score(double precision, double recall) {
  RougeScore s{precision, recall, 0.0};
  if (precision + recall > 0.0) {
    s.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return s;
}

RougeScore rouge_n(std::span<const TokenId> candidate,
                   std::span<const TokenId> reference, int n) {
  if (n < 1) throw Error("rouge_n needs n >= 1");
  const auto cand = content(candidate);
  const auto ref = content(reference);
  const auto nn = static_cast<std::size_t>(n);
  if (cand.size() < nn || ref.size() < nn) return {};
  const auto cand_counts = ngram_counts(cand, nn);
  const auto ref_counts = ngram_counts(ref, nn);
  int overlap = 0;
  for (const auto& [gram, c] : cand_counts) {
    auto it = ref_counts.find(gram);
    if (it != ref_counts.end()) overlap += std::min(c, it->second);
  }
  const double cand_total = static_cast<double>(cand.size() - nn + 1);
  const double ref_total = static_cast<double>(ref.size() - nn + 1);
  return make_rouge_score(overlap / cand_total, overlap / ref_total);
}

RougeScore rouge_l(std::span<const TokenId> candidate,
                   std::span<const TokenId> reference) {
  const auto cand = content(candidate);
  const auto ref = content(reference);
  if (cand.empty() || ref.empty()) return {};
  const double lcs = static_cast<double>(lcs_length(cand, ref));
  return make_rouge_score(lcs / static_cast<double>(cand.size()),
                          lcs / static_cast<double>(ref.size()));
}

RougeTriple rouge_all(std::span<const TokenId> candidate,
                      std::span<const TokenId> reference) {
  return {rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2),
          rouge_l(candidate, reference)};
}

CorpusRouge corpus_rouge(const std::vector<RougeTriple>& per_record) {
  if (per_record.empty()) throw Error("corpus_rouge needs at least one record");
  CorpusRouge c;
  for (const auto& t : per_record) {
    c.r1 += t.r1.f1;
    c.r2 += t.r2.f1;
    c.rl += t.rl.f1;
  }
  const double scale = 100.0 / static_cast<double>(per_record.size());
  c.r1 *= scale;
  c.r2 *= scale;
  c.rl *= scale;
  return c;
}

CorpusRouge corpus_rouge(
    const std::vector<std::pair<TokenSequence, TokenSequence>>& pairs) {
  std::vector<RougeTriple> triples;
  triples.reserve(pairs.size());
  for (const auto& [cand, ref] : pairs) triples.push_back(rouge_all(cand, ref));
  return corpus_rouge(triples);
}

}  // namespace cas
