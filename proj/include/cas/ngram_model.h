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

#ifndef CAS_NGRAM_MODEL_H_
#define CAS_NGRAM_MODEL_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cas/scoring_model.h"

namespace cas {

// Add-lambda smoothed n-gram model with backoff to shorter contexts.
//
// Training sequences are padded with order-1 BOS tokens on the left and EOS
// on the right; EOS is an ordinary predicted outcome. BOS is never
// predicted, so the smoothing denominator uses |V| - 1 outcomes:
//
//   P(w | ctx) = (count(ctx, w) + lambda) / (count(ctx) + lambda * (|V| - 1))
//
// where ctx is the longest suffix of the padded history (at most order-1
// tokens) that was observed during training.
class NGramModel : public ScoringModel {
 public:
  // Throws TrainingError for an empty corpus, order < 1 or lambda <= 0.
  static NGramModel train(const std::vector<TokenSequence>& corpus,
                          Vocabulary vocab, int order, double lambda);

  // Builds the vocabulary from the sentences (lowercased, punctuation split)
  // and trains on them.
  static NGramModel train_on_lines(const std::vector<std::string>& lines,
                                   int order, double lambda);

  // One sentence per line.
  static NGramModel train_on_file(const std::string& path, int order,
                                  double lambda);

  std::vector<double> next_logprobs(
      std::span<const TokenId> prefix) const override;
  const Vocabulary& vocab() const override { return vocab_; }

  // P(token | longest observed suffix of history). `history` excludes BOS
  // padding.
  double prob(std::span<const TokenId> history, TokenId token) const;

  // Number of tokens of the history actually used as context.
  int context_length_used(std::span<const TokenId> history) const;

  int order() const { return order_; }
  double lambda() const { return lambda_; }

 private:
  struct ContextCounts {
    std::int64_t total = 0;
    std::vector<std::pair<TokenId, std::int64_t>> successors;  // sorted by id
  };

  NGramModel(Vocabulary vocab, int order, double lambda);

  static std::string key(std::span<const TokenId> context);
  const ContextCounts& lookup(std::span<const TokenId> history,
                              int* used) const;

  Vocabulary vocab_;
  int order_;
  double lambda_;
  // tables_[k] maps contexts of length k to their successor counts.
  std::vector<std::unordered_map<std::string, ContextCounts>> tables_;
};

}  // namespace cas

#endif  // CAS_NGRAM_MODEL_H_
