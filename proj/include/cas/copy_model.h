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

#ifndef CAS_COPY_MODEL_H_
#define CAS_COPY_MODEL_H_

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cas/scoring_model.h"

namespace cas {

struct CopyConfig {
  // Mixture weight of the copy distribution; 0 disables document
  // conditioning.
  double copy_weight = 0.85;
  // Weight multiplier per sentence index, giving earlier sentences more
  // copy mass (lead bias).
  double lead_decay = 0.6;
};

// Desk-scale summarizer: a base language model mixed with a copy
// distribution over one source document.
//
//   P(w | prefix) = (1 - copy_weight) * P_base(w | prefix)
//                 + copy_weight * P_copy(w | prefix, document)
//
// P_copy proposes the tokens that follow the prefix's last two (or last one)
// tokens in the document, weighted by lead_decay^sentence_index. A sentence
// end in the document proposes EOS. With an empty prefix it proposes
// sentence-initial tokens; with an unseen last token it proposes any
// document token.
class CopyMixtureModel : public ScoringModel {
 public:
  CopyMixtureModel(std::shared_ptr<const ScoringModel> base,
                   TokenSequence document, CopyConfig config);

  std::vector<double> next_logprobs(
      std::span<const TokenId> prefix) const override;
  const Vocabulary& vocab() const override { return base_->vocab(); }

  const TokenSequence& document() const { return document_; }

 private:
  using Sparse = std::vector<std::pair<TokenId, double>>;  // normalized

  const Sparse& copy_distribution(std::span<const TokenId> prefix) const;

  std::shared_ptr<const ScoringModel> base_;
  TokenSequence document_;
  CopyConfig config_;
  Sparse start_;
  Sparse anywhere_;
  std::unordered_map<TokenId, Sparse> after_one_;
  std::unordered_map<std::uint64_t, Sparse> after_two_;
};

// Hands out document-conditioned models that share one immutable base.
class Summarizer {
 public:
  Summarizer(std::shared_ptr<const ScoringModel> base, CopyConfig config);

  // The returned model keeps the base alive.
  std::shared_ptr<const ScoringModel> bind(const TokenSequence& document) const;

  const Vocabulary& vocab() const { return base_->vocab(); }
  const ScoringModel& base() const { return *base_; }
  const CopyConfig& config() const { return config_; }

 private:
  std::shared_ptr<const ScoringModel> base_;
  CopyConfig config_;
};

// Sentence-final punctuation: ".", "!", "?".
bool is_sentence_end(std::string_view token);

}  // namespace cas

#endif  // CAS_COPY_MODEL_H_
