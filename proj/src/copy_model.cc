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

#include "cas/copy_model.h"

#include <cmath>
#include <map>

#include "cas/errors.h"

namespace cas {
namespace {

std::uint64_t pair_key(TokenId a, TokenId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

template <typename Accum>
std::vector<std::pair<TokenId, double>> normalize(const Accum& weights) {
  double total = 0.0;
  for (const auto& [tok, w] : weights) total += w;
  std::vector<std::pair<TokenId, double>> out;
  out.reserve(weights.size());
  for (const auto& [tok, w] : weights) out.emplace_back(tok, w / total);
  return out;
}

// Forwards to the base model, ignoring the document.
class Unconditioned : public ScoringModel {
 public:
  explicit Unconditioned(std::shared_ptr<const ScoringModel> base)
      : base_(std::move(base)) {}
  std::vector<double> next_logprobs(
      std::span<const TokenId> prefix) const override {
    return base_->next_logprobs(prefix);
  }
  const Vocabulary& vocab() const override { return base_->vocab(); }

 private:
  std::shared_ptr<const ScoringModel> base_;
};

}  // namespace

bool is_sentence_end(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

CopyMixtureModel::CopyMixtureModel(std::shared_ptr<const ScoringModel> base,
                                   TokenSequence document, CopyConfig config)
    : base_(std::move(base)), document_(std::move(document)), config_(config) {
  if (config_.copy_weight < 0.0 || config_.copy_weight > 1.0) {
    throw ConfigError("copy_weight must lie in [0, 1]");
  }
  const Vocabulary& vocab = base_->vocab();
  std::map<TokenId, double> start, anywhere;
  std::map<TokenId, std::map<TokenId, double>> one;
  std::map<std::uint64_t, std::map<TokenId, double>> two;

  double weight = 1.0;
  bool at_start = true;
  for (std::size_t i = 0; i < document_.size(); ++i) {
    const TokenId tok = document_[i];
    if (!vocab.valid(tok)) {
      throw InvalidTokenError("document token id outside model vocabulary");
    }
    const bool ends = is_sentence_end(vocab.text(tok));
    if (at_start && !ends) start[tok] += weight;
    at_start = false;
    if (!ends) anywhere[tok] += weight;
    const TokenId next = (ends || i + 1 == document_.size())
                             ? Vocabulary::kEos
                             : document_[i + 1];
    one[tok][next] += weight;
    if (i > 0) two[pair_key(document_[i - 1], tok)][next] += weight;
    if (ends) {
      weight *= config_.lead_decay;
      at_start = true;
    }
  }
  if (start.empty()) start[Vocabulary::kEos] = 1.0;
  if (anywhere.empty()) anywhere[Vocabulary::kEos] = 1.0;
  start_ = normalize(start);
  anywhere_ = normalize(anywhere);
  for (const auto& [tok, succ] : one) after_one_.emplace(tok, normalize(succ));
  for (const auto& [k, succ] : two) after_two_.emplace(k, normalize(succ));
}

const CopyMixtureModel::Sparse& CopyMixtureModel::copy_distribution(
    std::span<const TokenId> prefix) const {
  if (prefix.empty()) return start_;
  if (prefix.size() >= 2) {
    auto it = after_two_.find(
        pair_key(prefix[prefix.size() - 2], prefix[prefix.size() - 1]));
    if (it != after_two_.end()) return it->second;
  }
  auto it = after_one_.find(prefix.back());
  if (it != after_one_.end()) return it->second;
  return anywhere_;
}

std::vector<double> CopyMixtureModel::next_logprobs(
    std::span<const TokenId> prefix) const {
  std::vector<double> logp = base_->next_logprobs(prefix);
  const double beta = config_.copy_weight;
  if (beta == 0.0) return logp;
  std::vector<double> probs(logp.size());
  for (std::size_t i = 0; i < logp.size(); ++i) {
    probs[i] = (1.0 - beta) * std::exp(logp[i]);
  }
  for (const auto& [tok, p] : copy_distribution(prefix)) {
    probs[static_cast<std::size_t>(tok)] += beta * p;
  }
  for (std::size_t i = 0; i < logp.size(); ++i) logp[i] = safe_log(probs[i]);
  return logp;
}

Summarizer::Summarizer(std::shared_ptr<const ScoringModel> base,
                       CopyConfig config)
    : base_(std::move(base)), config_(config) {}

std::shared_ptr<const ScoringModel> Summarizer::bind(
    const TokenSequence& document) const {
  if (config_.copy_weight == 0.0) {
    return std::make_shared<Unconditioned>(base_);
  }
  return std::make_shared<CopyMixtureModel>(base_, document, config_);
}

}  // namespace cas
