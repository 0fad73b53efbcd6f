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

#include "cas/ngram_model.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "cas/errors.h"

namespace cas {

NGramModel::NGramModel(Vocabulary vocab, int order, double lambda)
    : vocab_(std::move(vocab)),
      order_(order),
      lambda_(lambda),
      tables_(static_cast<std::size_t>(order)) {}

std::string NGramModel::key(std::span<const TokenId> context) {
  std::string k(context.size() * sizeof(TokenId), '\0');
  if (!context.empty()) {
    std::memcpy(k.data(), context.data(), k.size());
  }
  return k;
}

NGramModel NGramModel::train(const std::vector<TokenSequence>& corpus,
                             Vocabulary vocab, int order, double lambda) {
  if (corpus.empty()) throw TrainingError("n-gram training corpus is empty");
  if (order < 1) throw TrainingError("n-gram order must be >= 1");
  if (!(lambda > 0.0)) throw TrainingError("smoothing lambda must be > 0");

  NGramModel model(std::move(vocab), order, lambda);
  const auto n = static_cast<std::size_t>(order);
  std::vector<std::unordered_map<std::string, std::map<TokenId, std::int64_t>>>
      raw(n);

  for (const auto& sentence : corpus) {
    TokenSequence padded(n - 1, Vocabulary::kBos);
    for (TokenId t : sentence) {
      if (!model.vocab_.valid(t) || t == Vocabulary::kBos ||
          t == Vocabulary::kEos) {
        throw TrainingError("training sentence holds an invalid token id " +
                            std::to_string(t));
      }
      padded.push_back(t);
    }
    padded.push_back(Vocabulary::kEos);
    for (std::size_t pos = n - 1; pos < padded.size(); ++pos) {
      const TokenId next = padded[pos];
      for (std::size_t k = 0; k < n; ++k) {
        std::span<const TokenId> ctx(padded.data() + pos - k, k);
        ++raw[k][key(ctx)][next];
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    auto& table = model.tables_[k];
    table.reserve(raw[k].size());
    for (auto& [ctx, counts] : raw[k]) {
      ContextCounts cc;
      for (const auto& [tok, c] : counts) {
        cc.total += c;
        cc.successors.emplace_back(tok, c);
      }
      table.emplace(ctx, std::move(cc));
    }
  }
  return model;
}

NGramModel NGramModel::train_on_lines(const std::vector<std::string>& lines,
                                      int order, double lambda) {
  Vocabulary vocab;
  std::vector<std::vector<std::string>> words;
  words.reserve(lines.size());
  for (const auto& line : lines) {
    words.push_back(normalize_words(line));
    for (const auto& w : words.back()) vocab.add(w);
  }
  std::vector<TokenSequence> corpus;
  corpus.reserve(words.size());
  for (const auto& ws : words) {
    TokenSequence seq;
    for (const auto& w : ws) seq.push_back(vocab.id(w));
    corpus.push_back(std::move(seq));
  }
  return train(corpus, std::move(vocab), order, lambda);
}

NGramModel NGramModel::train_on_file(const std::string& path, int order,
                                     double lambda) {
  std::ifstream in(path);
  if (!in) throw TrainingError("cannot read corpus file " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return train_on_lines(lines, order, lambda);
}

const NGramModel::ContextCounts& NGramModel::lookup(
    std::span<const TokenId> history, int* used) const {
  const auto n = static_cast<std::size_t>(order_);
  // Left-pad with BOS up to order-1 tokens, then take the suffix.
  TokenSequence ctx(n - 1, Vocabulary::kBos);
  const std::size_t take = std::min(history.size(), n - 1);
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(),
            ctx.end() - static_cast<std::ptrdiff_t>(take));
  for (std::size_t k = n - 1;; --k) {
    std::span<const TokenId> suffix(ctx.data() + (n - 1 - k), k);
    auto it = tables_[k].find(key(suffix));
    if (it != tables_[k].end() && it->second.total > 0) {
      if (used != nullptr) *used = static_cast<int>(k);
      return it->second;
    }
    if (k == 0) break;
  }
  // Unreachable for a trained model: the empty context always has counts.
  throw TrainingError("n-gram model has no unigram counts");
}

std::vector<double> NGramModel::next_logprobs(
    std::span<const TokenId> prefix) const {
  const ContextCounts& cc = lookup(prefix, nullptr);
  const double outcomes = static_cast<double>(vocab_.size() - 1);
  const double denom = static_cast<double>(cc.total) + lambda_ * outcomes;
  std::vector<double> logp(vocab_.size(), std::log(lambda_ / denom));
  for (const auto& [tok, c] : cc.successors) {
    logp[static_cast<std::size_t>(tok)] =
        std::log((static_cast<double>(c) + lambda_) / denom);
  }
  logp[Vocabulary::kBos] = kLogProbFloor;
  return logp;
}

double NGramModel::prob(std::span<const TokenId> history, TokenId token) const {
  if (token == Vocabulary::kBos) return 0.0;
  const ContextCounts& cc = lookup(history, nullptr);
  std::int64_t c = 0;
  auto it = std::lower_bound(
      cc.successors.begin(), cc.successors.end(), token,
      [](const auto& entry, TokenId t) { return entry.first < t; });
  if (it != cc.successors.end() && it->first == token) c = it->second;
  const double outcomes = static_cast<double>(vocab_.size() - 1);
  return (static_cast<double>(c) + lambda_) /
         (static_cast<double>(cc.total) + lambda_ * outcomes);
}

int NGramModel::context_length_used(std::span<const TokenId> history) const {
  int used = 0;
  lookup(history, &used);
  return used;
}

}  // namespace cas
