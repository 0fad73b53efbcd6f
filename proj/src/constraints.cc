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

#include "cas/constraints.h"

#include <algorithm>

#include "cas/errors.h"

namespace cas {

ConstraintSet ConstraintSet::from_texts(const std::vector<std::string>& texts,
                                        const Vocabulary& vocab) {
  ConstraintSet set;
  for (const auto& text : texts) {
    ConstraintPhrase phrase{tokenize(text, vocab), text};
    if (phrase.tokens.empty()) {
      throw ConstraintError("constraint '" + text + "' has no tokens", text);
    }
    for (std::size_t i = 0; i < phrase.tokens.size(); ++i) {
      if (phrase.tokens[i] == Vocabulary::kUnk) {
        throw ConstraintError("constraint '" + text + "' contains '" +
                                  normalize_words(text)[i] +
                                  "', which the model cannot generate",
                              text);
      }
    }
    set.add(std::move(phrase));
  }
  return set;
}

bool ConstraintSet::add(ConstraintPhrase phrase) {
  for (const auto& p : phrases_) {
    if (p.tokens == phrase.tokens) {
      warnings_.push_back("duplicate constraint '" + phrase.source_text +
                          "' ignored");
      return false;
    }
  }
  total_tokens_ += static_cast<int>(phrase.tokens.size());
  phrases_.push_back(std::move(phrase));
  return true;
}

std::vector<std::string> ConstraintSet::texts() const {
  std::vector<std::string> out;
  out.reserve(phrases_.size());
  for (const auto& p : phrases_) out.push_back(p.source_text);
  return out;
}

std::vector<ConstraintIssue> check_constraint_texts(
    const std::vector<std::string>& texts, const Vocabulary& vocab) {
  std::vector<ConstraintIssue> issues;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto words = normalize_words(texts[i]);
    if (words.empty()) {
      issues.push_back({i, texts[i], "constraint has no tokens"});
      continue;
    }
    std::vector<std::string> unknown;
    for (const auto& w : words) {
      if (!vocab.contains(w) || vocab.id(w) <= Vocabulary::kUnk) {
        unknown.push_back(w);
      }
    }
    if (!unknown.empty()) {
      std::string msg = "not in model vocabulary:";
      for (const auto& w : unknown) msg += " '" + w + "'";
      issues.push_back({i, texts[i], msg});
    }
  }
  return issues;
}

ConstraintTrie::ConstraintTrie(const ConstraintSet& constraints,
                               const Vocabulary& vocab) {
  nodes_.emplace_back();
  for (std::size_t p = 0; p < constraints.size(); ++p) {
    const auto& phrase = constraints.phrases()[p];
    if (phrase.tokens.empty()) {
      throw ConstraintError("empty constraint phrase", phrase.source_text);
    }
    for (TokenId t : phrase.tokens) {
      if (!vocab.valid(t) || Vocabulary::is_special(t)) {
        throw ConstraintError(
            "constraint '" + phrase.source_text + "' is not representable",
            phrase.source_text);
      }
    }
    int node = 0;
    nodes_[0].subtree_phrases.push_back(static_cast<int>(p));
    for (TokenId t : phrase.tokens) {
      int next = child(node, t);
      if (next < 0) {
        next = static_cast<int>(nodes_.size());
        Node fresh;
        fresh.depth = nodes_[static_cast<std::size_t>(node)].depth + 1;
        nodes_.push_back(std::move(fresh));
        auto& kids = nodes_[static_cast<std::size_t>(node)].children;
        kids.insert(std::lower_bound(kids.begin(), kids.end(),
                                     std::make_pair(t, 0)),
                    {t, next});
      }
      node = next;
      nodes_[static_cast<std::size_t>(node)].subtree_phrases.push_back(
          static_cast<int>(p));
    }
    nodes_[static_cast<std::size_t>(node)].phrase = static_cast<int>(p);
    phrase_lengths_.push_back(static_cast<int>(phrase.tokens.size()));
    total_tokens_ += static_cast<int>(phrase.tokens.size());
  }
}

int ConstraintTrie::child(int node, TokenId token) const {
  const auto& kids = nodes_[static_cast<std::size_t>(node)].children;
  auto it = std::lower_bound(
      kids.begin(), kids.end(), token,
      [](const std::pair<TokenId, int>& e, TokenId t) { return e.first < t; });
  return (it != kids.end() && it->first == token) ? it->second : -1;
}

ConstraintState ConstraintTrie::initial_state() const {
  ConstraintState s;
  s.completed_.assign((phrase_lengths_.size() + 63) / 64, 0);
  s.remaining_ = static_cast<int>(phrase_lengths_.size());
  return s;
}

bool ConstraintTrie::has_unmet(int node, const ConstraintState& state) const {
  for (int p : nodes_[static_cast<std::size_t>(node)].subtree_phrases) {
    if (!state.completed(static_cast<std::size_t>(p))) return true;
  }
  return false;
}

void ConstraintTrie::enter(ConstraintState& state, int node) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  state.active_node_ = node;
  state.partial_len_ = n.depth;
  if (n.phrase >= 0 && !state.completed(static_cast<std::size_t>(n.phrase))) {
    const auto p = static_cast<std::size_t>(n.phrase);
    state.completed_[p / 64] |= std::uint64_t{1} << (p % 64);
    state.completed_tokens_ += phrase_lengths_[p];
    --state.remaining_;
    if (!has_unmet(node, state)) {
      state.active_node_ = 0;
      state.partial_len_ = 0;
    }
  }
}

ConstraintState ConstraintTrie::advance(const ConstraintState& state,
                                        TokenId token) const {
  ConstraintState next = state;
  if (phrase_lengths_.empty()) return next;
  if (next.active_node_ != 0) {
    const int c = child(next.active_node_, token);
    if (c >= 0 && has_unmet(c, next)) {
      enter(next, c);
      return next;
    }
    next.active_node_ = 0;
    next.partial_len_ = 0;
  }
  const int c = child(0, token);
  if (c >= 0 && has_unmet(c, next)) enter(next, c);
  return next;
}

std::vector<TokenId> ConstraintTrie::advancing_tokens(
    const ConstraintState& state) const {
  std::vector<TokenId> out;
  if (state.all_satisfied()) return out;
  auto collect = [&](int node) {
    for (const auto& [tok, c] : nodes_[static_cast<std::size_t>(node)].children) {
      if (has_unmet(c, state)) out.push_back(tok);
    }
  };
  if (state.active_node_ != 0) collect(state.active_node_);
  collect(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool contains_phrase(std::span<const TokenId> seq,
                     std::span<const TokenId> phrase) {
  if (phrase.empty() || phrase.size() > seq.size()) return false;
  return std::search(seq.begin(), seq.end(), phrase.begin(), phrase.end()) !=
         seq.end();
}

bool contains_all(std::span<const TokenId> seq,
                  const ConstraintSet& constraints) {
  for (const auto& p : constraints.phrases()) {
    if (!contains_phrase(seq, p.tokens)) return false;
  }
  return true;
}

}  // namespace cas
