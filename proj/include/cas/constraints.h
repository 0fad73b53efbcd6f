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

#ifndef CAS_CONSTRAINTS_H_
#define CAS_CONSTRAINTS_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cas/vocabulary.h"

namespace cas {

struct ConstraintPhrase {
  TokenSequence tokens;
  std::string source_text;

  bool operator==(const ConstraintPhrase&) const = default;
};

// Ordered set of phrases that must all appear in the output. Phrases with
// identical token sequences are collapsed; the first occurrence wins and a
// warning is recorded.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  // Tokenizes every text with `vocab`. Throws ConstraintError when a text
  // is empty after tokenization or contains an out-of-vocabulary word.
  static ConstraintSet from_texts(const std::vector<std::string>& texts,
                                  const Vocabulary& vocab);

  // Returns false (and records a warning) for duplicates.
  bool add(ConstraintPhrase phrase);

  const std::vector<ConstraintPhrase>& phrases() const { return phrases_; }
  std::size_t size() const { return phrases_.size(); }
  bool empty() const { return phrases_.empty(); }
  // Sum of phrase lengths in tokens.
  int total_tokens() const { return total_tokens_; }
  std::vector<std::string> texts() const;
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<ConstraintPhrase> phrases_;
  std::vector<std::string> warnings_;
  int total_tokens_ = 0;
};

// Per-text problems found by check_constraint_texts.
struct ConstraintIssue {
  std::size_t index;
  std::string text;
  std::string message;
};

// Reports texts that are empty or not representable in `vocab`.
std::vector<ConstraintIssue> check_constraint_texts(
    const std::vector<std::string>& texts, const Vocabulary& vocab);

// Satisfaction progress of one hypothesis. A small value type; copy freely.
class ConstraintState {
 public:
  // Constraint tokens covered: completed phrase lengths plus the length of
  // the in-progress match.
  int num_met_tokens() const { return completed_tokens_ + partial_len_; }
  bool all_satisfied() const { return remaining_ == 0; }
  bool completed(std::size_t phrase) const {
    return (completed_[phrase / 64] >> (phrase % 64)) & 1U;
  }
  int active_node() const { return active_node_; }
  int partial_len() const { return partial_len_; }
  int completed_tokens() const { return completed_tokens_; }

  bool operator==(const ConstraintState&) const = default;

 private:
  friend class ConstraintTrie;

  std::vector<std::uint64_t> completed_;
  int active_node_ = 0;
  int partial_len_ = 0;
  int completed_tokens_ = 0;
  int remaining_ = 0;
};

// Token trie over a constraint set. Immutable after construction.
//
// Matching tracks a single in-progress phrase. A token that continues the
// active path extends it (extension beats starting a new phrase); any other
// token abandons the partial match and is offered once against the root.
// Paths whose phrases are all completed are not entered again.
class ConstraintTrie {
 public:
  struct Node {
    std::vector<std::pair<TokenId, int>> children;  // sorted by token
    int phrase = -1;                                // terminal phrase index
    int depth = 0;
    std::vector<int> subtree_phrases;  // terminals at or below this node
  };

  // Throws ConstraintError if a phrase holds UNK, BOS, EOS or an id outside
  // `vocab`.
  ConstraintTrie(const ConstraintSet& constraints, const Vocabulary& vocab);

  ConstraintState initial_state() const;
  ConstraintState advance(const ConstraintState& state, TokenId token) const;

  // Tokens that would move the state forward: continuations of the active
  // match and first tokens of unmet phrases. Sorted, unique.
  std::vector<TokenId> advancing_tokens(const ConstraintState& state) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  int child(int node, TokenId token) const;
  std::size_t num_phrases() const { return phrase_lengths_.size(); }
  int total_tokens() const { return total_tokens_; }

 private:
  bool has_unmet(int node, const ConstraintState& state) const;
  void enter(ConstraintState& state, int node) const;

  std::vector<Node> nodes_;
  std::vector<int> phrase_lengths_;
  int total_tokens_ = 0;
};

// True iff `phrase` occurs contiguously in `seq`. An empty phrase never
// matches.
bool contains_phrase(std::span<const TokenId> seq,
                     std::span<const TokenId> phrase);

// True iff every phrase of `constraints` occurs in `seq`.
bool contains_all(std::span<const TokenId> seq,
                  const ConstraintSet& constraints);

}  // namespace cas

#endif  // CAS_CONSTRAINTS_H_
