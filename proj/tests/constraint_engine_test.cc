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

#include <gtest/gtest.h>

#include <random>

#include "cas/constraints.h"
#include "cas/errors.h"
#include "test_support.h"

namespace cas {
namespace {

class ConstraintEngineTest : public ::testing::Test {
 protected:
  ConstraintEngineTest()
      : vocab_({"a", "b", "c", "the", "voice", "uk", "itv"}) {}

  TokenId id(const std::string& w) const { return vocab_.id(w); }
  ConstraintSet set(const std::vector<std::string>& texts) const {
    return ConstraintSet::from_texts(texts, vocab_);
  }

  // met_tokens after each token of `words`.
  std::vector<int> trajectory(const ConstraintTrie& trie,
                              const std::vector<std::string>& words) const {
    std::vector<int> out;
    auto st = trie.initial_state();
    for (const auto& w : words) {
      st = trie.advance(st, id(w));
      out.push_back(st.num_met_tokens());
    }
    return out;
  }

  Vocabulary vocab_;
};

// ---------------------------------------------------------------------------
// ConstraintSet
// ---------------------------------------------------------------------------

TEST_F(ConstraintEngineTest, TotalTokensSumsPhraseLengths) {
  const auto cs = set({"the voice uk", "itv"});
  EXPECT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs.total_tokens(), 4);
  EXPECT_EQ(cs.texts(), (std::vector<std::string>{"the voice uk", "itv"}));
}

TEST_F(ConstraintEngineTest, DuplicatesCollapseWithWarning) {
  const auto cs = set({"itv", "ITV", "a b"});
  EXPECT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs.total_tokens(), 3);
  ASSERT_EQ(cs.warnings().size(), 1u);
}

TEST_F(ConstraintEngineTest, UnrepresentablePhrasesAreRejected) {
  EXPECT_THROW(set({"zebra"}), ConstraintError);
  EXPECT_THROW(set({"  "}), ConstraintError);
  try {
    set({"a", "the zebra"});
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(e.phrase(), "the zebra");
  }
  const auto issues = check_constraint_texts({"a", "", "the zebra"}, vocab_);
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].index, 1u);
  EXPECT_EQ(issues[1].index, 2u);
}

// ---------------------------------------------------------------------------
// Trie construction
// ---------------------------------------------------------------------------

TEST_F(ConstraintEngineTest, EmptySetHasRootOnly) {
  ConstraintTrie trie(ConstraintSet{}, vocab_);
  EXPECT_EQ(trie.nodes().size(), 1u);
  const auto st = trie.initial_state();
  EXPECT_TRUE(st.all_satisfied());
  EXPECT_EQ(st.num_met_tokens(), 0);
  EXPECT_EQ(trie.advance(st, id("a")), st);
}

TEST_F(ConstraintEngineTest, SingleTokenPhrase) {
  ConstraintTrie trie(set({"itv"}), vocab_);
  ASSERT_EQ(trie.nodes().size(), 2u);
  const int n = trie.child(0, id("itv"));
  ASSERT_GT(n, 0);
  EXPECT_EQ(trie.nodes()[n].phrase, 0);
  EXPECT_EQ(trie.nodes()[n].depth, 1);
}

TEST_F(ConstraintEngineTest, TwoBranches) {
  ConstraintTrie trie(set({"the voice uk", "itv"}), vocab_);
  EXPECT_EQ(trie.nodes().size(), 5u);
  int n = 0;
  for (const char* w : {"the", "voice", "uk"}) {
    n = trie.child(n, id(w));
    ASSERT_GT(n, 0) << w;
  }
  EXPECT_EQ(trie.nodes()[n].phrase, 0);
  EXPECT_EQ(trie.nodes()[n].depth, 3);
  const int itv = trie.child(0, id("itv"));
  EXPECT_EQ(trie.nodes()[itv].phrase, 1);
  EXPECT_EQ(trie.nodes()[itv].depth, 1);
}

TEST_F(ConstraintEngineTest, RejectsSpecialTokens) {
  ConstraintSet cs;
  cs.add({{Vocabulary::kEos}, "</s>"});
  EXPECT_THROW(ConstraintTrie(cs, vocab_), ConstraintError);
  ConstraintSet unk;
  unk.add({{id("a"), Vocabulary::kUnk}, "a ?"});
  EXPECT_THROW(ConstraintTrie(unk, vocab_), ConstraintError);
}

// ---------------------------------------------------------------------------
// advance
// ---------------------------------------------------------------------------

TEST_F(ConstraintEngineTest, ProgressThroughPhrase) {
  ConstraintTrie trie(set({"b c"}), vocab_);
  EXPECT_EQ(trajectory(trie, {"a", "b", "c"}), (std::vector<int>{0, 1, 2}));
  auto st = trie.initial_state();
  for (const char* w : {"a", "b", "c"}) st = trie.advance(st, id(w));
  EXPECT_TRUE(st.all_satisfied());
  EXPECT_TRUE(st.completed(0));
  EXPECT_EQ(st.active_node(), 0);
}

TEST_F(ConstraintEngineTest, AbandonmentResetsPartialMatch) {
  ConstraintTrie trie(set({"b c"}), vocab_);
  EXPECT_EQ(trajectory(trie, {"b", "a"}), (std::vector<int>{1, 0}));
}

TEST_F(ConstraintEngineTest, AbandoningTokenIsReofferedAtRoot) {
  ConstraintTrie trie(set({"b c", "a"}), vocab_);
  // "a" breaks the "b c" match and completes the phrase "a".
  EXPECT_EQ(trajectory(trie, {"b", "a"}), (std::vector<int>{1, 1}));
  ConstraintTrie t2(set({"b c", "a b"}), vocab_);
  // "a" abandons "b" and starts "a b".
  EXPECT_EQ(trajectory(t2, {"b", "a", "b"}), (std::vector<int>{1, 1, 2}));
}

TEST_F(ConstraintEngineTest, ExtensionBeatsStartingNewPhrase) {
  ConstraintTrie trie(set({"a b", "b"}), vocab_);
  auto st = trie.advance(trie.initial_state(), id("a"));
  st = trie.advance(st, id("b"));
  EXPECT_TRUE(st.completed(0));
  EXPECT_FALSE(st.completed(1));
  EXPECT_EQ(st.num_met_tokens(), 2);
}

TEST_F(ConstraintEngineTest, PrefixPhrasesShareOnePath) {
  ConstraintTrie trie(set({"a", "a b"}), vocab_);
  EXPECT_EQ(trie.nodes().size(), 3u);
  auto st = trie.advance(trie.initial_state(), id("a"));
  EXPECT_TRUE(st.completed(0));
  EXPECT_EQ(st.num_met_tokens(), 2);  // "a" done, one token into "a b"
  st = trie.advance(st, id("b"));
  EXPECT_TRUE(st.all_satisfied());
  EXPECT_EQ(st.num_met_tokens(), 3);
}

TEST_F(ConstraintEngineTest, CompletedPathsAreNotReentered) {
  ConstraintTrie trie(set({"a", "c"}), vocab_);
  auto st = trie.advance(trie.initial_state(), id("a"));
  const auto again = trie.advance(st, id("a"));
  EXPECT_EQ(again.num_met_tokens(), 1);
  EXPECT_EQ(trie.advancing_tokens(again), (std::vector<TokenId>{id("c")}));
}

TEST_F(ConstraintEngineTest, MetTokenCounts) {
  ConstraintTrie trie(set({"the voice uk", "a b"}), vocab_);
  auto st = trie.initial_state();
  EXPECT_EQ(st.num_met_tokens(), 0);
  EXPECT_FALSE(st.all_satisfied());
  for (const char* w : {"the", "voice", "uk", "a"}) st = trie.advance(st, id(w));
  EXPECT_EQ(st.num_met_tokens(), 4);
  EXPECT_FALSE(st.all_satisfied());
  st = trie.advance(st, id("b"));
  EXPECT_EQ(st.num_met_tokens(), 5);
  EXPECT_TRUE(st.all_satisfied());
}

TEST_F(ConstraintEngineTest, AdvancingTokens) {
  ConstraintTrie trie(set({"the voice uk", "itv", "a"}), vocab_);
  auto st = trie.initial_state();
  EXPECT_EQ(trie.advancing_tokens(st),
            (std::vector<TokenId>{id("a"), id("the"), id("itv")}));
  st = trie.advance(st, id("the"));
  // "the" restarts the same phrase, which still counts as progress.
  EXPECT_EQ(trie.advancing_tokens(st),
            (std::vector<TokenId>{id("a"), id("the"), id("voice"),
                                  id("itv")}));
}

// ---------------------------------------------------------------------------
// contains_phrase
// ---------------------------------------------------------------------------

TEST(ContainsPhraseTest, Examples) {
  const TokenSequence abc = {3, 4, 5};
  EXPECT_TRUE(contains_phrase(abc, TokenSequence{4, 5}));
  EXPECT_FALSE(contains_phrase(TokenSequence{4, 3, 5}, TokenSequence{4, 5}));
  EXPECT_FALSE(contains_phrase(TokenSequence{}, TokenSequence{3}));
  EXPECT_FALSE(contains_phrase(abc, TokenSequence{}));
  EXPECT_TRUE(contains_phrase(abc, abc));
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(ConstraintStateProperty, RandomSequences) {
  std::mt19937_64 rng(77);
  Vocabulary vocab(testing::letters(4));
  std::uniform_int_distribution<TokenId> tok(3, 6);
  std::uniform_int_distribution<int> nphr(1, 3), plen(1, 3), slen(0, 12);
  for (int trial = 0; trial < 10000; ++trial) {
    ConstraintSet cs;
    const int n = nphr(rng);
    for (int i = 0; i < n; ++i) {
      TokenSequence p(static_cast<std::size_t>(plen(rng)));
      for (auto& t : p) t = tok(rng);
      cs.add({p, detokenize(p, vocab)});
    }
    ConstraintTrie trie(cs, vocab);
    TokenSequence seq(static_cast<std::size_t>(slen(rng)));
    for (auto& t : seq) t = tok(rng);

    auto st = trie.initial_state();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto next = trie.advance(st, seq[i]);
      ASSERT_EQ(next, trie.advance(st, seq[i]));  // pure
      int completed_total = 0;
      for (std::size_t p = 0; p < cs.size(); ++p) {
        if (st.completed(p)) {
          ASSERT_TRUE(next.completed(p));  // monotone
        }
        if (next.completed(p)) {
          completed_total += static_cast<int>(cs.phrases()[p].tokens.size());
        }
      }
      ASSERT_GE(next.num_met_tokens(), 0);
      ASSERT_LE(next.num_met_tokens(), cs.total_tokens());
      ASSERT_GE(next.num_met_tokens(), completed_total);
      ASSERT_EQ(next.partial_len(),
                trie.nodes()[next.active_node()].depth);
      st = next;
      if (st.all_satisfied()) {
        const TokenSequence prefix(seq.begin(),
                                   seq.begin() + static_cast<long>(i) + 1);
        for (const auto& p : cs.phrases()) {
          ASSERT_TRUE(testing::naive_contains(prefix, p.tokens))
              << "trial " << trial;
        }
      }
    }
  }
}

}  // namespace
}  // namespace cas
