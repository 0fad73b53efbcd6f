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

#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include "cas/decoder.h"
#include "cas/errors.h"
#include "test_support.h"

namespace cas {
namespace {

using testing::brute_force_decode;
using testing::naive_contains;

double sequence_logprob(const ScoringModel& m, const TokenSequence& seq) {
  double lp = 0.0;
  TokenSequence prefix;
  for (TokenId t : seq) {
    lp += m.next_logprobs(prefix)[static_cast<std::size_t>(t)];
    prefix.push_back(t);
  }
  return lp;
}

// Greedy decoding written out directly: best admissible token (lowest id on
// ties), EOS forced after max_length tokens.
TokenSequence greedy(const ScoringModel& m, int max_length) {
  TokenSequence out;
  while (true) {
    if (static_cast<int>(out.size()) == max_length) {
      out.push_back(Vocabulary::kEos);
      return out;
    }
    const auto lp = m.next_logprobs(out);
    TokenId best = -1;
    for (TokenId t = 1; t < static_cast<TokenId>(lp.size()); ++t) {
      if (t == Vocabulary::kUnk) continue;
      if (best < 0 || lp[t] > lp[best]) best = t;
    }
    out.push_back(best);
    if (best == Vocabulary::kEos) return out;
  }
}

ConstraintSet phrases_of(const std::vector<TokenSequence>& ps,
                         const Vocabulary& v) {
  ConstraintSet cs;
  for (const auto& p : ps) cs.add({p, detokenize(p, v)});
  return cs;
}

// ---------------------------------------------------------------------------
// length_normalized_score
// ---------------------------------------------------------------------------

TEST(LengthNormalizationTest, Examples) {
  EXPECT_EQ(length_normalized_score(-3.7, 9, 0.0), -3.7);
  EXPECT_DOUBLE_EQ(length_normalized_score(-6.0, 1, 1.0), -6.0);
  EXPECT_DOUBLE_EQ(length_normalized_score(-6.0, 7, 1.0), -3.0);
  EXPECT_DOUBLE_EQ(length_normalized_score(-8.0, 19, 0.5), -4.0);
}

// ---------------------------------------------------------------------------
// allocate_banks
// ---------------------------------------------------------------------------

TEST(AllocateBanksTest, EvenSplit) {
  const std::vector<int> counts = {5, 5};
  EXPECT_EQ(allocate_banks(counts, 4).slots, (std::vector<int>{2, 2}));
}

TEST(AllocateBanksTest, RemainderGoesToHighBanks) {
  const std::vector<int> counts = {9, 9, 9};
  EXPECT_EQ(allocate_banks(counts, 5).slots, (std::vector<int>{1, 2, 2}));
}

TEST(AllocateBanksTest, EmptyBankSlotsFlowToNearestSurplus) {
  // Start [1, 2, 2]. Bank 0 is empty, so its slot goes to bank 1 (distance
  // 1), which has 3 candidates: [0, 3, 2]. Bank 2 holds one candidate, so
  // its extra slot goes to the nearest bank with spare candidates; bank 1 is
  // full, no bank has a surplus, and the slot is dropped: [0, 3, 1].
  const std::vector<int> counts = {0, 3, 1};
  const auto a = allocate_banks(counts, 5);
  EXPECT_EQ(a.slots, (std::vector<int>{0, 3, 1}));
  EXPECT_EQ(a.total(), 4);
}

TEST(AllocateBanksTest, FarSurplusBank) {
  const std::vector<int> counts = {1, 0, 0, 0, 9};
  EXPECT_EQ(allocate_banks(counts, 5).slots,
            (std::vector<int>{1, 0, 0, 0, 4}));
}

TEST(AllocateBanksTest, DistanceTiePrefersHigherBank) {
  // [1, 1, 1]: bank 1 empty; banks 0 and 2 both at distance 1.
  const std::vector<int> counts = {5, 0, 5};
  EXPECT_EQ(allocate_banks(counts, 3).slots, (std::vector<int>{1, 0, 2}));
}

TEST(AllocateBanksProperty, Invariants) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> nb(1, 9), cnt(0, 12), beam(1, 40);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<int> counts(static_cast<std::size_t>(nb(rng)));
    for (auto& c : counts) c = cnt(rng);
    const int b = beam(rng);
    const auto a = allocate_banks(counts, b);
    ASSERT_EQ(a.slots.size(), counts.size());
    const int total = std::accumulate(counts.begin(), counts.end(), 0);
    ASSERT_EQ(a.total(), std::min(b, total));
    for (std::size_t i = 0; i < counts.size(); ++i) {
      ASSERT_GE(a.slots[i], 0);
      ASSERT_LE(a.slots[i], counts[i]);
    }
  }
}

// ---------------------------------------------------------------------------
// beam_search
// ---------------------------------------------------------------------------

TEST(BeamSearchTest, PointMassChain) {
  TableModel m({{"", {{"a", 1.0}}},
                {"a", {{"b", 1.0}}},
                {"a b", {{"</s>", 1.0}}},
                {"__default__", {{"</s>", 1.0}}}});
  DecodeConfig dc;
  const auto r = beam_search(m, dc);
  EXPECT_EQ(detokenize(r.tokens, m.vocab()), "a b");
  EXPECT_EQ(r.tokens.back(), Vocabulary::kEos);
  EXPECT_EQ(r.raw_logprob, 0.0);
  EXPECT_TRUE(r.satisfied);
  EXPECT_FALSE(r.fallback_used);
}

TEST(BeamSearchTest, ExactTieGoesToLowerTokenId) {
  TableModel m({{"", {{"a", 0.5}, {"b", 0.5}}},
                {"__default__", {{"</s>", 1.0}}}});
  for (int beam : {1, 2, 5}) {
    DecodeConfig dc;
    dc.beam_size = beam;
    EXPECT_EQ(detokenize(beam_search(m, dc).tokens, m.vocab()), "a");
  }
}

TEST(BeamSearchTest, TieBetweenLengthsPrefersShorter) {
  TableModel m({{"", {{"</s>", 0.5}, {"a", 0.5}}},
                {"a", {{"</s>", 1.0}}},
                {"__default__", {{"</s>", 1.0}}}});
  DecodeConfig dc;
  dc.length_penalty_alpha = 0.0;
  const auto r = beam_search(m, dc);
  // [EOS] vs [a, EOS] both score ln 0.5; EOS has the lower id.
  EXPECT_EQ(r.tokens, TokenSequence{Vocabulary::kEos});
}

TEST(BeamSearchTest, BeamOneIsGreedy) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = trial % 2 ? testing::sparse_table_model(rng, 5)
                             : testing::random_table_model(rng, 3, 4);
    DecodeConfig dc;
    dc.beam_size = 1;
    dc.max_length = 6;
    EXPECT_EQ(beam_search(*m, dc).tokens, greedy(*m, 6)) << trial;
  }
}

TEST(BeamSearchTest, EosForcedAtMaxLength) {
  // EOS has zero probability everywhere except the floor.
  TableModel m({{"__default__", {{"a", 0.6}, {"b", 0.4}}}});
  DecodeConfig dc;
  dc.max_length = 4;
  const auto r = beam_search(m, dc);
  ASSERT_EQ(r.tokens.size(), 5u);
  EXPECT_EQ(detokenize(r.tokens, m.vocab()), "a a a a");
  EXPECT_EQ(r.tokens.back(), Vocabulary::kEos);
  EXPECT_LT(r.raw_logprob, -1e8);
}

TEST(BeamSearchTest, MatchesExhaustiveSearchWithWideBeam) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_table_model(rng, 3, 4);
    DecodeConfig dc;
    dc.beam_size = 512;
    dc.max_length = 4;
    const auto r = beam_search(*m, dc);
    const auto o = brute_force_decode(*m, {}, 4, 1.0);
    EXPECT_EQ(r.tokens, o.tokens);
    EXPECT_EQ(r.normalized_score, o.normalized);
  }
}

TEST(BeamSearchTest, InvalidConfigThrows) {
  TableModel m({{"__default__", {{"</s>", 1.0}}}});
  DecodeConfig dc;
  dc.beam_size = 0;
  EXPECT_THROW(beam_search(m, dc), ConfigError);
  dc.beam_size = 1;
  dc.max_length = 0;
  EXPECT_THROW(beam_search(m, dc), ConfigError);
}

// ---------------------------------------------------------------------------
// dba_decode
// ---------------------------------------------------------------------------

TEST(DbaDecodeTest, EmptyConstraintsMatchBeamSearch) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = testing::sparse_table_model(rng, 6);
    DecodeConfig dc;
    dc.beam_size = 1 + trial % 7;
    dc.max_length = 8;
    const auto a = beam_search(*m, dc);
    const auto b = dba_decode(*m, ConstraintSet{}, dc);
    EXPECT_EQ(a.tokens, b.tokens);
    EXPECT_EQ(std::memcmp(&a.raw_logprob, &b.raw_logprob, sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(&a.normalized_score, &b.normalized_score,
                          sizeof(double)),
              0);
    EXPECT_EQ(a.steps, b.steps);
  }
}

TEST(DbaDecodeTest, SingleTokenConstraintMatchesOracle) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_table_model(rng, 3, 4);
    const TokenId c = m->vocab().id("c");
    DecodeConfig dc;
    dc.beam_size = 512;
    dc.max_length = 4;
    const auto r = dba_decode(*m, phrases_of({{c}}, m->vocab()), dc);
    const auto o = brute_force_decode(*m, {{c}}, 4, 1.0);
    ASSERT_TRUE(o.found);
    EXPECT_EQ(r.tokens, o.tokens);
    EXPECT_EQ(r.normalized_score, o.normalized);
    EXPECT_TRUE(r.satisfied);
    EXPECT_FALSE(r.fallback_used);
  }
}

TEST(DbaDecodeTest, ConstraintForcedAgainstModelPreference) {
  TableModel m({{"", {{"a", 0.9}, {"b", 0.1}}},
                {"__default__", {{"</s>", 0.9}, {"a", 0.05}, {"b", 0.05}}}});
  DecodeConfig dc;
  EXPECT_EQ(detokenize(beam_search(m, dc).tokens, m.vocab()), "a");
  const auto r = dba_decode(m, ConstraintSet::from_texts({"b"}, m.vocab()), dc);
  EXPECT_EQ(detokenize(r.tokens, m.vocab()), "b");
  EXPECT_TRUE(r.satisfied);
}

TEST(DbaDecodeTest, UnreachableConstraintUsesFallback) {
  TableModel m({{"__default__", {{"a", 0.3}, {"b", 0.3}, {"c", 0.1},
                                 {"</s>", 0.3}}}});
  DecodeConfig dc;
  dc.max_length = 2;
  const auto cs = ConstraintSet::from_texts({"c b a"}, m.vocab());
  const auto r = dba_decode(m, cs, dc);
  EXPECT_TRUE(r.fallback_used);
  EXPECT_TRUE(r.satisfied);
  EXPECT_TRUE(naive_contains(r.tokens, cs.phrases()[0].tokens));
  EXPECT_EQ(r.tokens.back(), Vocabulary::kEos);
  EXPECT_DOUBLE_EQ(r.raw_logprob, sequence_logprob(m, r.tokens));
}

TEST(DbaDecodeTest, TraceRecordsBankOccupancy) {
  std::mt19937_64 rng(23);
  const auto m = testing::sparse_table_model(rng, 5);
  DecodeConfig dc;
  dc.beam_size = 6;
  dc.max_length = 8;
  dc.trace = true;
  const auto cs = ConstraintSet::from_texts({"a b", "e"}, m->vocab());
  const auto r = dba_decode(*m, cs, dc);
  ASSERT_FALSE(r.bank_trace.empty());
  for (const auto& step : r.bank_trace) {
    ASSERT_EQ(step.size(), 4u);  // banks 0..C_total
    EXPECT_LE(std::accumulate(step.begin(), step.end(), 0), 6);
  }
  dc.trace = false;
  EXPECT_TRUE(dba_decode(*m, cs, dc).bank_trace.empty());
}

TEST(DbaDecodeTest, RejectsUnrepresentableConstraint) {
  TableModel m({{"__default__", {{"a", 1.0}}}});
  ConstraintSet cs;
  cs.add({{Vocabulary::kUnk}, "?"});
  EXPECT_THROW(dba_decode(m, cs, DecodeConfig{}), ConstraintError);
}

TEST(DbaDecodeProperty, ResultsContainEveryPhrase) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> nphr(1, 3), plen(1, 3);
  for (int trial = 0; trial < 150; ++trial) {
    std::shared_ptr<const ScoringModel> m;
    if (trial % 3) {
      m = testing::sparse_table_model(rng, 6);
    } else {
      m = testing::random_ngram_model(rng, 6, 2);
    }
    std::uniform_int_distribution<TokenId> tok(
        3, static_cast<TokenId>(m->vocab().size()) - 1);
    std::vector<TokenSequence> ps;
    int total = 0;
    for (int i = nphr(rng); i > 0; --i) {
      TokenSequence p(static_cast<std::size_t>(plen(rng)));
      for (auto& t : p) t = tok(rng);
      total += static_cast<int>(p.size());
      ps.push_back(p);
    }
    DecodeConfig dc;
    dc.beam_size = 1 + trial % 12;
    dc.max_length = total + trial % 5;
    const auto cs = phrases_of(ps, m->vocab());
    const auto r = dba_decode(*m, cs, dc);
    ASSERT_TRUE(r.satisfied) << trial;
    for (const auto& p : cs.phrases()) {
      ASSERT_TRUE(naive_contains(r.tokens, p.tokens)) << trial;
    }
    ASSERT_EQ(r.tokens.back(), Vocabulary::kEos);
  }
}

// ---------------------------------------------------------------------------
// append_baseline
// ---------------------------------------------------------------------------

TEST(AppendBaselineTest, Examples) {
  Vocabulary v(testing::letters(5));
  DecodeResult sp;
  sp.tokens = tokenize("a b", v);
  sp.tokens.push_back(Vocabulary::kEos);

  const auto one = append_baseline(sp, ConstraintSet::from_texts({"c"}, v));
  EXPECT_EQ(detokenize(one.tokens, v), "a b c");
  EXPECT_EQ(one.tokens.back(), Vocabulary::kEos);
  EXPECT_TRUE(one.satisfied);
  EXPECT_TRUE(one.fallback_used);

  const auto none = append_baseline(sp, ConstraintSet{});
  EXPECT_EQ(none.tokens, sp.tokens);

  Vocabulary w({"a", "b", "x", "y", "z"});
  DecodeResult sp2;
  sp2.tokens = tokenize("a b", w);
  sp2.tokens.push_back(Vocabulary::kEos);
  const auto two =
      append_baseline(sp2, ConstraintSet::from_texts({"x y", "z"}, w));
  EXPECT_EQ(detokenize(two.tokens, w), "a b x y z");
}

}  // namespace
}  // namespace cas
