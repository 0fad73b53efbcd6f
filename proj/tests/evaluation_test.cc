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

#include <algorithm>
#include <map>
#include <random>

#include "cas/errors.h"
#include "cas/rouge.h"
#include "cas/significance.h"
#include "test_support.h"

namespace cas {
namespace {

class RougeTest : public ::testing::Test {
 protected:
  Vocabulary v{{"the", "cat", "sat", "ate", "dog", "on", "mat"}};
  TokenSequence t(const std::string& s) { return tokenize(s, v); }
};

TEST_F(RougeTest, IdenticalSequences) {
  const auto s = t("the cat sat on the mat");
  for (int n : {1, 2, 3}) EXPECT_EQ(rouge_n(s, s, n).f1, 1.0);
  EXPECT_EQ(rouge_l(s, s).f1, 1.0);
}

TEST_F(RougeTest, UnigramHandCount) {
  const auto r = rouge_n(t("the cat sat"), t("the cat ate"), 1);
  EXPECT_DOUBLE_EQ(r.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.f1, 2.0 / 3.0);
}

TEST_F(RougeTest, BigramHandCount) {
  EXPECT_DOUBLE_EQ(rouge_n(t("the cat sat"), t("the cat ate"), 2).f1, 0.5);
}

TEST_F(RougeTest, ClippedCounts) {
  // "the" appears three times in the candidate but once in the reference.
  const auto r = rouge_n(t("the the the"), t("the cat"), 1);
  EXPECT_DOUBLE_EQ(r.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
}

TEST_F(RougeTest, ShortReferenceScoresZero) {
  EXPECT_EQ(rouge_n(t("the cat"), t("cat"), 2), RougeScore{});
  EXPECT_EQ(rouge_n(t(""), t("cat"), 1), RougeScore{});
}

TEST_F(RougeTest, LcsHandCount) {
  EXPECT_DOUBLE_EQ(rouge_l(t("the cat sat"), t("the cat ate")).f1, 2.0 / 3.0);
  EXPECT_EQ(rouge_l(t("dog mat"), t("the cat")).f1, 0.0);
  const auto half = rouge_l(t("the sat mat"), t("the cat sat on dog mat"));
  EXPECT_DOUBLE_EQ(half.precision, 1.0);
  EXPECT_DOUBLE_EQ(half.recall, 0.5);
  EXPECT_DOUBLE_EQ(half.f1, 2.0 / 3.0);
}

TEST_F(RougeTest, EosIgnored) {
  auto a = t("the cat");
  a.push_back(Vocabulary::kEos);
  EXPECT_EQ(rouge_all(a, t("the cat")), rouge_all(t("the cat"), t("the cat")));
}

TEST_F(RougeTest, CorpusMeans) {
  const auto s = t("the cat");
  const auto one = corpus_rouge({{s, s}});
  EXPECT_EQ(one, (CorpusRouge{100.0, 100.0, 100.0}));
  const auto two = corpus_rouge({{s, s}, {t("dog"), s}});
  EXPECT_DOUBLE_EQ(two.r1, 50.0);
  EXPECT_DOUBLE_EQ(two.rl, 50.0);
  EXPECT_THROW(corpus_rouge(std::vector<RougeTriple>{}), Error);
}

// Independent implementations used as oracles.
double oracle_ngram_overlap(const TokenSequence& a, const TokenSequence& b,
                            int n, double* pa, double* pb) {
  auto grams = [n](const TokenSequence& s) {
    std::map<TokenSequence, int> m;
    for (int i = 0; i + n <= static_cast<int>(s.size()); ++i) {
      ++m[TokenSequence(s.begin() + i, s.begin() + i + n)];
    }
    return m;
  };
  const auto ga = grams(a), gb = grams(b);
  double overlap = 0;
  for (const auto& [g, c] : ga) {
    auto it = gb.find(g);
    if (it != gb.end()) overlap += std::min(c, it->second);
  }
  *pa = std::max(0, static_cast<int>(a.size()) - n + 1);
  *pb = std::max(0, static_cast<int>(b.size()) - n + 1);
  return overlap;
}

int oracle_lcs(const TokenSequence& a, const TokenSequence& b, std::size_t i,
               std::size_t j, std::map<std::pair<std::size_t, std::size_t>, int>& memo) {
  if (i == a.size() || j == b.size()) return 0;
  auto key = std::make_pair(i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = a[i] == b[j] ? 1 + oracle_lcs(a, b, i + 1, j + 1, memo)
                             : std::max(oracle_lcs(a, b, i + 1, j, memo),
                                        oracle_lcs(a, b, i, j + 1, memo));
  return memo[key] = r;
}

double f1_of(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0; }

TEST(RougeProperty, MatchesOracleBoundedAndSymmetric) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<TokenId> tok(3, 8);
  std::uniform_int_distribution<int> len(0, 14);
  auto gen = [&] {
    TokenSequence s(static_cast<std::size_t>(len(rng)));
    for (auto& x : s) x = tok(rng);
    return s;
  };
  for (int trial = 0; trial < 3000; ++trial) {
    const auto a = gen(), b = gen();
    for (int n : {1, 2}) {
      double na, nb;
      const double ov = oracle_ngram_overlap(a, b, n, &na, &nb);
      const auto r = rouge_n(a, b, n);
      const double p = na > 0 ? ov / na : 0, rc = nb > 0 ? ov / nb : 0;
      ASSERT_NEAR(r.precision, p, 1e-12);
      ASSERT_NEAR(r.recall, rc, 1e-12);
      ASSERT_NEAR(r.f1, f1_of(p, rc), 1e-12);
      ASSERT_GE(r.f1, 0.0);
      ASSERT_LE(r.f1, 1.0);
      const auto s = rouge_n(b, a, n);
      ASSERT_EQ(s.precision, r.recall);
      ASSERT_EQ(s.recall, r.precision);
      ASSERT_NEAR(s.f1, r.f1, 1e-15);
    }
    std::map<std::pair<std::size_t, std::size_t>, int> memo;
    const double lcs = oracle_lcs(a, b, 0, 0, memo);
    const auto l = rouge_l(a, b);
    const double p = a.empty() ? 0 : lcs / a.size();
    const double rc = b.empty() ? 0 : lcs / b.size();
    ASSERT_NEAR(l.precision, p, 1e-12);
    ASSERT_NEAR(l.recall, rc, 1e-12);
    ASSERT_NEAR(rouge_l(b, a).f1, l.f1, 1e-15);
  }
}

TEST(RougeProperty, CorpusPermutationInvariant) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<RougeTriple> rows(40);
  for (auto& r : rows) {
    r.r1 = make_rouge_score(u(rng), u(rng));
    r.r2 = make_rouge_score(u(rng), u(rng));
    r.rl = make_rouge_score(u(rng), u(rng));
  }
  const auto base = corpus_rouge(rows);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto c = corpus_rouge(rows);
    EXPECT_NEAR(c.r1, base.r1, 1e-9);
    EXPECT_NEAR(c.r2, base.r2, 1e-9);
    EXPECT_NEAR(c.rl, base.rl, 1e-9);
  }
}

// ---------------------------------------------------------------------------
// Significance
// ---------------------------------------------------------------------------

std::vector<double> random_scores(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 50);
  std::vector<double> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

TEST(SignificanceTest, IdenticalScoresGiveOne) {
  const auto a = random_scores(1, 100);
  EXPECT_EQ(approx_randomization(a, a, 1000, 3).p_value, 1.0);
  EXPECT_EQ(paired_bootstrap(a, a, 1000, 3).p_value, 1.0);
}

TEST(SignificanceTest, UniformShiftIsSignificant) {
  const auto b = random_scores(2, 1000);
  auto a = b;
  for (auto& x : a) x += 10;
  const auto boot = paired_bootstrap(a, b, 1000, 5);
  EXPECT_LT(boot.p_value, 0.01);
  EXPECT_EQ(boot.n_resamples, 1000);
  EXPECT_EQ(boot.seed, 5u);
  EXPECT_LT(approx_randomization(a, b, 1000, 5).p_value, 0.01);
  // The reverse direction is never better.
  EXPECT_GT(paired_bootstrap(b, a, 1000, 5).p_value, 0.99);
}

TEST(SignificanceTest, SeedStable) {
  const auto a = random_scores(3, 60), b = random_scores(4, 60);
  EXPECT_EQ(paired_bootstrap(a, b, 500, 9).p_value,
            paired_bootstrap(a, b, 500, 9).p_value);
  EXPECT_EQ(approx_randomization(a, b, 500, 9).p_value,
            approx_randomization(a, b, 500, 9).p_value);
}

TEST(SignificanceTest, NoiseIsNotSignificant) {
  const auto a = random_scores(5, 200), b = random_scores(6, 200);
  const double p = approx_randomization(a, b, 2000, 1).p_value;
  EXPECT_GT(p, 0.01);
  EXPECT_LE(p, 1.0);
}

TEST(SignificanceTest, BadInputsThrow) {
  const std::vector<double> a = {1, 2, 3}, b = {1, 2}, one = {1};
  EXPECT_THROW(paired_bootstrap(a, b, 10, 0), Error);
  EXPECT_THROW(approx_randomization(a, b, 10, 0), Error);
  EXPECT_THROW(paired_bootstrap(one, one, 10, 0), Error);
  EXPECT_THROW(paired_bootstrap(a, a, 0, 0), Error);
  EXPECT_EQ(significance_method_name(SignificanceMethod::kBootstrap),
            "bootstrap");
}

}  // namespace
}  // namespace cas
