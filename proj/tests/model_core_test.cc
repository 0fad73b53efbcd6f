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
#include <random>

#include "cas/copy_model.h"
#include "cas/errors.h"
#include "cas/ngram_model.h"
#include "cas/synthetic.h"
#include "cas/table_model.h"
#include "cas/vocabulary.h"
#include "test_support.h"

namespace cas {
namespace {

using testing::letters;

Vocabulary abc() { return Vocabulary(letters(3)); }

// ---------------------------------------------------------------------------
// Vocabulary and tokenization
// ---------------------------------------------------------------------------

TEST(VocabularyTest, ReservedIdsComeFirst) {
  Vocabulary v;
  EXPECT_EQ(v.size(), 3u);
  EXPECT_EQ(v.text(Vocabulary::kBos), "<s>");
  EXPECT_EQ(v.text(Vocabulary::kEos), "</s>");
  EXPECT_EQ(v.text(Vocabulary::kUnk), "<unk>");
  EXPECT_EQ(v.id("<unk>"), Vocabulary::kUnk);
}

TEST(VocabularyTest, IdsAreDenseAndUnique) {
  Vocabulary v({"the", "cat", "the", "<s>", "mat"});
  ASSERT_EQ(v.size(), 6u);
  EXPECT_EQ(v.id("the"), 3);
  EXPECT_EQ(v.id("cat"), 4);
  EXPECT_EQ(v.id("mat"), 5);
  EXPECT_EQ(v.add("cat"), 4);
  EXPECT_EQ(v.add("dog"), 6);
  EXPECT_EQ(v.id("zebra"), Vocabulary::kUnk);
}

TEST(VocabularyTest, TextOutOfRangeThrows) {
  Vocabulary v;
  EXPECT_THROW(v.text(3), InvalidTokenError);
  EXPECT_THROW(v.text(-1), InvalidTokenError);
}

TEST(TokenizeTest, EmptyInput) {
  EXPECT_TRUE(tokenize("", abc()).empty());
  EXPECT_TRUE(tokenize("   \t ", abc()).empty());
}

TEST(TokenizeTest, LowercasesAndSplitsPunctuation) {
  Vocabulary v({"the", "cat", "."});
  const TokenSequence expected = {v.id("the"), v.id("cat"), v.id(".")};
  EXPECT_EQ(tokenize("The cat.", v), expected);
}

TEST(TokenizeTest, UnknownWordsBecomeUnk) {
  EXPECT_EQ(tokenize("zzz", abc()), TokenSequence{Vocabulary::kUnk});
}

TEST(SplitWordsTest, PretokenizedStylePassesThrough) {
  using W = std::vector<std::string>;
  EXPECT_EQ(split_words("-lrb- bbc -rrb- said"),
            (W{"-lrb-", "bbc", "-rrb-", "said"}));
  EXPECT_EQ(split_words("well-known U.S. firm"),
            (W{"well-known", "U.S", ".", "firm"}));
  EXPECT_EQ(split_words("1,000 people"), (W{"1,000", "people"}));
  EXPECT_EQ(split_words("jones 's car"), (W{"jones", "'s", "car"}));
  EXPECT_EQ(split_words("wait... ok!?"), (W{"wait", "...", "ok", "!", "?"}));
  EXPECT_EQ(split_words("``hi''"), (W{"``", "hi", "''"}));
}

TEST(DetokenizeTest, Examples) {
  Vocabulary v({"the", "cat"});
  EXPECT_EQ(detokenize(TokenSequence{}, v), "");
  EXPECT_EQ(detokenize(TokenSequence{v.id("the"), v.id("cat")}, v), "the cat");
  EXPECT_EQ(detokenize(TokenSequence{Vocabulary::kBos, v.id("the"),
                                     Vocabulary::kEos},
                       v),
            "the");
}

TEST(DetokenizeTest, OutOfRangeThrows) {
  EXPECT_THROW(detokenize(TokenSequence{99}, abc()), InvalidTokenError);
}

TEST(TokenizeTest, RoundTripOnCorpusLines) {
  SyntheticConfig sc;
  sc.num_train = 50;
  sc.num_test = 0;
  const auto corpus = generate_synthetic_corpus(sc);
  std::vector<std::string> lines = {
      "The U.S. economy grew 3.5% in 2019 -lrb- estimate -rrb- .",
      "\"It's fine,\" she said; well-known facts don't lie...",
  };
  for (const auto& r : corpus.train) {
    lines.push_back(r.document.raw);
    lines.push_back(r.reference.raw);
  }
  Vocabulary v;
  for (const auto& l : lines) {
    for (const auto& w : normalize_words(l)) v.add(w);
  }
  for (const auto& l : lines) {
    EXPECT_EQ(detokenize(tokenize(l, v), v), canonical_text(l)) << l;
  }
}

// ---------------------------------------------------------------------------
// TableModel
// ---------------------------------------------------------------------------

TEST(TableModelTest, UniformFallback) {
  TableModel m({{"__default__", {{"a", 0.25}, {"b", 0.25}, {"c", 0.25},
                                 {"</s>", 0.25}}}});
  const auto lp = m.next_logprobs(TokenSequence{});
  ASSERT_EQ(lp.size(), 6u);
  for (TokenId t : {1, 3, 4, 5}) EXPECT_DOUBLE_EQ(lp[t], std::log(0.25));
  EXPECT_EQ(lp[Vocabulary::kBos], kLogProbFloor);
}

TEST(TableModelTest, PointMassRow) {
  TableModel m({{"", {{"a", 1.0}}}, {"__default__", {{"</s>", 1.0}}}});
  const auto lp = m.next_logprobs(TokenSequence{});
  const TokenId a = m.vocab().id("a");
  EXPECT_EQ(lp[a], 0.0);
  for (std::size_t t = 0; t < lp.size(); ++t) {
    if (static_cast<TokenId>(t) != a) {
      EXPECT_EQ(lp[t], kLogProbFloor);
    }
  }
}

TEST(TableModelTest, PrefixLookupAndDefault) {
  const auto m = TableModel::from_json_text(R"({
    "": {"a": 0.7, "b": 0.3},
    "a": {"b": 1.0},
    "__default__": {"</s>": 1.0}})");
  const TokenId a = m.vocab().id("a"), b = m.vocab().id("b");
  EXPECT_DOUBLE_EQ(m.next_logprobs(TokenSequence{a})[b], 0.0);
  EXPECT_DOUBLE_EQ(m.next_logprobs(TokenSequence{b})[Vocabulary::kEos], 0.0);
}

TEST(TableModelTest, RejectsBadRows) {
  EXPECT_THROW(TableModel({{"", {{"a", 1.0}}}}), ModelSpecError);
  EXPECT_THROW(TableModel({{"__default__", {{"a", 0.5}}}}), ModelSpecError);
  EXPECT_THROW(TableModel({{"__default__", {{"a", 1.0 + 1e-6}}}}),
               ModelSpecError);
  EXPECT_THROW(TableModel::from_json_text("[1, 2]"), ModelSpecError);
  EXPECT_THROW(TableModel::from_json_text("{"), ModelSpecError);
}

// ---------------------------------------------------------------------------
// NGramModel
// ---------------------------------------------------------------------------

TEST(NGramModelTest, UnigramHandArithmetic) {
  // Outcomes are a, b, EOS and UNK; BOS is never predicted. The corpus
  // [[a, b]] yields the events a, b, EOS, so P(a) = (1 + 1) / (3 + 4).
  Vocabulary v({"a", "b"});
  const auto m = NGramModel::train({{3, 4}}, v, 1, 1.0);
  EXPECT_NEAR(m.prob(TokenSequence{}, 3), 2.0 / 7.0, 1e-12);
  EXPECT_NEAR(m.prob(TokenSequence{}, Vocabulary::kEos), 2.0 / 7.0, 1e-12);
  EXPECT_NEAR(m.prob(TokenSequence{}, Vocabulary::kUnk), 1.0 / 7.0, 1e-12);
  EXPECT_EQ(m.prob(TokenSequence{}, Vocabulary::kBos), 0.0);
  const auto lp = m.next_logprobs(TokenSequence{});
  EXPECT_NEAR(lp[3], std::log(2.0 / 7.0), 1e-12);
}

TEST(NGramModelTest, LargeLambdaIsNearlyUniform) {
  Vocabulary v(letters(3));
  const auto m =
      NGramModel::train({{3, 4, 5, 3}, {4, 4}, {5}}, v, 2, 1e6);
  for (const TokenSequence& h :
       {TokenSequence{}, TokenSequence{3}, TokenSequence{5, 4}}) {
    for (TokenId t = 1; t < 6; ++t) {
      EXPECT_NEAR(m.prob(h, t), 1.0 / 5.0, 1e-3);
    }
  }
}

TEST(NGramModelTest, UnseenContextBacksOff) {
  Vocabulary v(letters(3));
  const auto m = NGramModel::train({{3, 4}, {4, 3}}, v, 3, 0.5);
  // "c b" never occurs; "b" does, so the bigram context is used.
  const TokenSequence unseen = {5, 4};
  EXPECT_EQ(m.context_length_used(unseen), 1);
  // After b the corpus has EOS once and a once; 5 predictable tokens.
  EXPECT_NEAR(m.prob(unseen, 3), 1.5 / 4.5, 1e-12);
  EXPECT_NEAR(m.prob(unseen, Vocabulary::kEos), 1.5 / 4.5, 1e-12);
  EXPECT_NEAR(m.prob(unseen, 4), 0.5 / 4.5, 1e-12);
  // (BOS, b) was observed, followed only by a.
  EXPECT_EQ(m.context_length_used(TokenSequence{4}), 2);
  EXPECT_NEAR(m.prob(TokenSequence{4}, 3), 1.5 / 3.5, 1e-12);
}

TEST(NGramModelTest, PaddedStartContext) {
  Vocabulary v(letters(2));
  const auto m = NGramModel::train({{3, 4}, {3, 3}}, v, 2, 1.0);
  // Context (BOS): both sentences start with a.
  EXPECT_NEAR(m.prob(TokenSequence{}, 3), (2 + 1.0) / (2 + 4.0), 1e-12);
  EXPECT_EQ(m.context_length_used(TokenSequence{}), 1);
}

TEST(NGramModelTest, TrainingErrors) {
  Vocabulary v(letters(2));
  EXPECT_THROW(NGramModel::train({}, v, 2, 1.0), TrainingError);
  EXPECT_THROW(NGramModel::train({{3}}, v, 0, 1.0), TrainingError);
  EXPECT_THROW(NGramModel::train({{3}}, v, 2, 0.0), TrainingError);
  EXPECT_THROW(NGramModel::train({{9}}, v, 2, 1.0), TrainingError);
}

TEST(NGramModelTest, TrainOnLinesBuildsVocabulary) {
  const auto m = NGramModel::train_on_lines({"The cat sat .", "A cat ran ."},
                                            2, 0.1);
  EXPECT_TRUE(m.vocab().contains("cat"));
  EXPECT_TRUE(m.vocab().contains("the"));
  const TokenId cat = m.vocab().id("cat");
  const auto lp = m.next_logprobs(TokenSequence{m.vocab().id("the")});
  EXPECT_GT(lp[cat], lp[m.vocab().id("ran")]);
}

// ---------------------------------------------------------------------------
// Properties over random prefixes
// ---------------------------------------------------------------------------

TEST(ScoringModelProperty, NormalizedAndDeterministic) {
  std::mt19937_64 rng(20261015);
  const auto table = testing::random_table_model(rng, 4, 3);
  const auto ngram = testing::random_ngram_model(rng, 6, 3);
  Summarizer summarizer(ngram, CopyConfig{});
  const TokenSequence doc_tokens = {3, 4, 5, 4, 3, 8, 6, 7, 3};
  const auto copy = summarizer.bind(doc_tokens);

  const std::vector<const ScoringModel*> models = {table.get(), ngram.get(),
                                                   copy.get()};
  for (int trial = 0; trial < 1000; ++trial) {
    const ScoringModel& m = *models[trial % models.size()];
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<TokenId> tok(
        1, static_cast<TokenId>(m.vocab().size()) - 1);
    TokenSequence prefix(static_cast<std::size_t>(len(rng)));
    for (auto& t : prefix) t = tok(rng);
    const auto lp = m.next_logprobs(prefix);
    ASSERT_EQ(lp.size(), m.vocab().size());
    for (double x : lp) ASSERT_TRUE(std::isfinite(x));
    ASSERT_NEAR(log_sum_exp(lp), 0.0, 1e-6) << "trial " << trial;
    const auto again = m.next_logprobs(prefix);
    ASSERT_EQ(std::memcmp(lp.data(), again.data(), lp.size() * sizeof(double)),
              0);
  }
}

// ---------------------------------------------------------------------------
// Copy mixture
// ---------------------------------------------------------------------------

TEST(CopyModelTest, MixesBaseAndDocumentSuccessors) {
  Vocabulary v(letters(4));
  auto base = std::make_shared<NGramModel>(
      NGramModel::train({{3, 4}, {5, 6}}, v, 1, 1.0));
  const TokenSequence doc = {3, 4, 5};
  CopyMixtureModel m(base, doc, CopyConfig{0.5, 1.0});
  const auto lp = m.next_logprobs(TokenSequence{3});
  // After "a" the document continues with "b" only.
  const double expected = 0.5 * base->prob(TokenSequence{3}, 4) + 0.5;
  EXPECT_NEAR(std::exp(lp[4]), expected, 1e-12);
}

TEST(CopyModelTest, ZeroWeightForwardsToBase) {
  std::mt19937_64 rng(3);
  const auto base = testing::random_ngram_model(rng, 4, 2);
  Summarizer s(base, CopyConfig{0.0, 0.6});
  const auto bound = s.bind({3, 4, 5});
  const TokenSequence prefix = {3};
  EXPECT_EQ(bound->next_logprobs(prefix), base->next_logprobs(prefix));
}

}  // namespace
}  // namespace cas
