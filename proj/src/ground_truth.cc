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

#include "cas/ground_truth.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include "cas/copy_model.h"
#include "cas/errors.h"

namespace cas {
namespace {

struct StrategyName {
  Strategy strategy;
  std::string_view name;
};

constexpr StrategyName kNames[] = {
    {Strategy::kNer, "NER"},
    {Strategy::kNerMiss, "NER-miss"},
    {Strategy::kRand4, "rand4"},
    {Strategy::kRand4Miss, "rand4-miss"},
    {Strategy::kNerMissSrc, "NER-miss-src"},
    {Strategy::kNerNpMissSrc, "NER-NP-miss-src"},
    {Strategy::kPhr4, "phr4"},
};

bool wants_miss(Strategy s) {
  return s == Strategy::kNerMiss || s == Strategy::kRand4Miss ||
         s == Strategy::kNerMissSrc || s == Strategy::kNerNpMissSrc;
}

bool wants_src(Strategy s) {
  return s == Strategy::kNerMissSrc || s == Strategy::kNerNpMissSrc;
}

TokenSequence strip_eos(const TokenSequence& seq) {
  TokenSequence out;
  for (TokenId t : seq) {
    if (t != Vocabulary::kEos && t != Vocabulary::kBos) out.push_back(t);
  }
  return out;
}

bool representable(const TokenSequence& phrase) {
  return !phrase.empty() &&
         std::none_of(phrase.begin(), phrase.end(),
                      [](TokenId t) { return Vocabulary::is_special(t); });
}

TokenSequence slice(const TokenSequence& seq, int start, int end) {
  return TokenSequence(seq.begin() + start, seq.begin() + end);
}

// Uniform index in [0, n) from a seeded engine.
std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.strategy;
  }
  return std::nullopt;
}

std::string_view strategy_name(Strategy strategy) {
  for (const auto& n : kNames) {
    if (n.strategy == strategy) return n.name;
  }
  return "unknown";
}

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all = [] {
    std::vector<Strategy> v;
    for (const auto& n : kNames) v.push_back(n.strategy);
    return v;
  }();
  return all;
}

std::vector<Span> detect_entities(
    const std::vector<std::string>& raw_words,
    const EntityAnnotation* annotation,
    const std::unordered_set<std::string>& stopwords) {
  if (annotation != nullptr) return annotation->spans;
  std::vector<Span> spans;
  auto capitalized = [&](const std::string& w) {
    return !w.empty() && std::isupper(static_cast<unsigned char>(w[0])) &&
           stopwords.count(to_lower(w)) == 0 && !is_punctuation(w);
  };
  const int n = static_cast<int>(raw_words.size());
  int i = 0;
  while (i < n) {
    if (!capitalized(raw_words[static_cast<std::size_t>(i)])) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && capitalized(raw_words[static_cast<std::size_t>(j)])) ++j;
    const bool sentence_initial =
        i == 0 || is_sentence_end(raw_words[static_cast<std::size_t>(i - 1)]);
    if (!(j - i == 1 && sentence_initial)) {
      spans.push_back({i, j, SpanKind::kEntity});
    }
    i = j;
  }
  return spans;
}

ConstraintSet ground_truth_constraints(
    const ReferenceView& reference, const TokenSequence& s_prime,
    const TokenSequence& document, const EntityAnnotation* annotation,
    const StrategyConfig& config, const Vocabulary& vocab,
    const std::unordered_set<std::string>& stopwords) {
  const TokenSequence& ref = reference.tokens;
  if (ref.empty()) throw DatasetError("reference is empty");
  if (reference.raw_words.size() != ref.size()) {
    throw DatasetError("reference words and tokens are misaligned");
  }
  const TokenSequence summary = strip_eos(s_prime);
  const Strategy s = config.strategy;
  std::mt19937_64 rng(config.seed);
  ConstraintSet out;
  auto add = [&](TokenSequence phrase) {
    const std::string text = detokenize(phrase, vocab);
    out.add({std::move(phrase), text});
  };
  auto passes_filters = [&](const TokenSequence& phrase) {
    if (!representable(phrase)) return false;
    if (wants_miss(s) && contains_phrase(summary, phrase)) return false;
    if (wants_src(s) && !contains_phrase(document, phrase)) return false;
    return true;
  };

  if (s == Strategy::kPhr4) {
    const int len = static_cast<int>(ref.size());
    const int width = std::max(1, config.phrase_len);
    if (len <= width) {
      if (representable(ref) && !contains_phrase(summary, ref)) add(ref);
      return out;
    }
    std::vector<int> admissible;
    for (int start = 0; start + width <= len; ++start) {
      const auto window = slice(ref, start, start + width);
      if (representable(window) && !contains_phrase(summary, window)) {
        admissible.push_back(start);
      }
    }
    if (!admissible.empty()) {
      const int start = admissible[draw(rng, admissible.size())];
      add(slice(ref, start, start + width));
    }
    return out;
  }

  if (s == Strategy::kRand4 || s == Strategy::kRand4Miss) {
    std::vector<TokenId> pool;
    std::set<TokenId> seen;
    for (TokenId t : ref) {
      if (seen.count(t)) continue;
      seen.insert(t);
      const std::string& w = vocab.text(t);
      if (stopwords.count(w) || is_punctuation(w)) continue;
      if (!passes_filters({t})) continue;
      pool.push_back(t);
    }
    // Partial Fisher-Yates: the first rand_count entries become the sample.
    const auto want = std::min<std::size_t>(
        pool.size(), static_cast<std::size_t>(std::max(0, config.rand_count)));
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < want; ++i) {
      std::swap(idx[i], idx[i + draw(rng, idx.size() - i)]);
    }
    std::vector<std::size_t> chosen(idx.begin(),
                                    idx.begin() + static_cast<std::ptrdiff_t>(want));
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t i : chosen) add({pool[i]});
    return out;
  }

  std::vector<Span> spans =
      detect_entities(reference.raw_words, annotation, stopwords);
  const bool with_np = s == Strategy::kNerNpMissSrc;
  std::stable_sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    return a.start < b.start;
  });
  for (const auto& span : spans) {
    if (span.kind == SpanKind::kNounPhrase && !with_np) continue;
    if (span.start < 0 || span.end > static_cast<int>(ref.size()) ||
        span.start >= span.end) {
      continue;
    }
    auto phrase = slice(ref, span.start, span.end);
    if (passes_filters(phrase)) add(std::move(phrase));
  }
  return out;
}

}  // namespace cas
