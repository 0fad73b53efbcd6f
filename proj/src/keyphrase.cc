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

#include "cas/keyphrase.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "cas/errors.h"

namespace cas {

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",       "about",  "above", "after",   "again",  "against", "all",
      "also",    "am",     "an",    "and",     "any",    "are",     "as",
      "at",      "be",     "been",  "before",  "being",  "below",   "between",
      "both",    "but",    "by",    "can",     "could",  "did",     "do",
      "does",    "doing",  "down",  "during",  "each",   "few",     "for",
      "from",    "further","had",   "has",     "have",   "having",  "he",
      "her",     "here",   "hers",  "herself", "him",    "himself", "his",
      "how",     "i",      "if",    "in",      "into",   "is",      "it",
      "its",     "itself", "just",  "me",      "more",   "most",    "my",
      "myself",  "no",     "nor",   "not",     "now",    "of",      "off",
      "on",      "once",   "only",  "or",      "other",  "our",     "ours",
      "out",     "over",   "own",   "said",    "same",   "says",    "she",
      "should",  "so",     "some",  "such",    "than",   "that",    "the",
      "their",   "theirs", "them",  "then",    "there",  "these",   "they",
      "this",    "those",  "through","to",     "too",    "under",   "until",
      "up",      "very",   "was",   "we",      "were",   "what",    "when",
      "where",   "which",  "while", "who",     "whom",   "why",     "will",
      "with",    "would",  "you",   "your",    "yours",  "'s",      "n't",
  };
  return words;
}

IdfTable IdfTable::from_documents(const std::vector<TokenSequence>& documents,
                                  const Vocabulary& vocab) {
  std::unordered_map<std::string, int> df;
  for (const auto& doc : documents) {
    std::set<TokenId> seen(doc.begin(), doc.end());
    for (TokenId t : seen) ++df[vocab.text(t)];
  }
  const double n = static_cast<double>(documents.size());
  std::unordered_map<std::string, double> values;
  values.reserve(df.size());
  for (const auto& [w, c] : df) {
    values.emplace(w, std::log((1.0 + n) / (1.0 + c)) + 1.0);
  }
  return IdfTable(std::move(values), std::log(1.0 + n) + 1.0);
}

double IdfTable::idf(std::string_view word) const {
  auto it = values_.find(std::string(word));
  return it == values_.end() ? unseen_ : it->second;
}

std::vector<KeyphraseCandidate> extract_keyphrases(
    const TokenSequence& document, const Vocabulary& vocab,
    const IdfTable& idf, const KpeConfig& config) {
  if (config.max_ngram < 1) throw ConfigError("max_ngram must be >= 1");
  std::vector<KeyphraseCandidate> out;
  if (document.empty()) return out;

  std::map<TokenId, int> tf;
  for (TokenId t : document) ++tf[t];
  auto usable = [&](TokenId t) {
    return t != Vocabulary::kUnk && !Vocabulary::is_special(t) &&
           !is_punctuation(vocab.text(t));
  };
  auto stop = [&](TokenId t) {
    return config.stopwords.count(vocab.text(t)) > 0;
  };

  const double len = static_cast<double>(document.size());
  std::map<TokenSequence, std::size_t> index;
  for (std::size_t i = 0; i < document.size(); ++i) {
    if (!usable(document[i]) || stop(document[i])) continue;
    for (std::size_t n = 1;
         n <= static_cast<std::size_t>(config.max_ngram) && i + n <= document.size();
         ++n) {
      const TokenId last = document[i + n - 1];
      if (!usable(last)) break;
      if (stop(last)) continue;
      TokenSequence phrase(document.begin() + static_cast<std::ptrdiff_t>(i),
                           document.begin() + static_cast<std::ptrdiff_t>(i + n));
      if (index.count(phrase)) continue;
      std::set<TokenId> distinct(phrase.begin(), phrase.end());
      double mass = 0.0;
      for (TokenId t : distinct) mass += tf[t] * idf.idf(vocab.text(t));
      const double decay = 1.0 / (1.0 + static_cast<double>(i) / len);
      index.emplace(phrase, out.size());
      out.push_back({std::move(phrase), mass * decay, static_cast<int>(i)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const KeyphraseCandidate& a, const KeyphraseCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.first_position != b.first_position) {
                return a.first_position < b.first_position;
              }
              if (a.tokens.size() != b.tokens.size()) {
                return a.tokens.size() < b.tokens.size();
              }
              return a.tokens < b.tokens;
            });
  return out;
}

std::string_view filter_reason_name(FilterReason reason) {
  switch (reason) {
    case FilterReason::kKept: return "kept";
    case FilterReason::kInSummary: return "in_summary";
    case FilterReason::kLowScore: return "low_score";
    case FilterReason::kSubPhrase: return "sub_phrase";
    case FilterReason::kOverLimit: return "over_limit";
  }
  return "unknown";
}

std::vector<FilterDecision> explain_filter(
    const std::vector<KeyphraseCandidate>& candidates,
    const TokenSequence& s_prime, const KpeConfig& config) {
  if (config.top_k < 1) throw ConfigError("top_k must be >= 1");
  std::vector<FilterDecision> out;
  std::vector<const TokenSequence*> kept;
  out.reserve(candidates.size());
  for (const auto& c : candidates) {
    FilterReason reason = FilterReason::kKept;
    if (contains_phrase(s_prime, c.tokens)) {
      reason = FilterReason::kInSummary;
    } else if (c.score < config.min_score) {
      reason = FilterReason::kLowScore;
    } else if (std::any_of(kept.begin(), kept.end(), [&](const TokenSequence* k) {
                 return contains_phrase(*k, c.tokens);
               })) {
      reason = FilterReason::kSubPhrase;
    } else if (static_cast<int>(kept.size()) >= config.top_k) {
      reason = FilterReason::kOverLimit;
    } else {
      kept.push_back(&c.tokens);
    }
    out.push_back({c, reason});
  }
  return out;
}

ConstraintSet filter_constraints(
    const std::vector<KeyphraseCandidate>& candidates,
    const TokenSequence& s_prime, const Vocabulary& vocab,
    const KpeConfig& config) {
  ConstraintSet set;
  for (const auto& d : explain_filter(candidates, s_prime, config)) {
    if (d.reason != FilterReason::kKept) continue;
    set.add({d.candidate.tokens, detokenize(d.candidate.tokens, vocab)});
  }
  return set;
}

double best_surviving_score(const std::vector<KeyphraseCandidate>& candidates,
                            const TokenSequence& s_prime) {
  for (const auto& c : candidates) {
    if (!contains_phrase(s_prime, c.tokens)) return c.score;
  }
  return -std::numeric_limits<double>::infinity();
}

double calibrate_min_score(std::vector<double> best_scores,
                           double target_fraction) {
  if (best_scores.empty()) throw ConfigError("no scores to calibrate on");
  std::sort(best_scores.begin(), best_scores.end(), std::greater<>());
  const auto n = best_scores.size();
  auto k = static_cast<std::size_t>(
      std::lround(std::clamp(target_fraction, 0.0, 1.0) * static_cast<double>(n)));
  if (k == 0) return std::nextafter(best_scores.front(),
                                    std::numeric_limits<double>::infinity());
  if (k >= n) return best_scores.back();
  const double hi = best_scores[k - 1];
  const double lo = best_scores[k];
  if (!std::isfinite(lo)) return hi;
  return 0.5 * (hi + lo);
}

}  // namespace cas
