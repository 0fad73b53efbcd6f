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

#ifndef CAS_GROUND_TRUTH_H_
#define CAS_GROUND_TRUTH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cas/constraints.h"
#include "cas/vocabulary.h"

namespace cas {

// Simulated-feedback strategies. "-miss" keeps spans absent from the
// unconstrained summary, "-src" keeps spans present in the document, "NP"
// adds noun phrases to entities, "rand4" samples single tokens and "phr4"
// samples one contiguous window.
enum class Strategy {
  kNer,
  kNerMiss,
  kRand4,
  kRand4Miss,
  kNerMissSrc,
  kNerNpMissSrc,
  kPhr4,
};

// Accepts the names used by strategy_name ("NER", "NER-miss", "rand4",
// "rand4-miss", "NER-miss-src", "NER-NP-miss-src", "phr4").
std::optional<Strategy> parse_strategy(std::string_view name);
std::string_view strategy_name(Strategy strategy);
const std::vector<Strategy>& all_strategies();

struct StrategyConfig {
  Strategy strategy = Strategy::kNerMiss;
  std::uint64_t seed = 0;
  int rand_count = 4;
  int phrase_len = 4;
};

enum class SpanKind { kEntity, kNounPhrase };

// Half-open token range [start, end) over the reference.
struct Span {
  int start = 0;
  int end = 0;
  SpanKind kind = SpanKind::kEntity;

  bool operator==(const Span&) const = default;
};

struct EntityAnnotation {
  std::vector<Span> spans;
};

// Annotation spans verbatim when `annotation` is given. Otherwise maximal
// runs of capitalized raw words, skipping stopwords and punctuation and
// dropping single-word runs that open a sentence.
std::vector<Span> detect_entities(
    const std::vector<std::string>& raw_words,
    const EntityAnnotation* annotation,
    const std::unordered_set<std::string>& stopwords);

// The reference as both surface words and model tokens (same segmentation).
struct ReferenceView {
  TokenSequence tokens;
  std::vector<std::string> raw_words;
};

// Builds a constraint set for one record. Spans with UNK tokens are skipped
// since the model cannot produce them. Deterministic in (inputs, seed).
ConstraintSet ground_truth_constraints(
    const ReferenceView& reference, const TokenSequence& s_prime,
    const TokenSequence& document, const EntityAnnotation* annotation,
    const StrategyConfig& config, const Vocabulary& vocab,
    const std::unordered_set<std::string>& stopwords);

}  // namespace cas

#endif  // CAS_GROUND_TRUTH_H_
