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

#ifndef CAS_VOCABULARY_H_
#define CAS_VOCABULARY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cas {

using TokenId = std::int32_t;
using TokenSequence = std::vector<TokenId>;

// Dense token inventory. Ids 0..2 are always BOS, EOS and UNK.
class Vocabulary {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr TokenId kUnk = 2;
  static constexpr std::string_view kBosText = "<s>";
  static constexpr std::string_view kEosText = "</s>";
  static constexpr std::string_view kUnkText = "<unk>";

  // Reserved tokens only.
  Vocabulary();

  // Reserved tokens followed by `tokens` in first-seen order. Duplicates and
  // reserved strings inside `tokens` are skipped.
  explicit Vocabulary(const std::vector<std::string>& tokens);

  // Appends `token` if absent; returns its id either way.
  TokenId add(std::string_view token);

  // Id of `token`, or kUnk when absent.
  TokenId id(std::string_view token) const;
  bool contains(std::string_view token) const;

  // Throws InvalidTokenError for out-of-range ids.
  const std::string& text(TokenId id) const;

  std::size_t size() const { return tokens_.size(); }
  bool valid(TokenId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < tokens_.size();
  }
  static bool is_special(TokenId id) { return id <= kUnk; }

  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

// Splits raw text into surface tokens without changing case. Punctuation
// becomes separate tokens; runs of one punctuation character ("``", "''",
// "...") stay together; '-', '.', ',', '\'' and '&' between two word
// characters stay inside the word; clitics such as "'s" stay whole; bracket
// escapes like "-lrb-" pass through verbatim.
std::vector<std::string> split_words(std::string_view text);

// ASCII lowercasing; bytes >= 0x80 are left alone.
std::string to_lower(std::string_view text);

// Lowercased split_words.
std::vector<std::string> normalize_words(std::string_view text);

// split_words + lowercase + vocabulary lookup. Unknown words map to UNK.
TokenSequence tokenize(std::string_view text, const Vocabulary& vocab);

// Space-joined token strings with BOS/EOS stripped. Throws InvalidTokenError
// for ids outside the vocabulary.
std::string detokenize(std::span<const TokenId> seq, const Vocabulary& vocab);

// Space-joined normalize_words(text).
std::string canonical_text(std::string_view text);

// True for tokens made only of punctuation, and for bracket escapes.
bool is_punctuation(std::string_view token);

}  // namespace cas

#endif  // CAS_VOCABULARY_H_
