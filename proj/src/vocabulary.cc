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

#include "cas/vocabulary.h"

#include <cctype>

#include "cas/errors.h"

namespace cas {
namespace {

bool is_word_char(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

bool is_connector(char c) {
  return c == '-' || c == '.' || c == ',' || c == '\'' || c == '&';
}

// "-lrb-", "-rrb-", "-lsb-", ... (case-insensitive).
bool is_bracket_escape(std::string_view chunk) {
  if (chunk.size() != 5 || chunk.front() != '-' || chunk.back() != '-') {
    return false;
  }
  for (std::size_t i = 1; i < 4; ++i) {
    if (!std::isalpha(static_cast<unsigned char>(chunk[i]))) return false;
  }
  return true;
}

void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
  if (is_bracket_escape(chunk)) {
    out.emplace_back(chunk);
    return;
  }
  std::string word;
  auto flush = [&]() {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  const std::size_t n = chunk.size();
  std::size_t i = 0;
  while (i < n) {
    const auto c = static_cast<unsigned char>(chunk[i]);
    if (is_word_char(c)) {
      word.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    const bool next_is_word =
        i + 1 < n && is_word_char(static_cast<unsigned char>(chunk[i + 1]));
    if (is_connector(static_cast<char>(c)) && !word.empty() && next_is_word) {
      word.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    // Clitic: "'s", "'re", "'ll" at the start of a token.
    if (c == '\'' && word.empty() && next_is_word &&
        std::isalpha(static_cast<unsigned char>(chunk[i + 1]))) {
      word.push_back('\'');
      ++i;
      continue;
    }
    flush();
    std::size_t j = i;
    while (j < n && chunk[j] == chunk[i]) ++j;
    out.emplace_back(chunk.substr(i, j - i));
    i = j;
  }
  flush();
}

}  // namespace

Vocabulary::Vocabulary() {
  add(kBosText);
  add(kEosText);
  add(kUnkText);
}

Vocabulary::Vocabulary(const std::vector<std::string>& tokens) : Vocabulary() {
  for (const auto& t : tokens) add(t);
}

TokenId Vocabulary::add(std::string_view token) {
  auto it = index_.find(std::string(token));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.emplace_back(token);
  index_.emplace(tokens_.back(), id);
  return id;
}

TokenId Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return index_.count(std::string(token)) > 0;
}

const std::string& Vocabulary::text(TokenId id) const {
  if (!valid(id)) {
    throw InvalidTokenError("token id " + std::to_string(id) +
                            " outside vocabulary of size " +
                            std::to_string(tokens_.size()));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j > i) split_chunk(text.substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

std::vector<std::string> normalize_words(std::string_view text) {
  auto words = split_words(text);
  for (auto& w : words) w = to_lower(w);
  return words;
}

TokenSequence tokenize(std::string_view text, const Vocabulary& vocab) {
  TokenSequence seq;
  for (const auto& w : normalize_words(text)) seq.push_back(vocab.id(w));
  return seq;
}

std::string detokenize(std::span<const TokenId> seq, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : seq) {
    const std::string& t = vocab.text(id);
    if (id == Vocabulary::kBos || id == Vocabulary::kEos) continue;
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string canonical_text(std::string_view text) {
  std::string out;
  for (const auto& w : normalize_words(text)) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  if (is_bracket_escape(token)) return true;
  for (char c : token) {
    if (is_word_char(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace cas
