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

#ifndef CAS_TABLE_MODEL_H_
#define CAS_TABLE_MODEL_H_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "cas/scoring_model.h"

namespace cas {

// Explicit prefix -> next-token distribution table with a default row.
//
// File format (JSON):
//   {"": {"a": 0.7, "b": 0.3},
//    "a": {"b": 1.0},
//    "a b": {"</s>": 1.0},
//    "__default__": {"</s>": 1.0}}
// Keys are generated prefixes joined by single spaces. Every row must sum to
// 1 within 1e-9. Tokens absent from a row get kLogProbFloor.
class TableModel : public ScoringModel {
 public:
  using Row = std::map<std::string, double>;

  // `rows` must contain "__default__". Tokens mentioned anywhere are added to
  // the vocabulary in sorted order after the reserved tokens.
  explicit TableModel(const std::map<std::string, Row>& rows);

  // Same, over an existing vocabulary. Tokens in rows must be in `vocab`.
  TableModel(Vocabulary vocab, const std::map<std::string, Row>& rows);

  static TableModel from_json_file(const std::string& path);
  static TableModel from_json_text(const std::string& text);

  std::vector<double> next_logprobs(
      std::span<const TokenId> prefix) const override;
  const Vocabulary& vocab() const override { return vocab_; }

  static constexpr const char* kDefaultKey = "__default__";

 private:
  void build(const std::map<std::string, Row>& rows);

  Vocabulary vocab_;
  std::unordered_map<std::string, std::vector<double>> rows_;
  std::vector<double> default_row_;
};

}  // namespace cas

#endif  // CAS_TABLE_MODEL_H_
