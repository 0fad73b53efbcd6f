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

#include "cas/table_model.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cas/errors.h"

namespace cas {
namespace {

constexpr double kRowTolerance = 1e-9;

std::vector<std::string> whitespace_split(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join_key(const std::string& key) {
  std::string out;
  for (const auto& w : whitespace_split(key)) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::vector<std::string> all_row_tokens(
    const std::map<std::string, TableModel::Row>& rows) {
  std::set<std::string> tokens;
  for (const auto& [key, row] : rows) {
    if (key != TableModel::kDefaultKey) {
      for (auto& w : whitespace_split(key)) tokens.insert(w);
    }
    for (const auto& [tok, p] : row) tokens.insert(tok);
  }
  return {tokens.begin(), tokens.end()};
}

}  // namespace

TableModel::TableModel(const std::map<std::string, Row>& rows)
    : vocab_(all_row_tokens(rows)) {
  build(rows);
}

TableModel::TableModel(Vocabulary vocab, const std::map<std::string, Row>& rows)
    : vocab_(std::move(vocab)) {
  build(rows);
}

void TableModel::build(const std::map<std::string, Row>& rows) {
  if (rows.find(kDefaultKey) == rows.end()) {
    throw ModelSpecError("table model needs a \"__default__\" row");
  }
  for (const auto& [key, row] : rows) {
    std::vector<double> probs(vocab_.size(), 0.0);
    double total = 0.0;
    for (const auto& [tok, p] : row) {
      if (!vocab_.contains(tok)) {
        throw ModelSpecError("row '" + key + "' mentions unknown token '" +
                             tok + "'");
      }
      if (!(p >= 0.0)) {
        throw ModelSpecError("row '" + key + "' has a negative probability");
      }
      probs[static_cast<std::size_t>(vocab_.id(tok))] += p;
      total += p;
    }
    if (std::fabs(total - 1.0) > kRowTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "row '" << key << "' sums to " << total << ", expected 1";
      throw ModelSpecError(msg.str());
    }
    std::vector<double> logp(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) logp[i] = safe_log(probs[i]);
    if (key == kDefaultKey) {
      default_row_ = std::move(logp);
    } else {
      rows_.emplace(join_key(key), std::move(logp));
    }
  }
}

TableModel TableModel::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelSpecError(std::string("table model JSON: ") + e.what());
  }
  if (!j.is_object()) throw ModelSpecError("table model JSON must be an object");
  std::map<std::string, Row> rows;
  for (auto& [key, row] : j.items()) {
    if (!row.is_object()) {
      throw ModelSpecError("row '" + key + "' must be an object");
    }
    Row r;
    for (auto& [tok, p] : row.items()) {
      if (!p.is_number()) {
        throw ModelSpecError("row '" + key + "' has a non-numeric entry");
      }
      r[tok] = p.get<double>();
    }
    rows[key] = std::move(r);
  }
  return TableModel(rows);
}

TableModel TableModel::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelSpecError("cannot read table model file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::vector<double> TableModel::next_logprobs(
    std::span<const TokenId> prefix) const {
  if (!rows_.empty()) {
    auto it = rows_.find(detokenize(prefix, vocab_));
    if (it != rows_.end()) return it->second;
  }
  return default_row_;
}

}  // namespace cas
