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

#include "cas/dataset.h"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "cas/errors.h"
#include "json.hpp"

namespace cas {
namespace {

using nlohmann::json;

std::string where(const std::string& source, int line) {
  return source + ":" + std::to_string(line);
}

std::string required_text(const json& obj, const char* field,
                          const std::string& at) {
  if (!obj.contains(field)) {
    throw DatasetError(at + ": missing field \"" + field + "\"");
  }
  if (!obj[field].is_string()) {
    throw DatasetError(at + ": field \"" + field + "\" must be a string");
  }
  return obj[field].get<std::string>();
}

std::optional<std::vector<Span>> read_spans(const json& obj, const char* field,
                                            SpanKind kind, int num_words,
                                            const std::string& at) {
  if (!obj.contains(field) || obj[field].is_null()) return std::nullopt;
  const json& arr = obj[field];
  if (!arr.is_array()) {
    throw DatasetError(at + ": \"" + field + "\" must be an array");
  }
  std::vector<Span> spans;
  for (const json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer()) {
      throw DatasetError(at + ": \"" + field +
                         "\" entries must be [start, end] integer pairs");
    }
    Span s{pair[0].get<int>(), pair[1].get<int>(), kind};
    if (s.start < 0 || s.end <= s.start || s.end > num_words) {
      throw DatasetError(at + ": span [" + std::to_string(s.start) + ", " +
                         std::to_string(s.end) + "] in \"" + field +
                         "\" is outside the " + std::to_string(num_words) +
                         "-word reference");
    }
    spans.push_back(s);
  }
  return spans;
}

json spans_to_json(const std::vector<Span>& spans) {
  json arr = json::array();
  for (const auto& s : spans) arr.push_back({s.start, s.end});
  return arr;
}

}  // namespace

TextField TextField::from_raw(std::string raw) {
  TextField f;
  f.words = split_words(raw);
  f.raw = std::move(raw);
  return f;
}

EntityAnnotation DatasetRecord::annotation() const {
  EntityAnnotation ann;
  if (entities) ann.spans = *entities;
  if (noun_phrases) {
    ann.spans.insert(ann.spans.end(), noun_phrases->begin(),
                     noun_phrases->end());
  }
  return ann;
}

LoadResult parse_jsonl(std::istream& in, const std::string& source) {
  LoadResult result;
  std::unordered_map<std::string, int> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string at = where(source, line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DatasetError(at + ": malformed JSON: " + e.what());
    }
    if (!obj.is_object()) throw DatasetError(at + ": expected a JSON object");

    DatasetRecord rec;
    if (obj.contains("id") && obj["id"].is_number_integer()) {
      rec.id = std::to_string(obj["id"].get<long long>());
    } else {
      rec.id = required_text(obj, "id", at);
    }
    rec.document = TextField::from_raw(required_text(obj, "document", at));
    rec.reference = TextField::from_raw(required_text(obj, "reference", at));
    if (rec.document.words.empty()) throw DatasetError(at + ": empty document");
    if (rec.reference.words.empty()) {
      throw DatasetError(at + ": empty reference");
    }
    const int n = static_cast<int>(rec.reference.words.size());
    rec.entities = read_spans(obj, "entities", SpanKind::kEntity, n, at);
    rec.noun_phrases =
        read_spans(obj, "noun_phrases", SpanKind::kNounPhrase, n, at);

    auto [it, inserted] = seen.emplace(rec.id, line_no);
    if (!inserted) {
      throw DatasetError(source + ": duplicate id \"" + rec.id +
                         "\" on lines " + std::to_string(it->second) +
                         " and " + std::to_string(line_no));
    }
    result.records.push_back(std::move(rec));
  }
  if (result.records.empty()) {
    result.warnings.push_back(source + ": no records");
  }
  return result;
}

LoadResult load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot read dataset file " + path);
  return parse_jsonl(in, path);
}

std::string record_to_json_line(const DatasetRecord& record) {
  json obj = {{"id", record.id},
              {"document", record.document.raw},
              {"reference", record.reference.raw}};
  if (record.entities) obj["entities"] = spans_to_json(*record.entities);
  if (record.noun_phrases) {
    obj["noun_phrases"] = spans_to_json(*record.noun_phrases);
  }
  return obj.dump();
}

void save_jsonl(const std::vector<DatasetRecord>& records,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write dataset file " + path);
  for (const auto& r : records) out << record_to_json_line(r) << '\n';
  if (!out) throw DatasetError("error while writing " + path);
}

TokenSequence tokenize_words(const std::vector<std::string>& words,
                             const Vocabulary& vocab) {
  TokenSequence out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(vocab.id(to_lower(w)));
  return out;
}

void tokenize_records(std::vector<DatasetRecord>& records,
                      const Vocabulary& vocab) {
  for (auto& r : records) {
    r.document.tokens = tokenize_words(r.document.words, vocab);
    r.reference.tokens = tokenize_words(r.reference.words, vocab);
  }
}

}  // namespace cas
