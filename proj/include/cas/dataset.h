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

#ifndef CAS_DATASET_H_
#define CAS_DATASET_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "cas/ground_truth.h"
#include "cas/vocabulary.h"

namespace cas {

// Raw text, its surface words (split_words, case kept) and, once a
// vocabulary is known, the lowercased token ids of those words.
struct TextField {
  std::string raw;
  std::vector<std::string> words;
  TokenSequence tokens;

  static TextField from_raw(std::string raw);
};

// One (document, reference) pair. Annotation spans index reference words,
// half-open.
struct DatasetRecord {
  std::string id;
  TextField document;
  TextField reference;
  std::optional<std::vector<Span>> entities;
  std::optional<std::vector<Span>> noun_phrases;

  bool has_annotation() const { return entities || noun_phrases; }
  // Entities followed by noun phrases, each tagged with its kind.
  EntityAnnotation annotation() const;
};

struct LoadResult {
  std::vector<DatasetRecord> records;
  std::vector<std::string> warnings;
};

// One JSON object per line: {"id", "document", "reference", "entities"?,
// "noun_phrases"?}, spans as [start, end] pairs. Blank lines are skipped.
// Throws DatasetError naming the line for malformed JSON, missing or empty
// fields, out-of-range spans and duplicate ids (naming both lines).
LoadResult load_jsonl(const std::string& path);
LoadResult parse_jsonl(std::istream& in, const std::string& source);

std::string record_to_json_line(const DatasetRecord& record);
// Throws DatasetError when the file cannot be written.
void save_jsonl(const std::vector<DatasetRecord>& records,
                const std::string& path);

// Fills TextField::tokens of documents and references.
void tokenize_records(std::vector<DatasetRecord>& records,
                      const Vocabulary& vocab);

// Tokenizes already-split surface words.
TokenSequence tokenize_words(const std::vector<std::string>& words,
                             const Vocabulary& vocab);

}  // namespace cas

#endif  // CAS_DATASET_H_
