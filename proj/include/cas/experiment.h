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

#ifndef CAS_EXPERIMENT_H_
#define CAS_EXPERIMENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cas/copy_model.h"
#include "cas/dataset.h"
#include "cas/decoder.h"
#include "cas/ground_truth.h"
#include "cas/keyphrase.h"
#include "cas/rouge.h"
#include "cas/synthetic.h"

namespace cas {

// Where the scoring model comes from:
//   table:<file>     TableModel JSON (document conditioning is disabled)
//   ngram:<file>     n-gram trained on one sentence per line
//   jsonl:<file>     n-gram trained on the references of a dataset file,
//                    with the vocabulary of its documents
//   synthetic[:<seed>]  same, on the train split of the synthetic corpus
struct ModelSpec {
  enum class Kind { kTable, kNGram, kJsonl, kSynthetic };
  Kind kind = Kind::kSynthetic;
  std::string path;
  std::uint64_t synthetic_seed = SyntheticConfig{}.seed;
  int order = 3;
  double lambda = 0.01;
  CopyConfig copy;

  // Throws ConfigError for unknown forms.
  static ModelSpec parse(std::string_view text);
  std::string describe() const;
};

struct LoadedModel {
  std::shared_ptr<const Summarizer> summarizer;
  // Documents that idf statistics should come from (the training side).
  std::vector<TokenSequence> idf_documents;
  // Synthetic test split; empty for other kinds.
  std::vector<DatasetRecord> synthetic_test;
};

// Builds the summarizer. `eval_records` documents are added to the
// vocabulary of trained models so their words can be copied.
LoadedModel load_model(const ModelSpec& spec,
                       const std::vector<DatasetRecord>& eval_records);

// N-gram base over the references of `train`, vocabulary from all of
// `train` plus the documents of `eval_records`.
std::shared_ptr<const Summarizer> build_summarizer(
    const std::vector<DatasetRecord>& train,
    const std::vector<DatasetRecord>& eval_records, int order, double lambda,
    const CopyConfig& copy);

enum class ConstraintMode { kNone, kAutoKpe, kStrategy };

struct ExperimentConfig {
  ConstraintMode mode = ConstraintMode::kNone;
  StrategyConfig strategy;
  DecodeConfig decode;
  KpeConfig kpe;
  int workers = 1;
  std::string model_description;

  // "none", "auto-kpe" or "strategy:<name>". Throws ConfigError.
  void set_mode(std::string_view text);
  std::string mode_name() const;
  // 10 for auto-kpe, 5 otherwise.
  static int default_beam(ConstraintMode mode);
};

struct RecordRow {
  std::string id;
  std::string s_prime;
  std::vector<std::string> constraints;
  int c_total = 0;
  bool constrained = false;
  std::string s;         // constrained summary; empty when unconstrained-only
  std::string s_append;  // append baseline; empty when unconstrained-only
  bool satisfied = true;
  bool fallback_used = false;
  std::string error;  // set when constraints could not be decoded
  RougeTriple rouge_s_prime;
  RougeTriple rouge_s;       // equals rouge_s_prime when unconstrained-only
  RougeTriple rouge_append;  // likewise

  bool operator==(const RecordRow&) const = default;
};

struct ReportAggregates {
  int num_records = 0;
  int num_constrained = 0;
  double constrained_fraction = 0.0;
  double mean_c_total = 0.0;  // over all records, zeros included
  int num_fallback = 0;
  int num_unsatisfied = 0;
  CorpusRouge unconstrained;  // s' everywhere
  CorpusRouge cas;            // s where constrained, else s'
  CorpusRouge append;         // append baseline where constrained, else s'
  bool operator==(const ReportAggregates&) const = default;
};

struct RunReport {
  std::string mode = "none";
  std::string model;
  int beam_size = 0;
  int max_length = 0;
  double length_penalty_alpha = 0.0;
  std::uint64_t seed = 0;
  double min_score = 0.0;
  std::vector<RecordRow> rows;
  ReportAggregates aggregates;

  bool has_constraints() const { return mode != "none"; }
  bool operator==(const RunReport&) const = default;
};

// Recomputes aggregates from rows. Throws Error for no rows.
ReportAggregates aggregate(const std::vector<RecordRow>& rows);

// Records must be tokenized with the summarizer vocabulary. `idf` is only
// consulted in auto-kpe mode. Per-record failures are stored in the row.
RunReport run_experiment(const std::vector<DatasetRecord>& records,
                         const Summarizer& summarizer, const IdfTable& idf,
                         const ExperimentConfig& config);

enum class ReportFormat { kJson, kCsv, kMarkdown };

// Throws ConfigError for unknown names ("json", "csv", "markdown").
ReportFormat parse_report_format(std::string_view name);

std::string report_to_json(const RunReport& report);
// Throws Error on malformed input.
RunReport report_from_json(const std::string& text);
// One header line plus one line per record. s columns are omitted in
// "none" mode.
std::string report_to_csv(const RunReport& report);
// Strategy rows by R-1/R-2/R-L/C columns: an unconstrained row taken from
// the first report, then one row per constrained report and, when
// `with_append` is set, its append baseline.
std::string report_to_markdown(const std::vector<RunReport>& reports,
                               bool with_append = true);

// Throws Error when `path` cannot be written.
void emit_report(const RunReport& report, ReportFormat format,
                 const std::string& path);

}  // namespace cas

#endif  // CAS_EXPERIMENT_H_
