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

#include "cas/experiment.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "cas/errors.h"
#include "cas/ngram_model.h"
#include "cas/parallel.h"
#include "cas/table_model.h"
#include "json.hpp"

namespace cas {
namespace {

using nlohmann::json;

std::uint64_t record_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // splitmix64 finalizer over the mixed value
  std::uint64_t z = h ^ (seed + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void add_words(Vocabulary& vocab, const std::vector<std::string>& words) {
  for (const auto& w : words) vocab.add(to_lower(w));
}

std::string display_mode(const std::string& mode) {
  const std::string prefix = "strategy:";
  return mode.rfind(prefix, 0) == 0 ? mode.substr(prefix.size()) : mode;
}

json score_json(const RougeScore& s) {
  return {{"p", s.precision}, {"r", s.recall}, {"f1", s.f1}};
}

RougeScore score_from(const json& j) {
  return {j.at("p").get<double>(), j.at("r").get<double>(),
          j.at("f1").get<double>()};
}

json triple_json(const RougeTriple& t) {
  return {{"r1", score_json(t.r1)},
          {"r2", score_json(t.r2)},
          {"rl", score_json(t.rl)}};
}

RougeTriple triple_from(const json& j) {
  return {score_from(j.at("r1")), score_from(j.at("r2")),
          score_from(j.at("rl"))};
}

json corpus_json(const CorpusRouge& c) {
  return {{"r1", c.r1}, {"r2", c.r2}, {"rl", c.rl}};
}

CorpusRouge corpus_from(const json& j) {
  return {j.at("r1").get<double>(), j.at("r2").get<double>(),
          j.at("rl").get<double>()};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

RecordRow process_record(const DatasetRecord& rec,
                         const Summarizer& summarizer, const IdfTable& idf,
                         const ExperimentConfig& config) {
  const Vocabulary& vocab = summarizer.vocab();
  const auto model = summarizer.bind(rec.document.tokens);
  const DecodeResult s_prime = beam_search(*model, config.decode);

  RecordRow row;
  row.id = rec.id;
  row.s_prime = detokenize(s_prime.tokens, vocab);
  row.rouge_s_prime = rouge_all(s_prime.tokens, rec.reference.tokens);
  row.rouge_s = row.rouge_s_prime;
  row.rouge_append = row.rouge_s_prime;

  ConstraintSet cs;
  if (config.mode == ConstraintMode::kAutoKpe) {
    const auto cands =
        extract_keyphrases(rec.document.tokens, vocab, idf, config.kpe);
    cs = filter_constraints(cands, s_prime.tokens, vocab, config.kpe);
  } else if (config.mode == ConstraintMode::kStrategy) {
    StrategyConfig sc = config.strategy;
    sc.seed = record_seed(config.strategy.seed, rec.id);
    const EntityAnnotation ann = rec.annotation();
    const ReferenceView ref{rec.reference.tokens, rec.reference.words};
    cs = ground_truth_constraints(ref, s_prime.tokens, rec.document.tokens,
                                  rec.has_annotation() ? &ann : nullptr, sc,
                                  vocab, config.kpe.stopwords);
  }
  if (cs.empty()) return row;

  row.constraints = cs.texts();
  row.c_total = cs.total_tokens();
  try {
    const DecodeResult s = dba_decode(*model, cs, config.decode);
    const DecodeResult appended = append_baseline(s_prime, cs);
    row.constrained = true;
    row.s = detokenize(s.tokens, vocab);
    row.s_append = detokenize(appended.tokens, vocab);
    row.satisfied = s.satisfied;
    row.fallback_used = s.fallback_used;
    row.rouge_s = rouge_all(s.tokens, rec.reference.tokens);
    row.rouge_append = rouge_all(appended.tokens, rec.reference.tokens);
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

ModelSpec ModelSpec::parse(std::string_view text) {
  ModelSpec spec;
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string rest =
      colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
  if (kind == "synthetic") {
    spec.kind = Kind::kSynthetic;
    if (!rest.empty()) {
      try {
        spec.synthetic_seed = std::stoull(rest);
      } catch (const std::exception&) {
        throw ConfigError("bad synthetic seed in model spec: " + rest);
      }
    }
    return spec;
  }
  if (rest.empty()) {
    throw ConfigError("model spec needs a path: " + std::string(text));
  }
  spec.path = rest;
  if (kind == "table") {
    spec.kind = Kind::kTable;
  } else if (kind == "ngram") {
    spec.kind = Kind::kNGram;
  } else if (kind == "jsonl") {
    spec.kind = Kind::kJsonl;
  } else {
    throw ConfigError("unknown model kind \"" + std::string(kind) +
                      "\" (expected table, ngram, jsonl or synthetic)");
  }
  return spec;
}

std::string ModelSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kTable:
      return "table:" + path;
    case Kind::kNGram:
      out << "ngram:" << path;
      break;
    case Kind::kJsonl:
      out << "jsonl:" << path;
      break;
    case Kind::kSynthetic:
      out << "synthetic:" << synthetic_seed;
      break;
  }
  out << " order=" << order << " lambda=" << lambda
      << " copy_weight=" << copy.copy_weight
      << " lead_decay=" << copy.lead_decay;
  return out.str();
}

std::shared_ptr<const Summarizer> build_summarizer(
    const std::vector<DatasetRecord>& train,
    const std::vector<DatasetRecord>& eval_records, int order, double lambda,
    const CopyConfig& copy) {
  if (train.empty()) throw TrainingError("no training records");
  Vocabulary vocab;
  for (const auto& r : train) {
    add_words(vocab, r.document.words);
    add_words(vocab, r.reference.words);
  }
  for (const auto& r : eval_records) add_words(vocab, r.document.words);
  std::vector<TokenSequence> corpus;
  corpus.reserve(train.size());
  for (const auto& r : train) {
    corpus.push_back(tokenize_words(r.reference.words, vocab));
  }
  auto base = std::make_shared<NGramModel>(
      NGramModel::train(corpus, std::move(vocab), order, lambda));
  return std::make_shared<Summarizer>(std::move(base), copy);
}

LoadedModel load_model(const ModelSpec& spec,
                       const std::vector<DatasetRecord>& eval_records) {
  LoadedModel loaded;
  auto idf_from = [&](const std::vector<DatasetRecord>& recs) {
    const Vocabulary& vocab = loaded.summarizer->vocab();
    for (const auto& r : recs) {
      loaded.idf_documents.push_back(tokenize_words(r.document.words, vocab));
    }
  };
  switch (spec.kind) {
    case ModelSpec::Kind::kTable: {
      auto base = std::make_shared<TableModel>(
          TableModel::from_json_file(spec.path));
      loaded.summarizer = std::make_shared<Summarizer>(
          std::move(base), CopyConfig{0.0, spec.copy.lead_decay});
      idf_from(eval_records);
      break;
    }
    case ModelSpec::Kind::kNGram: {
      auto base = std::make_shared<NGramModel>(
          NGramModel::train_on_file(spec.path, spec.order, spec.lambda));
      loaded.summarizer = std::make_shared<Summarizer>(std::move(base),
                                                       spec.copy);
      idf_from(eval_records);
      break;
    }
    case ModelSpec::Kind::kJsonl: {
      const auto train = load_jsonl(spec.path).records;
      loaded.summarizer = build_summarizer(train, eval_records, spec.order,
                                           spec.lambda, spec.copy);
      idf_from(train);
      break;
    }
    case ModelSpec::Kind::kSynthetic: {
      SyntheticConfig sc;
      sc.seed = spec.synthetic_seed;
      auto corpus = generate_synthetic_corpus(sc);
      std::vector<DatasetRecord> eval = eval_records;
      eval.insert(eval.end(), corpus.test.begin(), corpus.test.end());
      loaded.summarizer = build_summarizer(corpus.train, eval, spec.order,
                                           spec.lambda, spec.copy);
      idf_from(corpus.train);
      loaded.synthetic_test = std::move(corpus.test);
      tokenize_records(loaded.synthetic_test, loaded.summarizer->vocab());
      break;
    }
  }
  return loaded;
}

void ExperimentConfig::set_mode(std::string_view text) {
  if (text == "none") {
    mode = ConstraintMode::kNone;
    return;
  }
  if (text == "auto-kpe") {
    mode = ConstraintMode::kAutoKpe;
    return;
  }
  const std::string_view prefix = "strategy:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto s = parse_strategy(text.substr(prefix.size()));
    if (!s) {
      throw ConfigError("unknown strategy \"" +
                        std::string(text.substr(prefix.size())) + "\"");
    }
    mode = ConstraintMode::kStrategy;
    strategy.strategy = *s;
    return;
  }
  throw ConfigError("unknown constraint mode \"" + std::string(text) +
                    "\" (expected none, auto-kpe or strategy:<name>)");
}

std::string ExperimentConfig::mode_name() const {
  switch (mode) {
    case ConstraintMode::kNone:
      return "none";
    case ConstraintMode::kAutoKpe:
      return "auto-kpe";
    case ConstraintMode::kStrategy:
      return "strategy:" + std::string(strategy_name(strategy.strategy));
  }
  return "none";
}

int ExperimentConfig::default_beam(ConstraintMode mode) {
  return mode == ConstraintMode::kAutoKpe ? 10 : 5;
}

ReportAggregates aggregate(const std::vector<RecordRow>& rows) {
  if (rows.empty()) throw Error("cannot aggregate an empty report");
  ReportAggregates a;
  a.num_records = static_cast<int>(rows.size());
  std::vector<RougeTriple> none, cas, append;
  double c_sum = 0.0;
  for (const auto& r : rows) {
    if (r.constrained) {
      ++a.num_constrained;
      c_sum += r.c_total;
      if (r.fallback_used) ++a.num_fallback;
      if (!r.satisfied) ++a.num_unsatisfied;
    }
    none.push_back(r.rouge_s_prime);
    cas.push_back(r.rouge_s);
    append.push_back(r.rouge_append);
  }
  a.constrained_fraction =
      static_cast<double>(a.num_constrained) / a.num_records;
  a.mean_c_total = c_sum / a.num_records;
  a.unconstrained = corpus_rouge(none);
  a.cas = corpus_rouge(cas);
  a.append = corpus_rouge(append);
  return a;
}

RunReport run_experiment(const std::vector<DatasetRecord>& records,
                         const Summarizer& summarizer, const IdfTable& idf,
                         const ExperimentConfig& config) {
  config.decode.validate();
  if (records.empty()) throw ConfigError("experiment needs records");
  RunReport report;
  report.mode = config.mode_name();
  report.model = config.model_description;
  report.beam_size = config.decode.beam_size;
  report.max_length = config.decode.max_length;
  report.length_penalty_alpha = config.decode.length_penalty_alpha;
  report.seed = config.strategy.seed;
  report.min_score = config.kpe.min_score;
  report.rows.resize(records.size());
  parallel_for(records.size(), config.workers, [&](std::size_t i) {
    report.rows[i] = process_record(records[i], summarizer, idf, config);
  });
  report.aggregates = aggregate(report.rows);
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  throw ConfigError("unknown report format \"" + std::string(name) + "\"");
}

std::string report_to_json(const RunReport& report) {
  const bool with_s = report.has_constraints();
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = {{"id", r.id},
                {"s_prime", r.s_prime},
                {"rouge_s_prime", triple_json(r.rouge_s_prime)}};
    if (with_s) {
      row["constraints"] = r.constraints;
      row["c_total"] = r.c_total;
      row["constrained"] = r.constrained;
      row["s"] = r.s;
      row["s_append"] = r.s_append;
      row["satisfied"] = r.satisfied;
      row["fallback_used"] = r.fallback_used;
      row["rouge_s"] = triple_json(r.rouge_s);
      row["rouge_append"] = triple_json(r.rouge_append);
      if (!r.error.empty()) row["error"] = r.error;
    }
    rows.push_back(std::move(row));
  }
  const auto& a = report.aggregates;
  json agg = {{"num_records", a.num_records},
              {"unconstrained", corpus_json(a.unconstrained)}};
  if (with_s) {
    agg["num_constrained"] = a.num_constrained;
    agg["constrained_fraction"] = a.constrained_fraction;
    agg["mean_c_total"] = a.mean_c_total;
    agg["num_fallback"] = a.num_fallback;
    agg["num_unsatisfied"] = a.num_unsatisfied;
    agg["cas"] = corpus_json(a.cas);
    agg["append"] = corpus_json(a.append);
  }
  json out = {{"metadata",
               {{"mode", report.mode},
                {"model", report.model},
                {"beam_size", report.beam_size},
                {"max_length", report.max_length},
                {"length_penalty_alpha", report.length_penalty_alpha},
                {"seed", report.seed},
                {"min_score", report.min_score}}},
              {"aggregates", agg},
              {"rows", rows}};
  return out.dump(2);
}

RunReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport report;
    const json& m = j.at("metadata");
    report.mode = m.at("mode").get<std::string>();
    report.model = m.at("model").get<std::string>();
    report.beam_size = m.at("beam_size").get<int>();
    report.max_length = m.at("max_length").get<int>();
    report.length_penalty_alpha = m.at("length_penalty_alpha").get<double>();
    report.seed = m.at("seed").get<std::uint64_t>();
    report.min_score = m.at("min_score").get<double>();
    for (const json& jr : j.at("rows")) {
      RecordRow r;
      r.id = jr.at("id").get<std::string>();
      r.s_prime = jr.at("s_prime").get<std::string>();
      r.rouge_s_prime = triple_from(jr.at("rouge_s_prime"));
      r.rouge_s = r.rouge_s_prime;
      r.rouge_append = r.rouge_s_prime;
      if (jr.contains("s")) {
        r.constraints = jr.at("constraints").get<std::vector<std::string>>();
        r.c_total = jr.at("c_total").get<int>();
        r.constrained = jr.at("constrained").get<bool>();
        r.s = jr.at("s").get<std::string>();
        r.s_append = jr.at("s_append").get<std::string>();
        r.satisfied = jr.at("satisfied").get<bool>();
        r.fallback_used = jr.at("fallback_used").get<bool>();
        r.rouge_s = triple_from(jr.at("rouge_s"));
        r.rouge_append = triple_from(jr.at("rouge_append"));
        r.error = jr.value("error", "");
      }
      report.rows.push_back(std::move(r));
    }
    report.aggregates = aggregate(report.rows);
    const json& a = j.at("aggregates");
    report.aggregates.unconstrained = corpus_from(a.at("unconstrained"));
    if (a.contains("cas")) {
      report.aggregates.cas = corpus_from(a.at("cas"));
      report.aggregates.append = corpus_from(a.at("append"));
      report.aggregates.mean_c_total = a.at("mean_c_total").get<double>();
      report.aggregates.constrained_fraction =
          a.at("constrained_fraction").get<double>();
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const RunReport& report) {
  const bool with_s = report.has_constraints();
  std::ostringstream out;
  out << "id,s_prime,r1_s_prime,r2_s_prime,rl_s_prime";
  if (with_s) {
    out << ",constraints,c_total,constrained,satisfied,fallback_used,s,"
           "r1_s,r2_s,rl_s,s_append,r1_append,r2_append,rl_append";
  }
  out << '\n';
  auto f1s = [&](const RougeTriple& t) {
    out << ',' << fixed(t.r1.f1, 6) << ',' << fixed(t.r2.f1, 6) << ','
        << fixed(t.rl.f1, 6);
  };
  for (const auto& r : report.rows) {
    out << csv_field(r.id) << ',' << csv_field(r.s_prime);
    f1s(r.rouge_s_prime);
    if (with_s) {
      out << ',' << csv_field(join(r.constraints, " | ")) << ',' << r.c_total
          << ',' << r.constrained << ',' << r.satisfied << ','
          << r.fallback_used << ',' << csv_field(r.s);
      f1s(r.rouge_s);
      out << ',' << csv_field(r.s_append);
      f1s(r.rouge_append);
    }
    out << '\n';
  }
  return out.str();
}

std::string report_to_markdown(const std::vector<RunReport>& reports,
                               bool with_append) {
  if (reports.empty()) throw Error("no reports to tabulate");
  std::ostringstream out;
  out << "| Setting | R-1 | R-2 | R-L | C |\n";
  out << "|---|---:|---:|---:|---:|\n";
  auto line = [&](const std::string& name, const CorpusRouge& c,
                  double c_total) {
    out << "| " << name << " | " << fixed(c.r1, 2) << " | " << fixed(c.r2, 2)
        << " | " << fixed(c.rl, 2) << " | " << fixed(c_total, 2) << " |\n";
  };
  line("none", reports.front().aggregates.unconstrained, 0.0);
  for (const auto& r : reports) {
    if (!r.has_constraints()) continue;
    const std::string name = display_mode(r.mode);
    line(name, r.aggregates.cas, r.aggregates.mean_c_total);
    if (with_append) {
      line(name + " (append)", r.aggregates.append, r.aggregates.mean_c_total);
    }
  }
  return out.str();
}

void emit_report(const RunReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report to " + path);
  switch (format) {
    case ReportFormat::kJson:
      out << report_to_json(report) << '\n';
      break;
    case ReportFormat::kCsv:
      out << report_to_csv(report);
      break;
    case ReportFormat::kMarkdown:
      out << report_to_markdown({report});
      break;
  }
  if (!out) throw Error("error while writing " + path);
}

}  // namespace cas
