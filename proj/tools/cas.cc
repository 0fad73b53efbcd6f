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

// Command-line entry point: decode, kpe, constraints, rouge, experiment,
// bench, serve and synth.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cas/bench.h"
#include "cas/dataset.h"
#include "cas/decoder.h"
#include "cas/experiment.h"
#include "cas/http_service.h"
#include "cas/parallel.h"
#include "cas/session.h"
#include "cas/significance.h"
#include "cas/synthetic.h"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace cas;

struct ModelOptions {
  std::string spec = "synthetic";
  int order = 3;
  double lambda = 0.01;
  double copy_weight = CopyConfig{}.copy_weight;
  double lead_decay = CopyConfig{}.lead_decay;

  void add(CLI::App* cmd) {
    cmd->add_option("--model", spec,
                    "table:<json>, ngram:<corpus>, jsonl:<train file> or "
                    "synthetic[:<seed>]")
        ->capture_default_str();
    cmd->add_option("--order", order, "n-gram order")->capture_default_str();
    cmd->add_option("--lambda", lambda, "n-gram smoothing constant")
        ->capture_default_str();
    cmd->add_option("--copy-weight", copy_weight,
                    "weight of the document copy distribution")
        ->capture_default_str();
    cmd->add_option("--lead-decay", lead_decay,
                    "per-sentence decay of copy weight")
        ->capture_default_str();
  }

  ModelSpec to_spec() const {
    ModelSpec s = ModelSpec::parse(spec);
    s.order = order;
    s.lambda = lambda;
    s.copy = {copy_weight, lead_decay};
    return s;
  }
};

struct DecodeOptions {
  int beam = 0;  // 0: mode default
  int max_length = DecodeConfig{}.max_length;
  double alpha = DecodeConfig{}.length_penalty_alpha;
  int candidates = 0;
  std::uint64_t seed = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--beam", beam, "beam size (0 picks the default)");
    cmd->add_option("--max-length", max_length, "maximum generated tokens")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "length penalty exponent")
        ->capture_default_str();
    cmd->add_option("--candidates-per-hypothesis", candidates,
                    "top tokens proposed per hypothesis (0 = beam size)");
    cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  }

  DecodeConfig to_config(int default_beam) const {
    DecodeConfig d;
    d.beam_size = beam > 0 ? beam : default_beam;
    d.max_length = max_length;
    d.length_penalty_alpha = alpha;
    d.candidates_per_hypothesis = candidates;
    d.seed = seed;
    d.validate();
    return d;
  }
};

// Model plus evaluation records tokenized with its vocabulary.
struct Workspace {
  LoadedModel model;
  std::vector<DatasetRecord> records;
  std::string model_description;

  IdfTable idf() const {
    return IdfTable::from_documents(model.idf_documents,
                                    model.summarizer->vocab());
  }
};

Workspace load_workspace(const ModelOptions& mo, const std::string& data,
                         int limit) {
  Workspace ws;
  const ModelSpec spec = mo.to_spec();
  ws.model_description = spec.describe();
  if (data.empty() || data == "synthetic") {
    ws.model = load_model(spec, {});
    if (!data.empty()) {
      if (spec.kind == ModelSpec::Kind::kSynthetic) {
        ws.records = ws.model.synthetic_test;
      } else {
        SyntheticConfig sc;
        ws.records = generate_synthetic_corpus(sc).test;
      }
    }
  } else {
    auto loaded = load_jsonl(data);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    ws.records = std::move(loaded.records);
    ws.model = load_model(spec, ws.records);
  }
  tokenize_records(ws.records, ws.model.summarizer->vocab());
  if (limit > 0 && static_cast<int>(ws.records.size()) > limit) {
    ws.records.resize(limit);
  }
  return ws;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::vector<std::string> parse_constraint_list(const std::string& text) {
  if (text.empty()) return {};
  const json j = json::parse(text);
  if (!j.is_array()) throw ConfigError("constraints must be a JSON list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ConfigError("constraints must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

json result_json(const DecodeResult& r, const Vocabulary& vocab) {
  json tokens = json::array();
  for (TokenId t : r.tokens) tokens.push_back(vocab.text(t));
  json out = {{"summary", detokenize(r.tokens, vocab)},
              {"tokens", tokens},
              {"raw_logprob", r.raw_logprob},
              {"normalized_score", r.normalized_score},
              {"satisfied", r.satisfied},
              {"fallback_used", r.fallback_used},
              {"steps", r.steps},
              {"wall_time_ms", r.wall_time.count() * 1000.0}};
  if (!r.bank_trace.empty()) out["bank_trace"] = r.bank_trace;
  return out;
}

json rouge_row(const CorpusRouge& c) {
  return {{"r1", c.r1}, {"r2", c.r2}, {"rl", c.rl}};
}

// --- decode ----------------------------------------------------------------

struct DecodeCmd {
  ModelOptions model;
  DecodeOptions decode;
  std::string document, document_file, constraints, constraints_file;
  bool trace = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("decode", "Decode one summary");
    model.add(cmd);
    decode.add(cmd);
    cmd->add_option("--document", document, "source document text");
    cmd->add_option("--document-file", document_file, "file with the document");
    cmd->add_option("--constraints", constraints,
                    "JSON list of constraint phrases");
    cmd->add_option("--constraints-file", constraints_file,
                    "file with a JSON list of constraint phrases");
    cmd->add_flag("--trace", trace, "include per-step bank occupancy");
    cmd->callback([this] { run(); });
  }

  void run() {
    const ModelSpec spec = model.to_spec();
    std::string doc = document;
    if (!document_file.empty()) doc = read_file(document_file);
    std::vector<DatasetRecord> eval;
    if (!doc.empty()) {
      DatasetRecord r;
      r.id = "input";
      r.document = TextField::from_raw(doc);
      eval.push_back(r);
    }
    const LoadedModel loaded = load_model(spec, eval);
    const Vocabulary& vocab = loaded.summarizer->vocab();
    const auto texts = parse_constraint_list(
        constraints_file.empty() ? constraints : read_file(constraints_file));
    const ConstraintSet cs = ConstraintSet::from_texts(texts, vocab);
    for (const auto& w : cs.warnings()) std::cerr << "warning: " << w << '\n';
    DecodeConfig dc = decode.to_config(5);
    dc.trace = trace;
    const auto bound =
        loaded.summarizer->bind(tokenize_words(split_words(doc), vocab));
    const DecodeResult r = cs.empty() ? beam_search(*bound, dc)
                                      : dba_decode(*bound, cs, dc);
    json out = result_json(r, vocab);
    out["constraints"] = cs.texts();
    out["metadata"] = {{"model", spec.describe()},
                       {"beam_size", dc.beam_size},
                       {"max_length", dc.max_length},
                       {"length_penalty_alpha", dc.length_penalty_alpha},
                       {"seed", dc.seed}};
    std::cout << out.dump(2) << '\n';
  }
};

// --- kpe ---------------------------------------------------------------------

struct KpeCmd {
  ModelOptions model;
  DecodeOptions decode;
  std::string document, data, record;
  double min_score = kDefaultMinScore;
  int top_k = 3, limit = 20;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "kpe", "Rank keyphrases of a document and show the filter verdicts");
    model.add(cmd);
    decode.add(cmd);
    cmd->add_option("--document", document, "document text");
    cmd->add_option("--data", data, "dataset JSONL or \"synthetic\"");
    cmd->add_option("--record", record, "record id within --data");
    cmd->add_option("--min-score", min_score, "keyphrase score threshold")
        ->capture_default_str();
    cmd->add_option("--top-k", top_k, "phrases kept")->capture_default_str();
    cmd->add_option("--limit", limit, "candidates printed")
        ->capture_default_str();
    cmd->callback([this] { run(); });
  }

  void run() {
    Workspace ws = load_workspace(model, data.empty() ? "" : data, 0);
    const Vocabulary& vocab = ws.model.summarizer->vocab();
    TokenSequence doc;
    std::string id = "input";
    if (!data.empty()) {
      auto it = std::find_if(ws.records.begin(), ws.records.end(),
                             [&](const DatasetRecord& r) {
                               return record.empty() || r.id == record;
                             });
      if (it == ws.records.end()) throw ConfigError("record not found");
      doc = it->document.tokens;
      id = it->id;
    } else {
      doc = tokenize(document, vocab);
    }
    KpeConfig kpe;
    kpe.min_score = min_score;
    kpe.top_k = top_k;
    const DecodeConfig dc = decode.to_config(10);
    const DecodeResult s_prime =
        beam_search(*ws.model.summarizer->bind(doc), dc);
    const auto cands = extract_keyphrases(doc, vocab, ws.idf(), kpe);
    json list = json::array();
    for (const auto& d : explain_filter(cands, s_prime.tokens, kpe)) {
      if (static_cast<int>(list.size()) >= limit) break;
      list.push_back({{"text", detokenize(d.candidate.tokens, vocab)},
                      {"score", d.candidate.score},
                      {"first_position", d.candidate.first_position},
                      {"status", filter_reason_name(d.reason)}});
    }
    json out = {{"id", id},
                {"s_prime", detokenize(s_prime.tokens, vocab)},
                {"constraints",
                 filter_constraints(cands, s_prime.tokens, vocab, kpe).texts()},
                {"candidates", list},
                {"metadata",
                 {{"min_score", min_score},
                  {"top_k", top_k},
                  {"beam_size", dc.beam_size},
                  {"seed", dc.seed}}}};
    std::cout << out.dump(2) << '\n';
  }
};

// --- constraints -------------------------------------------------------------

struct ConstraintsCmd {
  ModelOptions model;
  DecodeOptions decode;
  std::string data = "synthetic", mode = "strategy:NER-miss", output;
  double min_score = kDefaultMinScore;
  int limit = 0, workers = 1;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "constraints", "Derive constraint sets for every record (JSONL)");
    model.add(cmd);
    decode.add(cmd);
    cmd->add_option("--data", data, "dataset JSONL or \"synthetic\"")
        ->capture_default_str();
    cmd->add_option("--mode", mode, "auto-kpe or strategy:<name>")
        ->capture_default_str();
    cmd->add_option("--min-score", min_score, "keyphrase score threshold")
        ->capture_default_str();
    cmd->add_option("--limit", limit, "use only the first N records");
    cmd->add_option("--workers", workers, "parallel workers")
        ->capture_default_str();
    cmd->add_option("--output", output, "output file (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    Workspace ws = load_workspace(model, data, limit);
    ExperimentConfig cfg;
    cfg.set_mode(mode);
    if (cfg.mode == ConstraintMode::kNone) {
      throw ConfigError("constraints needs auto-kpe or strategy:<name>");
    }
    cfg.decode = decode.to_config(ExperimentConfig::default_beam(cfg.mode));
    cfg.kpe.min_score = min_score;
    cfg.strategy.seed = decode.seed;
    cfg.workers = workers;
    cfg.model_description = ws.model_description;
    const RunReport report =
        run_experiment(ws.records, *ws.model.summarizer, ws.idf(), cfg);
    std::ostringstream out;
    for (const auto& r : report.rows) {
      out << json{{"id", r.id},
                  {"s_prime", r.s_prime},
                  {"constraints", r.constraints},
                  {"c_total", r.c_total},
                  {"mode", report.mode},
                  {"seed", report.seed}}
                 .dump()
          << '\n';
    }
    write_output(output, out.str());
    std::cerr << "mean C_total " << report.aggregates.mean_c_total
              << ", constrained fraction "
              << report.aggregates.constrained_fraction << '\n';
  }
};

// --- rouge -------------------------------------------------------------------

struct RougeCmd {
  std::string candidates, references, baseline, run_file;
  std::string metric = "r2";
  int resamples = 1000;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "rouge",
        "Score candidate summaries against references. JSONL lines hold "
        "{\"id\", \"text\"}; lines are matched by id");
    cmd->add_option("--candidates", candidates, "candidate JSONL");
    cmd->add_option("--references", references, "reference JSONL");
    cmd->add_option("--baseline", baseline,
                    "second candidate JSONL for significance tests");
    cmd->add_option("--run", run_file, "experiment JSON report to rescore");
    cmd->add_option("--metric", metric, "r1, r2 or rl for significance")
        ->capture_default_str();
    cmd->add_option("--resamples", resamples, "bootstrap/shuffle count")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "significance seed")->capture_default_str();
    cmd->callback([this] { run(); });
  }

  static std::vector<std::pair<std::string, std::string>> read_texts(
      const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const json j = json::parse(line);
      std::string id = j.contains("id") ? j["id"].dump() : std::to_string(n);
      if (j.contains("id") && j["id"].is_string()) id = j["id"];
      std::string text;
      for (const char* key : {"text", "summary", "reference"}) {
        if (j.contains(key)) {
          text = j[key].get<std::string>();
          break;
        }
      }
      out.emplace_back(id, text);
    }
    return out;
  }

  double pick(const RougeTriple& t) const {
    if (metric == "r1") return t.r1.f1;
    if (metric == "rl") return t.rl.f1;
    return t.r2.f1;
  }

  void run() {
    if (!run_file.empty()) {
      const RunReport r = report_from_json(read_file(run_file));
      std::cout << report_to_markdown({r});
      return;
    }
    if (candidates.empty() || references.empty()) {
      throw ConfigError("rouge needs --candidates and --references, or --run");
    }
    const auto refs = read_texts(references);
    std::map<std::string, std::string> ref_by_id(refs.begin(), refs.end());
    Vocabulary vocab;
    auto tok = [&](const std::string& text) {
      TokenSequence out;
      for (const auto& w : normalize_words(text)) out.push_back(vocab.add(w));
      return out;
    };
    auto score_file = [&](const std::string& path) {
      std::vector<RougeTriple> per;
      std::vector<std::string> ids;
      for (const auto& [id, text] : read_texts(path)) {
        auto it = ref_by_id.find(id);
        if (it == ref_by_id.end()) {
          throw DatasetError(path + ": no reference for id " + id);
        }
        per.push_back(rouge_all(tok(text), tok(it->second)));
        ids.push_back(id);
      }
      return std::make_pair(ids, per);
    };
    const auto [ids, per] = score_file(candidates);
    const CorpusRouge c = corpus_rouge(per);
    json out = {{"records", per.size()}, {"candidates", rouge_row(c)}};
    if (!baseline.empty()) {
      const auto [bids, bper] = score_file(baseline);
      if (bids != ids) {
        throw DatasetError("baseline ids must match candidate ids in order");
      }
      std::vector<double> a, b;
      for (std::size_t i = 0; i < per.size(); ++i) {
        a.push_back(pick(per[i]));
        b.push_back(pick(bper[i]));
      }
      const auto boot = paired_bootstrap(a, b, resamples, seed);
      const auto ar = approx_randomization(a, b, resamples, seed);
      out["baseline"] = rouge_row(corpus_rouge(bper));
      out["significance"] = {{"metric", metric},
                             {"bootstrap_p", boot.p_value},
                             {"approx_randomization_p", ar.p_value},
                             {"resamples", resamples},
                             {"seed", seed}};
    }
    std::cout << out.dump(2) << '\n';
  }
};

// --- experiment --------------------------------------------------------------

struct ExperimentCmd {
  ModelOptions model;
  DecodeOptions decode;
  std::string data = "synthetic", output, format = "json";
  std::vector<std::string> modes = {"none"};
  double min_score = kDefaultMinScore;
  int limit = 0, workers = 1;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("experiment", "Run the evaluation harness");
    model.add(cmd);
    decode.add(cmd);
    cmd->add_option("--data", data, "dataset JSONL or \"synthetic\"")
        ->capture_default_str();
    cmd->add_option("--mode", modes,
                    "none, auto-kpe or strategy:<name>; repeatable")
        ->capture_default_str();
    cmd->add_option("--min-score", min_score, "keyphrase score threshold")
        ->capture_default_str();
    cmd->add_option("--limit", limit, "use only the first N records");
    cmd->add_option("--workers", workers, "parallel workers")
        ->capture_default_str();
    cmd->add_option("--output", output,
                    "report path; with several modes the mode is inserted "
                    "before the extension");
    cmd->add_option("--format", format, "json, csv or markdown")
        ->capture_default_str();
    cmd->callback([this] { run(); });
  }

  static std::string path_for(const std::string& base, const std::string& mode,
                              bool several) {
    if (!several) return base;
    std::string tag = mode;
    std::replace(tag.begin(), tag.end(), ':', '-');
    const auto dot = base.rfind('.');
    if (dot == std::string::npos || dot < base.rfind('/') + 1) {
      return base + "." + tag;
    }
    return base.substr(0, dot) + "." + tag + base.substr(dot);
  }

  void run() {
    const ReportFormat fmt = parse_report_format(format);
    Workspace ws = load_workspace(model, data, limit);
    const IdfTable idf = ws.idf();
    std::vector<RunReport> reports;
    for (const auto& m : modes) {
      ExperimentConfig cfg;
      cfg.set_mode(m);
      cfg.decode = decode.to_config(ExperimentConfig::default_beam(cfg.mode));
      cfg.kpe.min_score = min_score;
      cfg.strategy.seed = decode.seed;
      cfg.workers = workers;
      cfg.model_description = ws.model_description;
      reports.push_back(
          run_experiment(ws.records, *ws.model.summarizer, idf, cfg));
      if (!output.empty()) {
        emit_report(reports.back(), fmt,
                    path_for(output, m, modes.size() > 1));
      }
      const auto& a = reports.back().aggregates;
      std::cerr << m << ": " << a.num_records << " records, "
                << a.num_constrained << " constrained, " << a.num_fallback
                << " fallback, seed " << decode.seed << '\n';
    }
    std::cout << report_to_markdown(reports);
  }
};

// --- bench -------------------------------------------------------------------

struct BenchCmd {
  ModelOptions model;
  std::string data = "synthetic", output;
  std::vector<int> beams = BenchConfig{}.beam_sizes;
  std::vector<int> counts = BenchConfig{}.constraint_counts;
  int reps = BenchConfig{}.repetitions, docs = 100;
  int max_length = BenchConfig{}.max_length;
  double alpha = BenchConfig{}.length_penalty_alpha;
  std::uint64_t seed = BenchConfig{}.seed;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("bench", "Time decoding (CSV)");
    model.add(cmd);
    cmd->add_option("--data", data, "dataset JSONL or \"synthetic\"")
        ->capture_default_str();
    cmd->add_option("--beams", beams, "beam sizes")->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--counts", counts, "constraint token counts")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--reps", reps, "timed repetitions (>= 3)")
        ->capture_default_str();
    cmd->add_option("--docs", docs, "documents timed")->capture_default_str();
    cmd->add_option("--max-length", max_length, "maximum generated tokens")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "length penalty exponent")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "constraint sampling seed")
        ->capture_default_str();
    cmd->add_option("--output", output, "CSV path (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    Workspace ws = load_workspace(model, data, docs);
    std::vector<BenchItem> items;
    for (const auto& r : ws.records) {
      items.push_back({ws.model.summarizer->bind(r.document.tokens),
                       r.document.tokens, r.reference.tokens});
    }
    BenchConfig bc;
    bc.beam_sizes = beams;
    bc.constraint_counts = counts;
    bc.repetitions = reps;
    bc.max_length = max_length;
    bc.length_penalty_alpha = alpha;
    bc.seed = seed;
    const BenchReport report = bench_decode(
        items, ws.model.summarizer->vocab(), bc, default_stopwords());
    write_output(output, "# seed=" + std::to_string(seed) +
                             " docs=" + std::to_string(report.num_docs) +
                             " model=" + ws.model_description + "\n" +
                             report.to_csv());
  }
};

// --- serve -------------------------------------------------------------------

HttpServer* g_server = nullptr;

extern "C" void handle_signal(int) {
  if (g_server) g_server->stop();
}

struct ServeCmd {
  ModelOptions model;
  DecodeOptions decode;
  std::string host = "127.0.0.1", cors = "*";
  int port = 8080, ttl = 3600;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("serve", "Run the session HTTP service");
    model.add(cmd);
    decode.add(cmd);
    cmd->add_option("--host", host, "bind address")->capture_default_str();
    cmd->add_option("--port", port, "port (0 picks one)")->capture_default_str();
    cmd->add_option("--cors-origin", cors, "allowed browser origin")
        ->capture_default_str();
    cmd->add_option("--ttl", ttl, "idle session lifetime in seconds")
        ->capture_default_str();
    cmd->callback([this] { run(); });
  }

  void run() {
    const LoadedModel loaded = load_model(model.to_spec(), {});
    SessionOptions opts;
    opts.decode = decode.to_config(5);
    opts.ttl = std::chrono::seconds(ttl);
    SessionService service(
        loaded.summarizer,
        IdfTable::from_documents(loaded.idf_documents,
                                 loaded.summarizer->vocab()),
        opts);
    HttpServer server(service, cors);
    const int bound = server.bind(host, port);
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "serving on http://" << host << ':' << bound << " (model "
              << model.to_spec().describe() << ", beam "
              << opts.decode.beam_size << ")\n";
    server.run();
    g_server = nullptr;
  }
};

// --- synth -------------------------------------------------------------------

struct SynthCmd {
  SyntheticConfig config;
  std::string train_out = "synthetic_train.jsonl";
  std::string test_out = "synthetic_test.jsonl";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("synth", "Write the synthetic corpus");
    cmd->add_option("--seed", config.seed, "world seed")->capture_default_str();
    cmd->add_option("--train", config.num_train, "training records")
        ->capture_default_str();
    cmd->add_option("--test", config.num_test, "test records")
        ->capture_default_str();
    cmd->add_option("--train-out", train_out, "training JSONL path")
        ->capture_default_str();
    cmd->add_option("--test-out", test_out, "test JSONL path")
        ->capture_default_str();
    cmd->callback([this] { run(); });
  }

  void run() {
    const SyntheticCorpus corpus = generate_synthetic_corpus(config);
    save_jsonl(corpus.train, train_out);
    save_jsonl(corpus.test, test_out);
    std::cerr << "wrote " << corpus.train.size() << " + " << corpus.test.size()
              << " records (seed " << config.seed << ")\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained abstractive summarization toolkit"};
  app.set_config("--config", "",
                 "read options from a key=value file ([subcommand] sections)");
  app.require_subcommand(1);

  DecodeCmd decode;
  KpeCmd kpe;
  ConstraintsCmd constraints;
  RougeCmd rouge;
  ExperimentCmd experiment;
  BenchCmd bench;
  ServeCmd serve;
  SynthCmd synth;
  decode.add(app);
  kpe.add(app);
  constraints.add(app);
  rouge.add(app);
  experiment.add(app);
  bench.add(app);
  serve.add(app);
  synth.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const cas::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
