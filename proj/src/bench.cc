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

#include "cas/bench.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "cas/decoder.h"
#include "cas/errors.h"

namespace cas {
namespace {

using Clock = std::chrono::steady_clock;

bool content_token(TokenId t, const Vocabulary& vocab,
                   const std::unordered_set<std::string>& stopwords) {
  if (Vocabulary::is_special(t)) return false;
  const std::string& w = vocab.text(t);
  return !is_punctuation(w) && !stopwords.count(w);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

BenchRow make_row(std::string mode, int beam, int c_total, double mean_c,
                  double seconds, int docs, int reps) {
  BenchRow row;
  row.mode = std::move(mode);
  row.beam_size = beam;
  row.c_total = c_total;
  row.mean_c_total = mean_c;
  row.median_seconds = seconds;
  row.mean_doc_seconds = seconds / docs;
  row.docs_per_sec = seconds > 0 ? docs / seconds : 0.0;
  row.repetitions = reps;
  return row;
}

}  // namespace

const BenchRow* BenchReport::find(const std::string& mode, int beam_size,
                                  int c_total) const {
  for (const auto& r : rows) {
    if (r.mode == mode && r.beam_size == beam_size && r.c_total == c_total) {
      return &r;
    }
  }
  return nullptr;
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "mode,beam_size,c_total,mean_c_total,median_seconds,"
         "mean_doc_seconds,docs_per_sec,repetitions\n";
  out.precision(9);
  for (const auto& r : rows) {
    out << r.mode << ',' << r.beam_size << ',' << r.c_total << ','
        << r.mean_c_total << ',' << r.median_seconds << ','
        << r.mean_doc_seconds << ',' << r.docs_per_sec << ','
        << r.repetitions << '\n';
  }
  return out.str();
}

std::vector<ConstraintSet> bench_constraints(
    const std::vector<BenchItem>& items, const Vocabulary& vocab, int count,
    std::uint64_t seed, const std::unordered_set<std::string>& stopwords) {
  std::vector<ConstraintSet> out;
  out.reserve(items.size());
  std::mt19937_64 rng(seed);
  for (const auto& item : items) {
    const std::set<TokenId> in_doc(item.document.begin(), item.document.end());
    std::vector<TokenId> primary, extra;
    std::set<TokenId> seen;
    for (TokenId t : item.reference) {
      if (in_doc.count(t) && content_token(t, vocab, stopwords) &&
          seen.insert(t).second) {
        primary.push_back(t);
      }
    }
    for (TokenId t : item.document) {
      if (content_token(t, vocab, stopwords) && seen.insert(t).second) {
        extra.push_back(t);
      }
    }
    std::shuffle(primary.begin(), primary.end(), rng);
    std::shuffle(extra.begin(), extra.end(), rng);
    primary.insert(primary.end(), extra.begin(), extra.end());
    ConstraintSet cs;
    for (int i = 0; i < count && i < static_cast<int>(primary.size()); ++i) {
      cs.add({{primary[i]}, vocab.text(primary[i])});
    }
    out.push_back(std::move(cs));
  }
  return out;
}

BenchReport bench_decode(const std::vector<BenchItem>& items,
                         const Vocabulary& vocab, const BenchConfig& config,
                         const std::unordered_set<std::string>& stopwords) {
  if (items.empty()) throw ConfigError("bench needs at least one document");
  if (config.beam_sizes.empty()) throw ConfigError("bench needs beam sizes");
  if (config.repetitions < 3) {
    throw ConfigError("bench needs at least 3 repetitions");
  }
  const int docs = static_cast<int>(items.size());
  BenchReport report;
  report.num_docs = docs;
  report.seed = config.seed;

  std::vector<std::pair<int, std::vector<ConstraintSet>>> sets;
  for (int c : config.constraint_counts) {
    sets.emplace_back(c, bench_constraints(items, vocab, c, config.seed,
                                           stopwords));
  }

  // Repetitions are interleaved across configurations so that slow
  // stretches of machine time land on every row alike.
  struct Job {
    BenchRow row;
    std::function<void()> pass;
    std::vector<double> times;
  };
  std::vector<Job> jobs;
  for (int beam : config.beam_sizes) {
    DecodeConfig dc;
    dc.beam_size = beam;
    dc.max_length = config.max_length;
    dc.length_penalty_alpha = config.length_penalty_alpha;
    dc.seed = config.seed;
    dc.validate();
    if (config.include_unconstrained) {
      jobs.push_back({make_row("unconstrained", beam, 0, 0.0, 0.0, docs,
                               config.repetitions),
                      [&items, dc] {
                        for (const auto& item : items) {
                          beam_search(*item.model, dc);
                        }
                      },
                      {}});
    }
    for (const auto& [c, per_doc] : sets) {
      double mean_c = 0.0;
      for (const auto& cs : per_doc) mean_c += cs.total_tokens();
      mean_c /= docs;
      jobs.push_back({make_row("dba", beam, c, mean_c, 0.0, docs,
                               config.repetitions),
                      [&items, &per_doc = per_doc, dc] {
                        for (std::size_t i = 0; i < items.size(); ++i) {
                          dba_decode(*items[i].model, per_doc[i], dc);
                        }
                      },
                      {}});
    }
  }
  for (int w = 0; w < config.warmup; ++w) {
    for (auto& job : jobs) job.pass();
  }
  for (int r = 0; r < config.repetitions; ++r) {
    for (auto& job : jobs) {
      const auto t0 = Clock::now();
      job.pass();
      job.times.push_back(
          std::chrono::duration<double>(Clock::now() - t0).count());
    }
  }
  for (auto& job : jobs) {
    const double t = median(job.times);
    auto row = make_row(job.row.mode, job.row.beam_size, job.row.c_total,
                        job.row.mean_c_total, t, docs, config.repetitions);
    row.seconds = job.times;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace cas
