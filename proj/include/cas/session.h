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

#ifndef CAS_SESSION_H_
#define CAS_SESSION_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cas/constraints.h"
#include "cas/copy_model.h"
#include "cas/dataset.h"
#include "cas/decoder.h"
#include "cas/errors.h"
#include "cas/keyphrase.h"
#include "cas/rouge.h"

namespace cas {

// Error carrying an HTTP-style status and a machine-readable code.
class ServiceError : public Error {
 public:
  ServiceError(int status, std::string code, const std::string& message,
               std::vector<ConstraintIssue> issues = {})
      : Error(message),
        status_(status),
        code_(std::move(code)),
        issues_(std::move(issues)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const std::vector<ConstraintIssue>& issues() const { return issues_; }

 private:
  int status_;
  std::string code_;
  std::vector<ConstraintIssue> issues_;
};

// A run of tokens present in only one of two summaries. Positions index the
// summary the span belongs to (the old one for removals).
struct DiffSpan {
  bool added = false;
  int start = 0;
  int end = 0;
  std::string text;
  bool operator==(const DiffSpan&) const = default;
};

// Token-level diff through a longest common subsequence. EOS is ignored.
std::vector<DiffSpan> token_diff(std::span<const TokenId> before,
                                 std::span<const TokenId> after,
                                 const Vocabulary& vocab);

struct Iteration {
  int index = 0;
  std::vector<std::string> constraints;
  TokenSequence tokens;
  std::string summary;
  bool satisfied = true;
  bool fallback_used = false;
  double raw_logprob = 0.0;
  double normalized_score = 0.0;
  int steps = 0;
  double wall_ms = 0.0;
  std::optional<RougeTriple> rouge;
  std::vector<DiffSpan> diff;  // against the previous iteration
  std::string timestamp;       // UTC, ISO 8601
};

struct Suggestion {
  std::string text;
  double score = 0.0;
  int first_position = 0;
  bool in_summary = false;
  std::string status;  // filter_reason_name of the filter decision
};

struct SessionSnapshot {
  std::string id;
  std::string document;
  std::optional<std::string> reference;
  DecodeConfig decode;
  std::vector<Iteration> iterations;
};

struct SessionOptions {
  DecodeConfig decode;
  KpeConfig kpe;
  std::chrono::seconds ttl{3600};
  int max_suggestions = 20;
};

// In-memory interactive summarization sessions over one shared summarizer.
// Calls on different sessions run in parallel; calls on one session are
// serialized. Sessions idle for longer than the TTL are evicted.
class SessionService {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  SessionService(std::shared_ptr<const Summarizer> summarizer, IdfTable idf,
                 SessionOptions options, Clock clock = nullptr);

  // Runs the unconstrained decode as iteration 0. Throws ServiceError 400
  // for an empty document or invalid decode settings.
  std::string create(const std::string& document,
                     const std::optional<std::string>& reference,
                     const std::optional<DecodeConfig>& decode = std::nullopt);

  // The following throw ServiceError 404 for unknown or expired ids.
  SessionSnapshot get(const std::string& id);
  // Ranked keyphrases with the filter verdict against iteration 0.
  std::vector<Suggestion> suggest(const std::string& id);
  // Decodes with exactly `constraints` and appends an iteration. Throws
  // ServiceError 400 with per-constraint issues when any phrase cannot be
  // represented; nothing is appended then.
  Iteration regenerate(const std::string& id,
                       const std::vector<std::string>& constraints);
  std::vector<Iteration> history(const std::string& id);

  // Drops expired sessions; returns how many.
  std::size_t evict_expired();
  std::size_t size() const;
  const SessionOptions& options() const { return options_; }
  const Vocabulary& vocab() const { return summarizer_->vocab(); }

 private:
  struct Session {
    std::mutex mu;
    std::string id;
    TextField document;
    std::optional<TextField> reference;
    DecodeConfig decode;
    std::shared_ptr<const ScoringModel> model;
    std::vector<Iteration> iterations;
    std::chrono::steady_clock::time_point last_access;
  };

  std::shared_ptr<Session> find(const std::string& id);
  Iteration make_iteration(const Session& s, const ConstraintSet& cs,
                           const DecodeResult& result) const;
  std::string new_id();

  std::shared_ptr<const Summarizer> summarizer_;
  IdfTable idf_;
  SessionOptions options_;
  Clock clock_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 id_rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace cas

#endif  // CAS_SESSION_H_
