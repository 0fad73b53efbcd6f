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

#include "cas/session.h"

#include <algorithm>
#include <cstdio>
#include <ctime>

namespace cas {
namespace {

TokenSequence strip_eos(std::span<const TokenId> seq) {
  TokenSequence out;
  for (TokenId t : seq) {
    if (t != Vocabulary::kEos && t != Vocabulary::kBos) out.push_back(t);
  }
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

TextField field_for(const std::string& raw, const Vocabulary& vocab) {
  TextField f = TextField::from_raw(raw);
  f.tokens = tokenize_words(f.words, vocab);
  return f;
}

}  // namespace

std::vector<DiffSpan> token_diff(std::span<const TokenId> before,
                                 std::span<const TokenId> after,
                                 const Vocabulary& vocab) {
  const TokenSequence a = strip_eos(before);
  const TokenSequence b = strip_eos(after);
  const std::size_t n = a.size(), m = b.size();
  // lcs[i][j]: LCS length of a[i..] and b[j..]
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1
                               : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<DiffSpan> out;
  auto extend = [&](bool added, std::size_t pos, TokenId tok) {
    const int p = static_cast<int>(pos);
    if (!out.empty() && out.back().added == added && out.back().end == p) {
      out.back().end = p + 1;
      out.back().text += " " + vocab.text(tok);
    } else {
      out.push_back({added, p, p + 1, vocab.text(tok)});
    }
  };
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      ++i;
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      extend(true, j, b[j]);
      ++j;
    } else {
      extend(false, i, a[i]);
      ++i;
    }
  }
  return out;
}

SessionService::SessionService(std::shared_ptr<const Summarizer> summarizer,
                               IdfTable idf, SessionOptions options,
                               Clock clock)
    : summarizer_(std::move(summarizer)),
      idf_(std::move(idf)),
      options_(std::move(options)),
      clock_(clock ? std::move(clock)
                   : Clock([] { return std::chrono::steady_clock::now(); })),
      id_rng_(std::random_device{}()) {
  options_.decode.validate();
}

std::string SessionService::new_id() {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%06llx%012llx",
                static_cast<unsigned long long>(++counter_ & 0xffffff),
                static_cast<unsigned long long>(id_rng_() & 0xffffffffffffULL));
  return buf;
}

Iteration SessionService::make_iteration(const Session& s,
                                         const ConstraintSet& cs,
                                         const DecodeResult& result) const {
  Iteration it;
  it.index = static_cast<int>(s.iterations.size());
  it.constraints = cs.texts();
  it.tokens = result.tokens;
  it.summary = detokenize(result.tokens, vocab());
  it.satisfied = result.satisfied;
  it.fallback_used = result.fallback_used;
  it.raw_logprob = result.raw_logprob;
  it.normalized_score = result.normalized_score;
  it.steps = result.steps;
  it.wall_ms = result.wall_time.count() * 1000.0;
  if (s.reference) it.rouge = rouge_all(result.tokens, s.reference->tokens);
  if (!s.iterations.empty()) {
    it.diff = token_diff(s.iterations.back().tokens, result.tokens, vocab());
  }
  it.timestamp = utc_now();
  return it;
}

std::string SessionService::create(const std::string& document,
                                   const std::optional<std::string>& reference,
                                   const std::optional<DecodeConfig>& decode) {
  auto s = std::make_shared<Session>();
  s->document = field_for(document, vocab());
  if (s->document.words.empty()) {
    throw ServiceError(400, "empty_document", "document must not be empty");
  }
  if (reference) {
    s->reference = field_for(*reference, vocab());
    if (s->reference->words.empty()) s->reference.reset();
  }
  s->decode = decode.value_or(options_.decode);
  try {
    s->decode.validate();
  } catch (const ConfigError& e) {
    throw ServiceError(400, "invalid_config", e.what());
  }
  s->model = summarizer_->bind(s->document.tokens);
  const DecodeResult result = beam_search(*s->model, s->decode);
  s->iterations.push_back(make_iteration(*s, ConstraintSet{}, result));

  evict_expired();
  std::lock_guard<std::mutex> lock(mu_);
  s->id = new_id();
  while (sessions_.count(s->id)) s->id = new_id();
  s->last_access = clock_();
  sessions_.emplace(s->id, s);
  return s->id;
}

std::shared_ptr<SessionService::Session> SessionService::find(
    const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  const auto now = clock_();
  if (it == sessions_.end() || now - it->second->last_access > options_.ttl) {
    if (it != sessions_.end()) sessions_.erase(it);
    throw ServiceError(404, "session_not_found",
                       "no session with id \"" + id + "\"");
  }
  it->second->last_access = now;
  return it->second;
}

SessionSnapshot SessionService::get(const std::string& id) {
  auto s = find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  SessionSnapshot snap{s->id, s->document.raw, std::nullopt, s->decode,
                       s->iterations};
  if (s->reference) snap.reference = s->reference->raw;
  return snap;
}

std::vector<Suggestion> SessionService::suggest(const std::string& id) {
  auto s = find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  const auto candidates =
      extract_keyphrases(s->document.tokens, vocab(), idf_, options_.kpe);
  const auto& s_prime = s->iterations.front().tokens;
  std::vector<Suggestion> out;
  for (const auto& d : explain_filter(candidates, s_prime, options_.kpe)) {
    if (static_cast<int>(out.size()) >= options_.max_suggestions) break;
    out.push_back({detokenize(d.candidate.tokens, vocab()), d.candidate.score,
                   d.candidate.first_position,
                   d.reason == FilterReason::kInSummary,
                   std::string(filter_reason_name(d.reason))});
  }
  return out;
}

Iteration SessionService::regenerate(
    const std::string& id, const std::vector<std::string>& constraints) {
  auto s = find(id);
  auto issues = check_constraint_texts(constraints, vocab());
  if (!issues.empty()) {
    throw ServiceError(400, "invalid_constraints",
                       "some constraints cannot be generated by the model",
                       std::move(issues));
  }
  const ConstraintSet cs = ConstraintSet::from_texts(constraints, vocab());
  std::lock_guard<std::mutex> lock(s->mu);
  DecodeResult result;
  try {
    result = dba_decode(*s->model, cs, s->decode);
  } catch (const ConstraintError& e) {
    const auto pos = std::find(constraints.begin(), constraints.end(),
                               e.phrase());
    const auto index = static_cast<std::size_t>(
        pos == constraints.end() ? 0 : pos - constraints.begin());
    throw ServiceError(400, "invalid_constraints", e.what(),
                       {{index, e.phrase(), e.what()}});
  }
  s->iterations.push_back(make_iteration(*s, cs, result));
  return s->iterations.back();
}

std::vector<Iteration> SessionService::history(const std::string& id) {
  auto s = find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  return s->iterations;
}

std::size_t SessionService::evict_expired() {
  std::lock_guard<std::mutex> lock(mu_);
  const auto now = clock_();
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_access > options_.ttl) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionService::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

}  // namespace cas
