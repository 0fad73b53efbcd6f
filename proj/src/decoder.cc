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

#include "cas/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cas/errors.h"

namespace cas {
namespace {

using Clock = std::chrono::steady_clock;

// Appends the k best admissible tokens (ties to the lower id). BOS and UNK
// are never admissible; EOS only when `allow_eos`.
void top_tokens(const std::vector<double>& logp, int k, bool allow_eos,
                std::vector<TokenId>& out) {
  std::vector<TokenId> ids;
  ids.reserve(logp.size());
  for (std::size_t i = 0; i < logp.size(); ++i) {
    const auto id = static_cast<TokenId>(i);
    if (id == Vocabulary::kBos || id == Vocabulary::kUnk) continue;
    if (id == Vocabulary::kEos && !allow_eos) continue;
    ids.push_back(id);
  }
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take),
                    ids.end(), [&logp](TokenId a, TokenId b) {
                      const double la = logp[static_cast<std::size_t>(a)];
                      const double lb = logp[static_cast<std::size_t>(b)];
                      return la != lb ? la > lb : a < b;
                    });
  out.insert(out.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take));
}

struct Candidate {
  int parent;
  TokenId token;
  double logprob;
  double score;
  ConstraintState state;
  bool finished;
};

// Lexicographic rank of each hypothesis. All live hypotheses have the same
// length, so (parent rank, token) orders candidates lexicographically.
std::vector<int> lexicographic_ranks(const std::vector<Hypothesis>& beam) {
  std::vector<int> order(beam.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&beam](int a, int b) {
    return beam[static_cast<std::size_t>(a)].tokens <
           beam[static_cast<std::size_t>(b)].tokens;
  });
  std::vector<int> rank(beam.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  }
  return rank;
}

void sort_candidates(std::vector<Candidate>& cands,
                     const std::vector<int>& rank) {
  std::sort(cands.begin(), cands.end(),
            [&rank](const Candidate& a, const Candidate& b) {
              if (a.score != b.score) return a.score > b.score;
              const int ra = rank[static_cast<std::size_t>(a.parent)];
              const int rb = rank[static_cast<std::size_t>(b.parent)];
              if (ra != rb) return ra < rb;
              return a.token < b.token;
            });
}

Hypothesis materialize(const std::vector<Hypothesis>& beam, Candidate&& c) {
  Hypothesis h;
  const auto& parent = beam[static_cast<std::size_t>(c.parent)];
  h.tokens.reserve(parent.tokens.size() + 1);
  h.tokens = parent.tokens;
  h.tokens.push_back(c.token);
  h.logprob = c.logprob;
  h.cstate = std::move(c.state);
  h.finished = c.finished;
  return h;
}

const Hypothesis& best_of(const std::vector<Hypothesis>& hyps, double alpha) {
  const Hypothesis* best = &hyps.front();
  double best_score = length_normalized_score(
      best->logprob, static_cast<int>(best->tokens.size()), alpha);
  for (const auto& h : hyps) {
    const double s = length_normalized_score(
        h.logprob, static_cast<int>(h.tokens.size()), alpha);
    if (ranks_before(s, h.tokens, best_score, best->tokens)) {
      best = &h;
      best_score = s;
    }
  }
  return *best;
}

DecodeResult finish(const Hypothesis& h, const ConstraintSet& constraints,
                    const DecodeConfig& config, int steps, bool fallback) {
  DecodeResult r;
  r.tokens = h.tokens;
  r.raw_logprob = h.logprob;
  r.normalized_score = length_normalized_score(
      h.logprob, static_cast<int>(h.tokens.size()), config.length_penalty_alpha);
  r.satisfied = contains_all(r.tokens, constraints);
  r.fallback_used = fallback;
  r.steps = steps;
  return r;
}

// Best hypothesis of the highest nonempty bank, with its unmet phrases and
// EOS appended and scored by the model.
Hypothesis append_unmet(const ScoringModel& model,
                        const std::vector<Hypothesis>& live,
                        const ConstraintSet& constraints, double alpha) {
  int top_bank = -1;
  for (const auto& h : live) {
    top_bank = std::max(top_bank, h.cstate.num_met_tokens());
  }
  std::vector<Hypothesis> bank;
  for (const auto& h : live) {
    if (h.cstate.num_met_tokens() == top_bank) bank.push_back(h);
  }
  Hypothesis h = best_of(bank, alpha);
  auto extend = [&](TokenId tok) {
    const auto logp = model.next_logprobs(h.tokens);
    h.logprob += logp[static_cast<std::size_t>(tok)];
    h.tokens.push_back(tok);
  };
  for (std::size_t p = 0; p < constraints.size(); ++p) {
    if (h.cstate.completed(p)) continue;
    for (TokenId tok : constraints.phrases()[p].tokens) extend(tok);
  }
  extend(Vocabulary::kEos);
  h.finished = true;
  return h;
}

}  // namespace

int BankAllocation::total() const {
  return std::accumulate(slots.begin(), slots.end(), 0);
}

double length_normalized_score(double logprob, int length, double alpha) {
  return logprob / std::pow((5.0 + static_cast<double>(length)) / 6.0, alpha);
}

bool ranks_before(double score_a, std::span<const TokenId> tokens_a,
                  double score_b, std::span<const TokenId> tokens_b) {
  if (score_a != score_b) return score_a > score_b;
  return std::lexicographical_compare(tokens_a.begin(), tokens_a.end(),
                                      tokens_b.begin(), tokens_b.end());
}

BankAllocation allocate_banks(std::span<const int> counts, int beam_size) {
  if (beam_size < 1) throw ConfigError("beam_size must be >= 1");
  if (counts.empty()) throw ConfigError("allocate_banks needs at least one bank");
  const int nbanks = static_cast<int>(counts.size());
  const int base = beam_size / nbanks;
  const int extra = beam_size % nbanks;
  BankAllocation alloc;
  alloc.slots.resize(counts.size());
  for (int b = 0; b < nbanks; ++b) {
    alloc.slots[static_cast<std::size_t>(b)] = base + (b >= nbanks - extra ? 1 : 0);
  }
  auto surplus = [&](int b) {
    return counts[static_cast<std::size_t>(b)] >
           alloc.slots[static_cast<std::size_t>(b)];
  };
  for (int b = 0; b < nbanks; ++b) {
    auto& mine = alloc.slots[static_cast<std::size_t>(b)];
    while (mine > counts[static_cast<std::size_t>(b)]) {
      int target = -1;
      for (int d = 1; d < nbanks && target < 0; ++d) {
        if (b + d < nbanks && surplus(b + d)) {
          target = b + d;
        } else if (b - d >= 0 && surplus(b - d)) {
          target = b - d;
        }
      }
      --mine;
      if (target >= 0) ++alloc.slots[static_cast<std::size_t>(target)];
    }
  }
  return alloc;
}

DecodeResult dba_decode(const ScoringModel& model,
                        const ConstraintSet& constraints,
                        const DecodeConfig& config) {
  config.validate();
  const auto start = Clock::now();
  const ConstraintTrie trie(constraints, model.vocab());
  const std::size_t nbanks = static_cast<std::size_t>(trie.total_tokens()) + 1;
  const int k = config.effective_candidates();
  const double alpha = config.length_penalty_alpha;

  std::vector<Hypothesis> beam{Hypothesis{{}, 0.0, trie.initial_state(), false}};
  std::vector<Hypothesis> last_live = beam;
  std::vector<Hypothesis> completed;
  std::vector<std::vector<int>> trace;
  std::vector<std::vector<Candidate>> banks(nbanks);
  std::vector<TokenId> proposals;
  int step = 0;

  while (!beam.empty() &&
         static_cast<int>(completed.size()) < config.beam_size &&
         step <= config.max_length) {
    ++step;
    const bool forced = step > config.max_length;
    const auto rank = lexicographic_ranks(beam);
    for (auto& bank : banks) bank.clear();

    for (std::size_t p = 0; p < beam.size(); ++p) {
      const Hypothesis& h = beam[p];
      const bool satisfied = h.cstate.all_satisfied();
      if (forced && !satisfied) continue;
      const auto logp = model.next_logprobs(h.tokens);
      proposals.clear();
      if (forced) {
        proposals.push_back(Vocabulary::kEos);
      } else {
        top_tokens(logp, k, satisfied, proposals);
        const auto advancing = trie.advancing_tokens(h.cstate);
        proposals.insert(proposals.end(), advancing.begin(), advancing.end());
        std::sort(proposals.begin(), proposals.end());
        proposals.erase(std::unique(proposals.begin(), proposals.end()),
                        proposals.end());
      }
      const int length = static_cast<int>(h.tokens.size()) + 1;
      for (TokenId tok : proposals) {
        Candidate c{static_cast<int>(p),
                    tok,
                    h.logprob + logp[static_cast<std::size_t>(tok)],
                    0.0,
                    tok == Vocabulary::kEos ? h.cstate : trie.advance(h.cstate, tok),
                    tok == Vocabulary::kEos};
        c.score = length_normalized_score(c.logprob, length, alpha);
        banks[static_cast<std::size_t>(c.state.num_met_tokens())].push_back(
            std::move(c));
      }
    }

    std::vector<int> counts(nbanks);
    for (std::size_t b = 0; b < nbanks; ++b) {
      counts[b] = static_cast<int>(banks[b].size());
      sort_candidates(banks[b], rank);
    }
    const BankAllocation alloc = allocate_banks(
        counts, config.beam_size - static_cast<int>(completed.size()));

    std::vector<Hypothesis> next;
    for (std::size_t b = 0; b < nbanks; ++b) {
      for (int i = 0; i < alloc.slots[b]; ++i) {
        Hypothesis h = materialize(beam, std::move(banks[b][static_cast<std::size_t>(i)]));
        (h.finished ? completed : next).push_back(std::move(h));
      }
    }
    if (config.trace) trace.push_back(alloc.slots);
    if (!next.empty()) last_live = next;
    beam = std::move(next);
  }

  DecodeResult result;
  if (!completed.empty()) {
    result = finish(best_of(completed, alpha), constraints, config, step, false);
  } else {
    result = finish(append_unmet(model, last_live, constraints, alpha),
                    constraints, config, step, true);
  }
  result.bank_trace = std::move(trace);
  result.wall_time = Clock::now() - start;
  return result;
}

DecodeResult beam_search(const ScoringModel& model, const DecodeConfig& config) {
  config.validate();
  const auto start = Clock::now();
  const int k = config.effective_candidates();
  const double alpha = config.length_penalty_alpha;
  const ConstraintSet none;

  std::vector<Hypothesis> beam{Hypothesis{}};
  std::vector<Hypothesis> last_live = beam;
  std::vector<Hypothesis> completed;
  std::vector<std::vector<int>> trace;
  std::vector<Candidate> cands;
  std::vector<TokenId> proposals;
  int step = 0;

  while (!beam.empty() &&
         static_cast<int>(completed.size()) < config.beam_size &&
         step <= config.max_length) {
    ++step;
    const bool forced = step > config.max_length;
    const auto rank = lexicographic_ranks(beam);
    cands.clear();
    for (std::size_t p = 0; p < beam.size(); ++p) {
      const Hypothesis& h = beam[p];
      const auto logp = model.next_logprobs(h.tokens);
      proposals.clear();
      if (forced) {
        proposals.push_back(Vocabulary::kEos);
      } else {
        top_tokens(logp, k, true, proposals);
        std::sort(proposals.begin(), proposals.end());
      }
      const int length = static_cast<int>(h.tokens.size()) + 1;
      for (TokenId tok : proposals) {
        const double lp = h.logprob + logp[static_cast<std::size_t>(tok)];
        cands.push_back({static_cast<int>(p), tok, lp,
                         length_normalized_score(lp, length, alpha), h.cstate,
                         tok == Vocabulary::kEos});
      }
    }
    sort_candidates(cands, rank);
    const auto keep = std::min<std::size_t>(
        cands.size(), static_cast<std::size_t>(config.beam_size) - completed.size());
    std::vector<Hypothesis> next;
    for (std::size_t i = 0; i < keep; ++i) {
      Hypothesis h = materialize(beam, std::move(cands[i]));
      (h.finished ? completed : next).push_back(std::move(h));
    }
    if (config.trace) trace.push_back({static_cast<int>(keep)});
    if (!next.empty()) last_live = next;
    beam = std::move(next);
  }

  DecodeResult result;
  if (!completed.empty()) {
    result = finish(best_of(completed, alpha), none, config, step, false);
  } else {
    result = finish(append_unmet(model, last_live, none, alpha), none, config,
                    step, true);
  }
  result.bank_trace = std::move(trace);
  result.wall_time = Clock::now() - start;
  return result;
}

DecodeResult append_baseline(const DecodeResult& unconstrained,
                             const ConstraintSet& constraints) {
  if (constraints.empty()) return unconstrained;
  DecodeResult r = unconstrained;
  r.tokens.clear();
  for (TokenId t : unconstrained.tokens) {
    if (t != Vocabulary::kEos) r.tokens.push_back(t);
  }
  for (const auto& p : constraints.phrases()) {
    r.tokens.insert(r.tokens.end(), p.tokens.begin(), p.tokens.end());
  }
  r.tokens.push_back(Vocabulary::kEos);
  r.raw_logprob = std::numeric_limits<double>::quiet_NaN();
  r.normalized_score = std::numeric_limits<double>::quiet_NaN();
  r.satisfied = true;
  r.fallback_used = true;
  r.bank_trace.clear();
  return r;
}

}  // namespace cas
