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

#ifndef CAS_DECODER_H_
#define CAS_DECODER_H_

#include <chrono>
#include <span>
#include <vector>

#include "cas/constraints.h"
#include "cas/scoring_model.h"

namespace cas {

struct Hypothesis {
  TokenSequence tokens;
  double logprob = 0.0;
  ConstraintState cstate;
  bool finished = false;
};

// Beam slots per bank; bank b holds hypotheses with b met constraint tokens.
struct BankAllocation {
  std::vector<int> slots;
  int total() const;
};

struct DecodeResult {
  TokenSequence tokens;  // ends with EOS
  double raw_logprob = 0.0;
  double normalized_score = 0.0;
  bool satisfied = true;
  bool fallback_used = false;
  int steps = 0;
  std::chrono::duration<double> wall_time{0.0};
  // Per step, hypotheses kept in each bank. Filled when DecodeConfig::trace.
  std::vector<std::vector<int>> bank_trace;
};

// logprob / ((5 + length) / 6)^alpha. `length` counts EOS.
double length_normalized_score(double logprob, int length, double alpha);

// Splits `beam_size` slots over banks 0..counts.size()-1.
//
// Every bank starts with beam_size / nbanks slots and the remainder goes one
// each to the highest banks. Then, bank by bank from 0 upward, each slot a
// bank cannot fill is moved to the nearest bank that still has more
// candidates than slots, the higher bank winning distance ties. Slots that
// no bank can use are dropped, so the total is min(beam_size, sum(counts)).
BankAllocation allocate_banks(std::span<const int> bank_candidate_counts,
                              int beam_size);

// Plain beam search. Equivalent to dba_decode with no constraints.
DecodeResult beam_search(const ScoringModel& model, const DecodeConfig& config);

// Lexically constrained beam search with dynamic beam allocation.
//
// Each step extends every live hypothesis with its top-k tokens plus every
// token that advances its constraint state, groups the candidates into banks
// by met constraint tokens, splits the beam across banks with
// allocate_banks, and keeps the best candidates of each bank. EOS is only
// proposed once all constraints are met. Finished hypotheses leave the beam;
// the search ends when the beam is empty or after max_length tokens (EOS is
// then forced). If nothing finishes, the best hypothesis of the highest
// nonempty bank gets its unmet phrases appended and fallback_used is set.
//
// Throws ConstraintError if a phrase cannot be generated with the model
// vocabulary.
DecodeResult dba_decode(const ScoringModel& model,
                        const ConstraintSet& constraints,
                        const DecodeConfig& config);

// s' with EOS stripped, then every phrase in order, then EOS. Scores are NaN
// since no model is consulted.
DecodeResult append_baseline(const DecodeResult& unconstrained,
                             const ConstraintSet& constraints);

// Total order used for final selection: higher normalized score first, then
// the lexicographically smaller token sequence.
bool ranks_before(double score_a, std::span<const TokenId> tokens_a,
                  double score_b, std::span<const TokenId> tokens_b);

}  // namespace cas

#endif  // CAS_DECODER_H_
