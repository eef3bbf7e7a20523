// Copyright 2026 The Poplar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POPLAR_HISTOGRAM_H_
#define POPLAR_HISTOGRAM_H_

#include <array>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/bit_string.h"
#include "poplar/field.h"
#include "poplar/net/transport.h"
#include "poplar/prg.h"
#include "poplar/submission.h"
#include "poplar/verify.h"

namespace poplar {

// Subset-histogram client: keys for `alpha` with leaf payload (1, kappa).
absl::StatusOr<std::array<ClientSubmission, 2>> HistogramClientSubmit(const BitString& alpha,
                                                                      RandomSource& rng);

// A server's evaluations of its submission share at every candidate: v holds the
// first payload coordinate, v_star the second.
absl::StatusOr<SketchVectors> EvaluateCandidates(const ClientSubmission& submission,
                                                 absl::Span<const BitString> candidates);

// Sum of the first coordinates over the accepted clients.
std::vector<FieldElem> Aggregate(absl::Span<const SketchVectors> evaluations,
                                 const std::vector<bool>& accepted);

std::vector<FieldElem> Combine(absl::Span<const FieldElem> share0,
                               absl::Span<const FieldElem> share1);

struct HistogramResult {
  // counts[j] is the number of accepted clients holding candidates[j].
  std::vector<FieldElem> counts;
  std::vector<size_t> disqualified;
};

// One server's side of the subset histogram: evaluate, verify with one sketch, then
// exchange aggregate shares (WEIGHTS) so both servers learn the counts.
absl::StatusOr<HistogramResult> RunHistogram(int party, int bits,
                                             absl::Span<const ClientSubmission> submissions,
                                             absl::Span<const BitString> candidates,
                                             const Seed& shared_seed,
                                             net::Transport& transport);

// Both servers in-process over a loopback pair; returns server 0's result.
absl::StatusOr<HistogramResult> RunHistogramLocal(
    int bits, absl::Span<const std::array<ClientSubmission, 2>> clients,
    absl::Span<const BitString> candidates, const Seed& shared_seed);

}  // namespace poplar

#endif  // POPLAR_HISTOGRAM_H_
