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

#ifndef POPLAR_HEAVY_H_
#define POPLAR_HEAVY_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/bit_string.h"
#include "poplar/net/transport.h"
#include "poplar/prg.h"
#include "poplar/random.h"
#include "poplar/submission.h"

namespace poplar {

using WeightedPrefix = std::pair<BitString, int64_t>;

// Answers a batch of prefix-count queries.
using PrefixOracle = std::function<std::vector<int64_t>(const std::vector<BitString>&)>;

struct HhSearchResult {
  std::vector<WeightedPrefix> heavy;
  // Heavy prefixes and their weights at every level (index l = length l + 1).
  std::vector<std::vector<WeightedPrefix>> levels;
  uint64_t queries = 0;
};

// Prefix-count search: query p||0 for each heavy p, derive p||1 by
// subtraction, keep strings with weight >= t.
HhSearchResult HhSearch(const PrefixOracle& oracle, int64_t t, int bits, int64_t clients);

// Exact prefix counts over a plaintext multiset.
PrefixOracle PlaintextOracle(std::vector<BitString> strings);

// Strings held by at least t of `strings`, sorted.
std::vector<WeightedPrefix> PlaintextHeavyHitters(const std::vector<BitString>& strings,
                                                  int64_t t);

struct DpConfig {
  bool enabled = false;
  double epsilon = 0;
};

struct HeavyConfig {
  int bits = 0;
  // Absolute threshold; when unset, t = floor(tau * C) + 1 (strictly more
  // than a tau fraction).
  std::optional<uint64_t> threshold;
  double tau = 0;
  DpConfig dp;
  // Abort when more than this fraction of clients is disqualified.
  double abort_fraction = 1.0;
};

uint64_t ThresholdFor(const HeavyConfig& config, uint64_t clients);

struct HeavyResult {
  // Output strings with their (noised, clamped at zero) weights.
  std::vector<WeightedPrefix> heavy_hitters;
  // Raw weights of every heavy prefix per level.
  std::vector<std::vector<WeightedPrefix>> leakage;
  // Indices into the submission list, in order of disqualification.
  std::vector<size_t> disqualified;
  // Disqualified-set size after each level.
  std::vector<size_t> disqualified_by_level;
  // Clients entering sketch verification at each level, and the prefix
  // shares exchanged there; both zero once the search has died out.
  std::vector<size_t> active_by_level;
  std::vector<size_t> queries_by_level;
  uint64_t threshold = 0;
  uint64_t prefix_queries = 0;
  uint64_t eval_children_calls = 0;
  uint64_t prg_calls = 0;
};

// One server's side of the heavy-hitters protocol. `submissions` must be in
// the order both servers agreed on. `noise_rng` feeds DP noise only.
absl::StatusOr<HeavyResult> RunHeavyHitters(int party, const HeavyConfig& config,
                                            absl::Span<const ClientSubmission> submissions,
                                            const Seed& shared_seed,
                                            net::Transport& transport,
                                            RandomSource& noise_rng);

struct LocalHeavyRun {
  std::array<HeavyResult, 2> results;
  std::array<net::TrafficStats, 2> traffic;
};

// Both servers in-process over a loopback pair.
absl::StatusOr<LocalHeavyRun> RunHeavyHittersLocal(
    const HeavyConfig& config, absl::Span<const std::array<ClientSubmission, 2>> clients,
    const Seed& shared_seed, uint64_t noise_seed = 0);

}  // namespace poplar

#endif  // POPLAR_HEAVY_H_
