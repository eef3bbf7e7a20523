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

#ifndef POPLAR_NET_PROTOCOL_H_
#define POPLAR_NET_PROTOCOL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "poplar/bit_string.h"
#include "poplar/heavy.h"
#include "poplar/histogram.h"
#include "poplar/internal/hash.h"
#include "poplar/net/submission.h"
#include "poplar/net/transport.h"
#include "poplar/random.h"

namespace poplar::net {

// Flat "key = value" text; '#' starts a comment. Duplicate keys fail.
absl::StatusOr<std::map<std::string, std::string>> ParseKeyValues(absl::string_view text);

// One distinct n-bit string per non-empty line, in hex (see BitString::FromHex).
absl::StatusOr<std::vector<BitString>> ParseCandidates(absl::string_view text, int bits);

// Parameters both servers must agree on before aggregating.
struct RunConfig {
  enum class Mode { kHeavy, kHistogram };

  Mode mode = Mode::kHeavy;
  int bits = 0;
  std::optional<uint64_t> threshold;
  double tau = 0;
  DpConfig dp;
  double abort_fraction = 1.0;
  // Histogram mode only.
  std::vector<BitString> candidates;

  // Recognised keys: mode, bits, threshold, tau, dp_epsilon, abort_fraction.
  // Unknown keys are left to the caller.
  static absl::StatusOr<RunConfig> FromKeyValues(const std::map<std::string, std::string>& kv);

  HeavyConfig heavy() const;
  // Groups a conforming client must use.
  std::vector<GroupDesc> groups() const;
  // Canonical rendering; equal configs render identically.
  std::string Canonical() const;
  internal::Digest Digest() const;
};

// SHA-256 of the two server nonces in sorted order, truncated to a seed.
Seed EstablishSharedSeed(const std::array<uint8_t, 16>& a, const std::array<uint8_t, 16>& b);

struct Session {
  Seed shared_seed;
  // Clients both servers hold with equal pp, sorted by nonce.
  std::vector<ClientSubmission> active;
  // Held by both servers but with differing pp digests, or with groups that
  // do not match the config.
  size_t rejected_at_upload = 0;
  // Held by only one of the servers.
  size_t unmatched = 0;
};

// CONFIG (digest check), NONCE (shared seed) and ROSTER (client list)
// rounds. A config mismatch aborts both servers.
absl::StatusOr<Session> EstablishSession(const RunConfig& config,
                                         std::vector<ClientRecord> records, RandomSource& rng,
                                         Transport& transport);

struct AggregationReport {
  RunConfig::Mode mode = RunConfig::Mode::kHeavy;
  size_t received = 0;
  size_t active = 0;
  size_t rejected_at_upload = 0;
  size_t unmatched = 0;
  HeavyResult heavy;
  HistogramResult histogram;
  std::vector<BitString> candidates;
  TrafficStats traffic;

  std::string ToJson() const;
};

// Session setup followed by the configured protocol. `rng` supplies the
// server nonce and DP noise.
absl::StatusOr<AggregationReport> RunAggregation(int party, const RunConfig& config,
                                                 std::vector<ClientRecord> records,
                                                 RandomSource& rng, Transport& transport);

}  // namespace poplar::net

#endif  // POPLAR_NET_PROTOCOL_H_
