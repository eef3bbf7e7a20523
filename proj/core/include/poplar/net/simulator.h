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

#ifndef POPLAR_NET_SIMULATOR_H_
#define POPLAR_NET_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "poplar/bit_string.h"
#include "poplar/heavy.h"
#include "poplar/random.h"

namespace poplar::net {

struct SimulationConfig {
  uint64_t clients = 1000;
  int bits = 32;
  // Zipf exponent and support size of the client distribution.
  double zipf_s = 1.03;
  uint64_t support = 10000;
  std::optional<uint64_t> threshold;
  double tau = 0.01;
  DpConfig dp;
  // Reported only: composed epsilon over the run's prefix queries.
  double dp_delta = 0x1p-40;
  double abort_fraction = 1.0;
  // Clients whose pp carries a corrupted level-1 correction word.
  uint64_t malformed = 0;
  uint64_t seed = 1;
  bool timing = false;
};

// Rank k (0-based) of a Zipf(s) distribution over `support` values, mapped
// to a pseudorandom n-bit identifier.
class ZipfSource {
 public:
  ZipfSource(double s, uint64_t support, int bits, uint64_t seed);
  uint64_t SampleRank(RandomSource& rng) const;
  BitString Identifier(uint64_t rank) const;

 private:
  std::vector<double> cdf_;
  int bits_;
  Seed id_seed_;
};

struct LevelTraffic {
  int level = 0;
  size_t active = 0;
  size_t queries = 0;
  int elem_bytes = 0;
  // Bytes server 0 sent in the level's ROUND1, ROUND2 and WEIGHTS frames.
  uint64_t bytes_sent = 0;
};

struct SimulationReport {
  SimulationConfig config;
  uint64_t threshold = 0;
  std::vector<WeightedPrefix> heavy_hitters;
  std::vector<WeightedPrefix> expected;
  bool exact_match = false;
  size_t disqualified = 0;
  // Upload to one server.
  uint64_t upload_bytes_per_client = 0;
  // Both directions between the servers, session setup included.
  uint64_t server_bytes = 0;
  double server_bytes_per_client = 0;
  std::vector<LevelTraffic> levels;
  uint64_t prefix_queries = 0;
  uint64_t prg_calls = 0;
  // Composed (epsilon', dp_delta) guarantee; zero with DP off.
  double composed_epsilon = 0;
  double encode_ms = 0;
  double aggregate_ms = 0;

  // Deterministic for a fixed config unless timing is on.
  std::string ToJson() const;
  static std::string CsvHeader();
  std::string ToCsvRow() const;
};

// Generates clients, uploads them through the submission path and runs both
// servers over a loopback pair.
absl::StatusOr<SimulationReport> Simulate(const SimulationConfig& config);

}  // namespace poplar::net

#endif  // POPLAR_NET_SIMULATOR_H_
