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

#ifndef POPLAR_RANDOM_H_
#define POPLAR_RANDOM_H_

#include <array>
#include <cstdint>
#include <memory>

#include "absl/types/span.h"

namespace poplar {

// Source of uniformly random octets. Key generation, client encoding and
// the servers' nonces all draw from one of these so tests can replay them.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void Fill(absl::Span<uint8_t> out) = 0;

  uint64_t NextUint64();
  // Uniform in [0, bound) by rejection; bound must be nonzero.
  uint64_t Uniform(uint64_t bound);
  // Uniform in [0, 1) with 53 bits of precision.
  double UniformDouble();
};

// Operating-system randomness (OpenSSL RAND_bytes).
class SecureRandom final : public RandomSource {
 public:
  void Fill(absl::Span<uint8_t> out) override;
};

// AES-CTR keystream from a 16-byte seed. Reproducible, for tests and the
// simulator.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(uint64_t seed);
  explicit DeterministicRandom(const std::array<uint8_t, 16>& seed);
  ~DeterministicRandom() override;

  void Fill(absl::Span<uint8_t> out) override;

  // Independent child stream; the parent advances by one draw.
  DeterministicRandom Fork();

  DeterministicRandom(DeterministicRandom&&) noexcept;
  DeterministicRandom& operator=(DeterministicRandom&&) noexcept;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace poplar

#endif  // POPLAR_RANDOM_H_
