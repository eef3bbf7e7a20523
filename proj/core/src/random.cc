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

#include "poplar/random.h"

#include <openssl/rand.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "poplar/internal/aes.h"

namespace poplar {

uint64_t RandomSource::NextUint64() {
  uint8_t buf[8];
  Fill(absl::MakeSpan(buf));
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
  return v;
}

uint64_t RandomSource::Uniform(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Uniform: bound must be nonzero");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    uint64_t v = NextUint64();
    if (v < limit) return v % bound;
  }
}

double RandomSource::UniformDouble() {
  return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
}

void SecureRandom::Fill(absl::Span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

struct DeterministicRandom::State {
  explicit State(const std::array<uint8_t, 16>& key) : aes(key) {}
  internal::Aes128 aes;
  uint64_t counter = 0;
  std::array<uint8_t, 16> buffer{};
  size_t available = 0;
};

namespace {
std::array<uint8_t, 16> SeedFromUint64(uint64_t seed) {
  std::array<uint8_t, 16> key{};
  for (int i = 0; i < 8; ++i) key[i] = static_cast<uint8_t>(seed >> (8 * i));
  key[15] = 0xd5;  // keeps DeterministicRandom(0) away from the all-zero PRG key
  return key;
}
}  // namespace

DeterministicRandom::DeterministicRandom(uint64_t seed)
    : DeterministicRandom(SeedFromUint64(seed)) {}

DeterministicRandom::DeterministicRandom(const std::array<uint8_t, 16>& seed)
    : state_(std::make_unique<State>(seed)) {}

DeterministicRandom::~DeterministicRandom() = default;
DeterministicRandom::DeterministicRandom(DeterministicRandom&&) noexcept = default;
DeterministicRandom& DeterministicRandom::operator=(DeterministicRandom&&) noexcept =
    default;

void DeterministicRandom::Fill(absl::Span<uint8_t> out) {
  size_t pos = 0;
  while (pos < out.size()) {
    if (state_->available == 0) {
      std::array<uint8_t, 16> ctr{};
      for (int i = 0; i < 8; ++i) ctr[i] = static_cast<uint8_t>(state_->counter >> (8 * i));
      ++state_->counter;
      state_->aes.EncryptBlocks(ctr.data(), state_->buffer.data(), 1);
      state_->available = 16;
    }
    size_t take = std::min(state_->available, out.size() - pos);
    std::memcpy(out.data() + pos, state_->buffer.data() + (16 - state_->available), take);
    state_->available -= take;
    pos += take;
  }
}

DeterministicRandom DeterministicRandom::Fork() {
  std::array<uint8_t, 16> child{};
  Fill(absl::MakeSpan(child));
  return DeterministicRandom(child);
}

}  // namespace poplar
