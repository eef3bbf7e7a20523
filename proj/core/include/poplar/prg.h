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

#ifndef POPLAR_PRG_H_
#define POPLAR_PRG_H_

#include <array>
#include <cstdint>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/types/span.h"
#include "poplar/field.h"
#include "poplar/group.h"
#include "poplar/internal/aes.h"
#include "poplar/internal/uint256.h"
#include "poplar/random.h"

namespace poplar {

// Seed length in bits. Seeds live in 128-bit blocks with the top bit zero.
inline constexpr int kLambda = 127;

class Seed {
 public:
  Seed() = default;
  Seed(uint64_t lo, uint64_t hi) : lo_(lo), hi_(hi & kTopMask) {}

  // Little-endian block; the top bit is cleared.
  static Seed FromBytes(absl::Span<const uint8_t> bytes16);
  static Seed Random(RandomSource& rng);

  std::array<uint8_t, 16> ToBytes() const;
  void AppendBytes(std::vector<uint8_t>& out) const;

  uint64_t lo() const { return lo_; }
  uint64_t hi() const { return hi_; }

  Seed operator^(const Seed& o) const { return Seed(lo_ ^ o.lo_, hi_ ^ o.hi_); }
  Seed& operator^=(const Seed& o) { return *this = *this ^ o; }
  friend bool operator==(const Seed& a, const Seed& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }
  friend bool operator!=(const Seed& a, const Seed& b) { return !(a == b); }

  template <typename H>
  friend H AbslHashValue(H h, const Seed& s) {
    return H::combine(std::move(h), s.lo_, s.hi_);
  }

 private:
  static constexpr uint64_t kTopMask = 0x7FFFFFFFFFFFFFFFULL;
  uint64_t lo_ = 0;
  uint64_t hi_ = 0;
};

// G(s) = sL || tL || sR || tR.
struct PrgOutput {
  Seed left;
  bool t_left = false;
  Seed right;
  bool t_right = false;
};

// The length-doubling PRG. Each half is fixed-key AES in Matyas-Meyer-Oseas
// form, E(s ^ T_i) ^ s ^ T_i with tweak T_i = i; bit 0 of the half is t and
// the half shifted right by one is the seed. One call is two AES blocks.
PrgOutput Expand(const Seed& s);

// Number of G calls Convert and ConvertWithSeed make for `group`:
// ceil(log|G| / lambda), zero for the trivial group.
int ConvertCalls(const GroupDesc& group);
// 1 + ConvertCalls: the PRG cost of one tree level.
int LevelCost(const GroupDesc& group);

// Maps a seed to a group element. Ring groups with m <= lambda take the low
// m bits of s; every other non-trivial group stretches s with
// ConvertCalls(group) calls (tweaks 2, 3, ...) and reduces.
GroupElem Convert(const Seed& s, const GroupDesc& group);

struct SeededElem {
  Seed seed;
  GroupElem value;
};

// Convert into {0,1}^lambda x G. The first 16 output octets (top bit
// cleared) form the seed and the rest reduce into the group. For the
// trivial group the seed passes through unchanged and no call is made.
SeededElem ConvertWithSeed(const Seed& s, const GroupDesc& group);

// Element of Z_{2^m} from s: the low m bits when m <= lambda, otherwise the
// low m bits of the stretched output.
internal::Uint256 ConvertPow2(const Seed& s, int m);

// Record of oracle queries made on the current thread while installed with
// ScopedOracleTranscript. Used by tests and the extractor harness only.
class OracleTranscript {
 public:
  enum class Kind : uint8_t { kExpand, kConvert };
  struct Query {
    Kind kind;
    Seed seed;
  };

  void Record(Kind kind, const Seed& seed, int calls);

  const std::vector<Query>& queries() const { return queries_; }
  // G calls made (Expand counts one, Convert counts ConvertCalls).
  uint64_t calls() const { return calls_; }
  bool Contains(Kind kind, const Seed& seed) const;
  void Clear();

 private:
  std::vector<Query> queries_;
  absl::flat_hash_set<std::pair<uint8_t, Seed>> index_;
  uint64_t calls_ = 0;
};

// Installs a transcript for the current thread; restores the previous one on
// destruction.
class ScopedOracleTranscript {
 public:
  explicit ScopedOracleTranscript(OracleTranscript* transcript);
  ~ScopedOracleTranscript();
  ScopedOracleTranscript(const ScopedOracleTranscript&) = delete;
  ScopedOracleTranscript& operator=(const ScopedOracleTranscript&) = delete;

 private:
  OracleTranscript* previous_;
};

// Keyed expansion for derived randomness: key = SHA-256(seed || tag)[0:16],
// block `index` is AES-CTR under that key with counter (index, j).
class PrfStream {
 public:
  PrfStream(const Seed& seed, absl::Span<const uint8_t> tag);
  PrfStream(const Seed& seed, absl::string_view tag);

  void Fill(uint64_t index, absl::Span<uint8_t> out) const;
  std::vector<uint8_t> Block(uint64_t index, size_t length) const;
  // byte_width + 8 octets at `index` reduced into the field.
  FieldElem Elem(uint64_t index, const FieldSpec& spec) const;

 private:
  internal::Aes128 aes_;
};

}  // namespace poplar

#endif  // POPLAR_PRG_H_
