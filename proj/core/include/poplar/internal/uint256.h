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

#ifndef POPLAR_INTERNAL_UINT256_H_
#define POPLAR_INTERNAL_UINT256_H_

#include <array>
#include <bit>
#include <cstdint>

namespace poplar::internal {

using uint128 = unsigned __int128;

// Fixed-width 256-bit unsigned integer, little-endian limbs.
struct Uint256 {
  std::array<uint64_t, 4> limb{};

  static constexpr Uint256 FromUint64(uint64_t v) { return Uint256{{v, 0, 0, 0}}; }

  friend constexpr bool operator==(const Uint256&, const Uint256&) = default;
};

using Uint512 = std::array<uint64_t, 8>;

// a += b, returns the carry out.
inline uint64_t AddInPlace(Uint256& a, const Uint256& b) {
  uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    uint128 sum = static_cast<uint128>(a.limb[i]) + b.limb[i] + carry;
    a.limb[i] = static_cast<uint64_t>(sum);
    carry = static_cast<uint64_t>(sum >> 64);
  }
  return carry;
}

// a -= b, returns the borrow out.
inline uint64_t SubInPlace(Uint256& a, const Uint256& b) {
  uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    uint128 diff = static_cast<uint128>(a.limb[i]) - b.limb[i] - borrow;
    a.limb[i] = static_cast<uint64_t>(diff);
    borrow = static_cast<uint64_t>(diff >> 64) & 1;
  }
  return borrow;
}

inline int Compare(const Uint256& a, const Uint256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
  }
  return 0;
}

inline bool IsZero(const Uint256& a) {
  return (a.limb[0] | a.limb[1] | a.limb[2] | a.limb[3]) == 0;
}

inline Uint512 Multiply(const Uint256& a, const Uint256& b) {
  Uint512 out{};
  for (int i = 0; i < 4; ++i) {
    uint64_t carry = 0;
    for (int j = 0; j < 4; ++j) {
      uint128 cur = static_cast<uint128>(a.limb[i]) * b.limb[j] + out[i + j] + carry;
      out[i + j] = static_cast<uint64_t>(cur);
      carry = static_cast<uint64_t>(cur >> 64);
    }
    out[i + 4] = carry;
  }
  return out;
}

inline int BitLength(const Uint256& a) {
  for (int i = 3; i >= 0; --i) {
    if (a.limb[i] != 0) return 64 * i + 64 - std::countl_zero(a.limb[i]);
  }
  return 0;
}

inline int BitLength(const Uint512& a) {
  for (int i = 7; i >= 0; --i) {
    if (a[i] != 0) return 64 * i + 64 - std::countl_zero(a[i]);
  }
  return 0;
}

// Subtracts one from a nonzero 512-bit value.
inline void Decrement(Uint512& a) {
  for (auto& w : a) {
    if (w-- != 0) break;
  }
}

}  // namespace poplar::internal

#endif  // POPLAR_INTERNAL_UINT256_H_
