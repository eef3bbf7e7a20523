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

#ifndef POPLAR_SKETCH_H_
#define POPLAR_SKETCH_H_

#include <array>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/field.h"
#include "poplar/prg.h"
#include "poplar/random.h"

namespace poplar {

// One server's share of a client's correlated randomness. The masks a_b,
// b_b, c_b for sketch level k are derived from `mask_seed`; A_b and B_b are
// stored explicitly. Level k uses field fields[k].
struct ClientCorrelated {
  Seed mask_seed;
  std::vector<FieldElem> a_share;  // A = -2a + kappa
  std::vector<FieldElem> b_share;  // B = a^2 + b - a kappa + c

  int levels() const { return static_cast<int>(a_share.size()); }
  void AppendBytes(std::vector<uint8_t>& out) const;
  static absl::StatusOr<ClientCorrelated> Decode(absl::Span<const uint8_t> bytes,
                                                 absl::Span<const FieldSpec* const> fields,
                                                 size_t* consumed);
};

struct MaskShares {
  FieldElem a;
  FieldElem b;
  FieldElem c;
};

// Masks of sketch level k from one server's mask seed.
MaskShares DeriveMasks(const Seed& mask_seed, int level, const FieldSpec& spec);

struct SketchClientEncoding {
  std::vector<FieldElem> kappa;  // fresh per level
  std::array<ClientCorrelated, 2> shares;
};

// Samples kappa, a, b, c for each level and splits A and B additively.
SketchClientEncoding SketchClientEncode(absl::Span<const FieldSpec* const> fields,
                                        RandomSource& rng);

struct SketchRandomness {
  std::vector<FieldElem> r;
  std::vector<FieldElem> r_squared;
};

// r_i = PrfStream(shared_seed, "sketch-r" || client_id || level).Elem(i).
SketchRandomness DeriveSketchRandomness(const Seed& shared_seed,
                                        absl::Span<const uint8_t> client_id, int level,
                                        size_t m, const FieldSpec& spec);

// The three masked (or unmasked) sketch values. Round 1 sends one of these.
struct SketchTriple {
  FieldElem z;
  FieldElem z_star;
  FieldElem z_star2;

  SketchTriple operator+(const SketchTriple& o) const {
    return {z + o.z, z_star + o.z_star, z_star2 + o.z_star2};
  }
};

// (<r, v>, <r*, v>, <r, v*>).
absl::StatusOr<SketchTriple> ComputeLocals(absl::Span<const FieldElem> v,
                                           absl::Span<const FieldElem> v_star,
                                           const SketchRandomness& rand);

SketchTriple Round1(const SketchTriple& locals, const MaskShares& masks);

// Share of Z^2 - Z* - Z** + A Z + B. Server 0 carries the public monomials.
FieldElem Round2Share(int party, const SketchTriple& public_sum, const FieldElem& a_share,
                      const FieldElem& b_share);

inline bool SketchAccepts(const FieldElem& share0, const FieldElem& share1) {
  return (share0 + share1).IsZero();
}

// Test probe: an honest client holding e_index with fresh kappa, a
// reconstructed round-1 sum shifted by (delta, delta_star, delta_star2).
// Returns the reconstructed check value.
FieldElem SketchOffsetProbe(const FieldElem& delta, const FieldElem& delta_star,
                            const FieldElem& delta_star2, size_t m, size_t index,
                            RandomSource& rng);

}  // namespace poplar

#endif  // POPLAR_SKETCH_H_
