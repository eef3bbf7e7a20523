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

#ifndef POPLAR_IDPF_H_
#define POPLAR_IDPF_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/bit_string.h"
#include "poplar/group.h"
#include "poplar/internal/hash.h"
#include "poplar/prg.h"
#include "poplar/random.h"

namespace poplar {

inline constexpr uint8_t kIdpfWireVersion = 1;

struct CorrectionWord {
  Seed seed;
  bool t_left = false;
  bool t_right = false;
  GroupElem w;
};

// Public parameters shared by both keys: per-level groups and correction
// words. Wire layout:
//
//   u8 version | u8 lambda | u8 flags (bit 0: subtractive) | u16 n
//   n group codes (ring codes carry one extra octet)
//   per level: 16-octet seed | u8 (bit 0: tL, bit 1: tR) | W encoding
struct PublicParams {
  std::vector<GroupDesc> groups;
  std::vector<CorrectionWord> cws;
  bool subtractive = false;

  int n() const { return static_cast<int>(groups.size()); }

  std::vector<uint8_t> Serialize() const;
  static absl::StatusOr<PublicParams> Deserialize(absl::Span<const uint8_t> bytes);
  internal::Digest Digest() const;
};

// One party's private key. Wire layout: u8 version | u8 party | 16-octet seed.
struct IdpfKey {
  int party = 0;
  Seed seed;

  std::vector<uint8_t> Serialize() const;
  static absl::StatusOr<IdpfKey> Deserialize(absl::Span<const uint8_t> bytes);
};

inline constexpr size_t kIdpfKeyBytes = 18;

struct IdpfKeys {
  IdpfKey key0;
  IdpfKey key1;
  PublicParams pp;
};

struct GenOptions {
  // Party 1 outputs its share without the (-1)^b sign, so the two outputs
  // differ (y_0 - y_1) instead of summing.
  bool subtractive = false;
};

// Shares the all-prefix point function with special path `alpha` and
// payload beta[l] at level l + 1. Randomness is used for the root seeds only.
absl::StatusOr<IdpfKeys> Gen(const BitString& alpha, absl::Span<const GroupElem> beta,
                             absl::Span<const GroupDesc> groups, RandomSource& rng,
                             GenOptions options = {});

// Evaluation state after `depth` bits.
struct EvalState {
  Seed seed;
  bool t = false;
  int depth = 0;

  static EvalState Root(const IdpfKey& key) { return {key.seed, key.party == 1, 0}; }
};

struct EvalStep {
  EvalState state;
  GroupElem y;
  // The pre-conversion seed of the child (the input to ConvertWithSeed).
  Seed seed_tilde;
};

// One level down from `state` along `bit`.
absl::StatusOr<EvalStep> EvalNext(int party, const EvalState& state, const PublicParams& pp,
                                  bool bit);

// Both children of `state`, sharing one PRG expansion.
absl::StatusOr<std::array<EvalStep, 2>> EvalChildren(int party, const EvalState& state,
                                                     const PublicParams& pp);

// Share of the value at prefix x, 1 <= |x| <= n.
absl::StatusOr<GroupElem> EvalPrefix(const IdpfKey& key, const PublicParams& pp,
                                     const BitString& x);

// Sum over levels of LevelCost: PRG calls for an evaluation of depth `depth`.
uint64_t EvalCost(absl::Span<const GroupDesc> groups, int depth);

// lambda + (lambda + 2) n + sum ceil(log|G_l|): the key-plus-pp bit count.
uint64_t KeyBitsFormula(absl::Span<const GroupDesc> groups);

}  // namespace poplar

#endif  // POPLAR_IDPF_H_
