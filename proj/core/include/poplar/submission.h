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

#ifndef POPLAR_SUBMISSION_H_
#define POPLAR_SUBMISSION_H_

#include <array>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/bit_string.h"
#include "poplar/group.h"
#include "poplar/idpf.h"
#include "poplar/random.h"
#include "poplar/sketch.h"

namespace poplar {

using ClientNonce = std::array<uint8_t, 16>;

// What one server receives from one client.
struct ClientSubmission {
  ClientNonce nonce{};
  IdpfKey key;
  PublicParams pp;
  ClientCorrelated correlated;
};

// Fields of the non-trivial levels of `groups`, in order. Sketch level k is
// the k-th non-trivial tree level.
std::vector<const FieldSpec*> SketchFields(absl::Span<const GroupDesc> groups);

// Index of the sketch level for tree level `level` (1-based); -1 when the
// level's group is trivial.
int SketchLevelOf(absl::Span<const GroupDesc> groups, int level);

// Subset-histogram groups: trivial above the leaf, F_leaf^2 at the leaf.
std::vector<GroupDesc> HistogramGroups(int bits);
// Heavy-hitters groups: F_inner^2 above the leaf, F_leaf^2 at the leaf.
std::vector<GroupDesc> HeavyGroups(int bits);

// Encodes `alpha` for both servers. Every non-trivial group must be a field
// pair; its payload is (1, kappa_l) with a fresh kappa_l.
absl::StatusOr<std::array<ClientSubmission, 2>> EncodeClient(const BitString& alpha,
                                                             absl::Span<const GroupDesc> groups,
                                                             RandomSource& rng);

}  // namespace poplar

#endif  // POPLAR_SUBMISSION_H_
