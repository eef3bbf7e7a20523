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

#include "poplar/submission.h"

#include "absl/strings/str_cat.h"
#include "poplar/status_macros.h"

namespace poplar {

std::vector<const FieldSpec*> SketchFields(absl::Span<const GroupDesc> groups) {
  std::vector<const FieldSpec*> out;
  for (const GroupDesc& g : groups) {
    if (g.is_field()) out.push_back(&g.field());
  }
  return out;
}

int SketchLevelOf(absl::Span<const GroupDesc> groups, int level) {
  if (level < 1 || level > static_cast<int>(groups.size()) || !groups[level - 1].is_field()) {
    return -1;
  }
  int k = 0;
  for (int l = 0; l + 1 < level; ++l) k += groups[l].is_field();
  return k;
}

std::vector<GroupDesc> HistogramGroups(int bits) {
  std::vector<GroupDesc> groups(bits, GroupDesc::Trivial());
  groups.back() = GroupDesc::LeafPair();
  return groups;
}

std::vector<GroupDesc> HeavyGroups(int bits) {
  std::vector<GroupDesc> groups(bits, GroupDesc::InnerPair());
  groups.back() = GroupDesc::LeafPair();
  return groups;
}

absl::StatusOr<std::array<ClientSubmission, 2>> EncodeClient(const BitString& alpha,
                                                             absl::Span<const GroupDesc> groups,
                                                             RandomSource& rng) {
  for (const GroupDesc& g : groups) {
    if (!g.is_trivial() && !(g.is_field() && g.arity() == 2)) {
      return absl::InvalidArgumentError(
          absl::StrCat("client payloads need field pairs, got ", g.ToString()));
    }
  }
  std::vector<const FieldSpec*> fields = SketchFields(groups);
  SketchClientEncoding sketch = SketchClientEncode(fields, rng);

  std::vector<GroupElem> beta;
  beta.reserve(groups.size());
  size_t k = 0;
  for (const GroupDesc& g : groups) {
    if (g.is_trivial()) {
      beta.emplace_back();
      continue;
    }
    beta.push_back(GroupElem::OfFields(g, FieldElem::FromUint64(1, g.field()), sketch.kappa[k]));
    ++k;
  }
  POPLAR_ASSIGN_OR_RETURN(IdpfKeys keys, Gen(alpha, beta, groups, rng));

  ClientNonce nonce;
  rng.Fill(absl::MakeSpan(nonce));
  std::array<ClientSubmission, 2> out;
  out[0] = {nonce, keys.key0, keys.pp, std::move(sketch.shares[0])};
  out[1] = {nonce, keys.key1, std::move(keys.pp), std::move(sketch.shares[1])};
  return out;
}

}  // namespace poplar
