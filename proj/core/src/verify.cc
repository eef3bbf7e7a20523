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

#include "poplar/verify.h"

#include <atomic>

#include "absl/strings/str_cat.h"
#include "poplar/internal/parallel.h"
#include "poplar/net/wire.h"
#include "poplar/sketch.h"
#include "poplar/status_macros.h"

namespace poplar {

absl::StatusOr<std::vector<bool>> VerifySketches(
    int party, int sketch_level, uint16_t wire_level, const FieldSpec& spec,
    absl::Span<const ClientSubmission* const> clients, absl::Span<const SketchVectors> vectors,
    const Seed& shared_seed, net::Transport& transport) {
  const size_t count = clients.size();
  if (vectors.size() != count) {
    return absl::InvalidArgumentError("one vector pair per client is required");
  }
  std::vector<FieldElem> round1(3 * count, FieldElem(spec));
  std::atomic<bool> bad_input{false};
  internal::ParallelFor(count, [&](size_t i) {
    const ClientSubmission& c = *clients[i];
    SketchRandomness rand =
        DeriveSketchRandomness(shared_seed, c.nonce, sketch_level, vectors[i].v.size(), spec);
    auto locals = ComputeLocals(vectors[i].v, vectors[i].v_star, rand);
    if (!locals.ok()) {
      bad_input = true;
      return;
    }
    SketchTriple sent = Round1(*locals, DeriveMasks(c.correlated.mask_seed, sketch_level, spec));
    round1[3 * i] = sent.z;
    round1[3 * i + 1] = sent.z_star;
    round1[3 * i + 2] = sent.z_star2;
  });
  if (bad_input) return absl::InvalidArgumentError("sketch vectors have mismatched sizes");

  std::vector<uint8_t> payload;
  payload.reserve(round1.size() * spec.byte_width());
  net::AppendElems(round1, payload);
  POPLAR_ASSIGN_OR_RETURN(std::vector<uint8_t> peer_bytes,
                          transport.Exchange(net::MessageType::kRound1, wire_level, payload));
  POPLAR_ASSIGN_OR_RETURN(std::vector<FieldElem> peer1,
                          net::DecodeElems(peer_bytes, 3 * count, spec));

  std::vector<FieldElem> round2;
  round2.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    SketchTriple sum{round1[3 * i] + peer1[3 * i], round1[3 * i + 1] + peer1[3 * i + 1],
                     round1[3 * i + 2] + peer1[3 * i + 2]};
    const ClientCorrelated& corr = clients[i]->correlated;
    round2.push_back(
        Round2Share(party, sum, corr.a_share[sketch_level], corr.b_share[sketch_level]));
  }
  payload.clear();
  net::AppendElems(round2, payload);
  POPLAR_ASSIGN_OR_RETURN(peer_bytes,
                          transport.Exchange(net::MessageType::kRound2, wire_level, payload));
  POPLAR_ASSIGN_OR_RETURN(std::vector<FieldElem> peer2, net::DecodeElems(peer_bytes, count, spec));

  std::vector<bool> accepted(count);
  for (size_t i = 0; i < count; ++i) accepted[i] = SketchAccepts(round2[i], peer2[i]);
  return accepted;
}

}  // namespace poplar
