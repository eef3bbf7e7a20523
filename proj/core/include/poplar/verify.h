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

#ifndef POPLAR_VERIFY_H_
#define POPLAR_VERIFY_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/field.h"
#include "poplar/net/transport.h"
#include "poplar/prg.h"
#include "poplar/submission.h"

namespace poplar {

// One client's share of the vectors being sketched.
struct SketchVectors {
  std::vector<FieldElem> v;
  std::vector<FieldElem> v_star;
};

// Runs the two sketch rounds for a batch of clients at sketch level
// `sketch_level` (frames carry `wire_level`). Each round is a single framed
// exchange: ROUND1 holds three elements per client, ROUND2 one. Returns
// whether each client passed.
absl::StatusOr<std::vector<bool>> VerifySketches(
    int party, int sketch_level, uint16_t wire_level, const FieldSpec& spec,
    absl::Span<const ClientSubmission* const> clients, absl::Span<const SketchVectors> vectors,
    const Seed& shared_seed, net::Transport& transport);

}  // namespace poplar

#endif  // POPLAR_VERIFY_H_
