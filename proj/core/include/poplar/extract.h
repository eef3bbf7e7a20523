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

#ifndef POPLAR_EXTRACT_H_
#define POPLAR_EXTRACT_H_

// Extractability harness. Test-only: linked by the test suite, never
// installed or used by the binaries.

#include <cstdint>
#include <functional>
#include <vector>

#include "poplar/bit_string.h"
#include "poplar/group.h"
#include "poplar/idpf.h"
#include "poplar/prg.h"
#include "poplar/random.h"

namespace poplar::extract {

// Permissible outputs: P(level, value) for level in [1, n]. Must reject 0.
using Permissible = std::function<bool(int level, const GroupElem& value)>;

// P_l = {1} (every coordinate equal to one).
Permissible OnlyOne();

struct ExtractionResult {
  // x[l - 1] is the string extracted for level l.
  std::vector<BitString> x;
  // Strings whose value was assigned (the examined set).
  uint64_t examined = 0;
  // Candidate children evaluated, examined or not.
  uint64_t evaluated = 0;
};

// Worklist extractor: descends from the empty string into x||z only while
// both parties' oracle queries for that step appear in `transcript` and the
// new seed is not among the seeds and tilde-seeds already stored for that
// length.
ExtractionResult Extract(const IdpfKey& k0, const IdpfKey& k1, const PublicParams& pp,
                         const Permissible& permissible, const OracleTranscript& transcript);

enum class Strategy { kHonestReplay, kPpTamper, kPayloadScale };

struct GameOutcome {
  bool won = false;
  // The adversary's target evaluates into P.
  bool target_in_p = false;
  BitString target;
  ExtractionResult extraction;
};

// One run of the extractability game against `strategy` with P = {1} and
// `groups` as the level groups. The adversary's oracle transcript covers its
// key generation and its evaluations of the target.
GameOutcome PlayGame(Strategy strategy, absl::Span<const GroupDesc> groups, RandomSource& rng);

}  // namespace poplar::extract

#endif  // POPLAR_EXTRACT_H_
