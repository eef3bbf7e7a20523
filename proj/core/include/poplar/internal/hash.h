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

#ifndef POPLAR_INTERNAL_HASH_H_
#define POPLAR_INTERNAL_HASH_H_

#include <array>
#include <cstdint>

#include "absl/types/span.h"

namespace poplar::internal {

using Digest = std::array<uint8_t, 32>;

Digest Sha256(absl::Span<const uint8_t> data);

// SHA-256 over the concatenation of the parts.
Digest Sha256Concat(std::initializer_list<absl::Span<const uint8_t>> parts);

}  // namespace poplar::internal

#endif  // POPLAR_INTERNAL_HASH_H_
