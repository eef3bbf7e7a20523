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

#ifndef POPLAR_NET_WIRE_H_
#define POPLAR_NET_WIRE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"
#include "poplar/field.h"

namespace poplar::net {

// Frame layout: u32 length (LE, counts type + level + payload) | u8 type |
// u16 level (LE) | payload.
enum class MessageType : uint8_t {
  kConfig = 1,     // run-config digest
  kNonce = 2,      // shared-seed nonce
  kRoster = 3,     // sorted (client nonce, pp digest) list
  kRound1 = 4,     // three masked sketch values per active client
  kRound2 = 5,     // one sketch output share per active client
  kWeights = 6,    // prefix-count shares
  kAbort = 7,      // UTF-8 reason
  kUpload = 8,     // client submission
  kFinish = 9,     // ends ingest
  kPeerHello = 10, // server-to-server handshake
  kAck = 11,       // upload accepted (payload empty) or rejected (reason)
};

inline constexpr size_t kFrameHeaderBytes = 7;
inline constexpr uint32_t kMaxFrameLength = 1u << 30;

absl::string_view MessageTypeName(MessageType type);

struct Frame {
  MessageType type = MessageType::kAbort;
  uint16_t level = 0;
  std::vector<uint8_t> payload;
};

std::vector<uint8_t> EncodeFrame(MessageType type, uint16_t level,
                                 absl::Span<const uint8_t> payload);

// Decodes one frame from the front of `bytes`. Returns OutOfRange when the
// buffer ends inside the frame and InvalidArgument when it is malformed.
absl::StatusOr<Frame> DecodeFrame(absl::Span<const uint8_t> bytes, size_t* consumed);

// Fixed-width field-element arrays.
void AppendElems(absl::Span<const FieldElem> elems, std::vector<uint8_t>& out);
absl::StatusOr<std::vector<FieldElem>> DecodeElems(absl::Span<const uint8_t> bytes,
                                                   size_t count, const FieldSpec& spec);

}  // namespace poplar::net

#endif  // POPLAR_NET_WIRE_H_
