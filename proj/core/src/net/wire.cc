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

#include "poplar/net/wire.h"

#include "absl/strings/str_cat.h"
#include "poplar/internal/bytes.h"
#include "poplar/status_macros.h"

namespace poplar::net {

absl::string_view MessageTypeName(MessageType type) {
  switch (type) {
    case MessageType::kConfig:
      return "CONFIG";
    case MessageType::kNonce:
      return "NONCE";
    case MessageType::kRoster:
      return "ROSTER";
    case MessageType::kRound1:
      return "ROUND1";
    case MessageType::kRound2:
      return "ROUND2";
    case MessageType::kWeights:
      return "WEIGHTS";
    case MessageType::kAbort:
      return "ABORT";
    case MessageType::kUpload:
      return "UPLOAD";
    case MessageType::kFinish:
      return "FINISH";
    case MessageType::kPeerHello:
      return "PEER_HELLO";
    case MessageType::kAck:
      return "ACK";
  }
  return "UNKNOWN";
}

std::vector<uint8_t> EncodeFrame(MessageType type, uint16_t level,
                                 absl::Span<const uint8_t> payload) {
  std::vector<uint8_t> out;
  out.reserve(kFrameHeaderBytes + payload.size());
  internal::ByteWriter w(&out);
  w.U32(static_cast<uint32_t>(3 + payload.size()));
  w.U8(static_cast<uint8_t>(type));
  w.U16(level);
  w.Bytes(payload);
  return out;
}

absl::StatusOr<Frame> DecodeFrame(absl::Span<const uint8_t> bytes, size_t* consumed) {
  internal::ByteReader r(bytes);
  if (bytes.size() < 4) return absl::OutOfRangeError("incomplete frame header");
  POPLAR_ASSIGN_OR_RETURN(uint32_t length, r.U32());
  if (length < 3 || length > kMaxFrameLength) {
    return absl::InvalidArgumentError(absl::StrCat("bad frame length ", length));
  }
  if (r.remaining() < length) return absl::OutOfRangeError("incomplete frame body");
  Frame f;
  POPLAR_ASSIGN_OR_RETURN(uint8_t type, r.U8());
  if (type < 1 || type > 11) {
    return absl::InvalidArgumentError(absl::StrCat("unknown message type ", int{type}));
  }
  f.type = static_cast<MessageType>(type);
  POPLAR_ASSIGN_OR_RETURN(f.level, r.U16());
  POPLAR_ASSIGN_OR_RETURN(auto payload, r.Bytes(length - 3));
  f.payload.assign(payload.begin(), payload.end());
  *consumed = r.position();
  return f;
}

void AppendElems(absl::Span<const FieldElem> elems, std::vector<uint8_t>& out) {
  for (const FieldElem& e : elems) e.AppendBytes(out);
}

absl::StatusOr<std::vector<FieldElem>> DecodeElems(absl::Span<const uint8_t> bytes,
                                                   size_t count, const FieldSpec& spec) {
  const size_t width = spec.byte_width();
  if (bytes.size() != count * width) {
    return absl::InvalidArgumentError(absl::StrCat("expected ", count, " ", spec.name(),
                                                   " elements (", count * width,
                                                   " octets), got ", bytes.size()));
  }
  std::vector<FieldElem> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    POPLAR_ASSIGN_OR_RETURN(FieldElem e,
                            FieldElem::FromBytes(bytes.subspan(i * width, width), spec));
    out.push_back(e);
  }
  return out;
}

}  // namespace poplar::net
