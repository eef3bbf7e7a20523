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

#include "poplar/net/client.h"

#include "absl/strings/str_cat.h"
#include "poplar/net/submission.h"
#include "poplar/net/transport.h"
#include "poplar/status_macros.h"
#include "poplar/submission.h"

namespace poplar::net {
namespace {

absl::Status Send(const std::string& server, MessageType type, absl::Span<const uint8_t> payload,
                  std::chrono::milliseconds timeout) {
  POPLAR_ASSIGN_OR_RETURN(auto conn, TcpConnection::Connect(server, timeout));
  POPLAR_RETURN_IF_ERROR(conn->WriteFrame(type, 0, payload));
  POPLAR_ASSIGN_OR_RETURN(Frame ack, conn->ReadFrame(timeout));
  if (ack.type != MessageType::kAck) {
    return absl::InternalError(absl::StrCat("unexpected ", MessageTypeName(ack.type), " from ",
                                            server));
  }
  if (!ack.payload.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        server, " rejected the upload: ",
        absl::string_view(reinterpret_cast<const char*>(ack.payload.data()), ack.payload.size())));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status SubmitInput(const ClientOptions& options, const BitString& input,
                         absl::Span<const GroupDesc> groups, RandomSource& rng) {
  POPLAR_ASSIGN_OR_RETURN(auto subs, EncodeClient(input, groups, rng));
  for (int b = 0; b < 2; ++b) {
    POPLAR_RETURN_IF_ERROR(
        Send(options.servers[b], MessageType::kUpload, EncodeUpload(subs[b]), options.timeout));
  }
  return absl::OkStatus();
}

absl::Status SendFinish(const std::string& server, std::chrono::milliseconds timeout) {
  return Send(server, MessageType::kFinish, {}, timeout);
}

}  // namespace poplar::net
