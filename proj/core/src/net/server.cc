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

#include "poplar/net/server.h"

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "poplar/net/submission.h"
#include "poplar/net/transport.h"
#include "poplar/status_macros.h"

namespace poplar::net {
namespace {

using std::chrono::milliseconds;
using Clock = std::chrono::steady_clock;

constexpr milliseconds kPoll(50);

std::vector<uint8_t> Text(absl::string_view s) { return {s.begin(), s.end()}; }

struct IngestState {
  SubmissionStore* store;
  int role;
  milliseconds timeout;
  std::atomic<bool> finished{false};
  std::mutex mu;
  std::unique_ptr<TcpConnection> peer;
};

// Serves one inbound connection until it closes. A peer handshake hands the
// connection over to `state` instead.
void ServeConnection(std::unique_ptr<TcpConnection> conn, IngestState* state) {
  while (true) {
    auto frame = conn->ReadFrame(state->timeout);
    if (!frame.ok()) return;
    switch (frame->type) {
      case MessageType::kUpload: {
        absl::Status s = state->store->Ingest(frame->payload);
        std::vector<uint8_t> reason;
        if (!s.ok()) reason = Text(s.ToString());
        if (!conn->WriteFrame(MessageType::kAck, 0, reason).ok()) return;
        break;
      }
      case MessageType::kFinish:
        state->finished = true;
        conn->WriteFrame(MessageType::kAck, 0, {}).IgnoreError();
        return;
      case MessageType::kPeerHello: {
        std::lock_guard<std::mutex> lock(state->mu);
        if (state->role != 1 || state->peer != nullptr) {
          conn->WriteFrame(MessageType::kAbort, 0, Text("unexpected peer hello")).IgnoreError();
          return;
        }
        if (!conn->WriteFrame(MessageType::kAck, 0, {}).ok()) return;
        state->peer = std::move(conn);
        return;
      }
      default:
        conn->WriteFrame(MessageType::kAbort, 0,
                         Text(absl::StrCat("unexpected ", MessageTypeName(frame->type))))
            .IgnoreError();
        return;
    }
  }
}

}  // namespace

absl::StatusOr<AggregationReport> RunServer(const ServerOptions& options) {
  if (options.role != 0 && options.role != 1) return absl::InvalidArgumentError("role must be 0 or 1");
  if (options.role == 0 && options.peer.empty()) {
    return absl::InvalidArgumentError("role 0 needs the peer address");
  }
  if (options.resume && options.spool_path.empty()) {
    return absl::InvalidArgumentError("--resume needs a spool");
  }

  std::unique_ptr<SubmissionStore> store;
  if (options.resume) {
    POPLAR_ASSIGN_OR_RETURN(store, SubmissionStore::Replay(options.spool_path, false));
  } else if (!options.spool_path.empty()) {
    POPLAR_ASSIGN_OR_RETURN(auto spool, Spool::Open(options.spool_path, /*truncate=*/true));
    store = std::make_unique<SubmissionStore>(std::move(spool));
  } else {
    store = std::make_unique<SubmissionStore>();
  }

  POPLAR_ASSIGN_OR_RETURN(auto listener, TcpListener::Listen(options.listen));
  if (options.on_listening) options.on_listening(listener->port());

  IngestState state;
  state.store = store.get();
  state.role = options.role;
  state.timeout = options.timeout;
  std::vector<std::thread> handlers;

  auto ingest_done = [&] {
    if (options.resume || state.finished) return true;
    return options.expected_clients > 0 && store->size() >= options.expected_clients;
  };
  auto peer_ready = [&] {
    if (options.role == 0) return true;
    std::lock_guard<std::mutex> lock(state.mu);
    return state.peer != nullptr;
  };

  // Ingest has no deadline; the wait for the peer afterwards does.
  std::optional<Clock::time_point> peer_deadline;
  absl::Status loop_status;
  while (true) {
    if (ingest_done()) {
      if (peer_ready()) break;
      if (!peer_deadline) peer_deadline = Clock::now() + options.timeout;
      if (Clock::now() > *peer_deadline) {
        loop_status = absl::DeadlineExceededError("peer server never connected");
        break;
      }
    }
    auto conn = listener->Accept(kPoll);
    if (!conn.ok()) {
      loop_status = conn.status();
      break;
    }
    if (*conn != nullptr) handlers.emplace_back(ServeConnection, std::move(*conn), &state);
  }
  for (auto& t : handlers) t.join();
  POPLAR_RETURN_IF_ERROR(loop_status);

  std::unique_ptr<TcpConnection> peer;
  if (options.role == 0) {
    POPLAR_ASSIGN_OR_RETURN(peer, TcpConnection::Connect(options.peer, options.timeout));
    POPLAR_RETURN_IF_ERROR(peer->WriteFrame(MessageType::kPeerHello, 0, {}));
    POPLAR_ASSIGN_OR_RETURN(Frame ack, peer->ReadFrame(options.timeout));
    if (ack.type != MessageType::kAck) {
      return absl::FailedPreconditionError(absl::StrCat("peer refused the handshake: ",
                                                        MessageTypeName(ack.type)));
    }
  } else {
    peer = std::move(state.peer);
  }

  TcpTransport transport(options.role, std::move(peer), options.timeout);
  SecureRandom rng;
  return RunAggregation(options.role, options.config, store->Snapshot(), rng, transport);
}

}  // namespace poplar::net
