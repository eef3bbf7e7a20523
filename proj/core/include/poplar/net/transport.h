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

#ifndef POPLAR_NET_TRANSPORT_H_
#define POPLAR_NET_TRANSPORT_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"
#include "poplar/net/wire.h"

namespace poplar::net {

struct TrafficStats {
  uint64_t bytes_sent = 0;
  uint64_t bytes_received = 0;
  uint64_t frames_sent = 0;
  // Bytes sent per message type, frame headers included.
  std::map<MessageType, uint64_t> sent_by_type;
  // Bytes sent per (message type, level).
  std::map<std::pair<MessageType, uint16_t>, uint64_t> sent_by_round;
};

// Server-to-server channel. Every round is a symmetric exchange of one frame
// each way, tagged with a message type and a level. Party 0 sends first and
// party 1 replies, so blocking streams never deadlock.
class Transport {
 public:
  explicit Transport(int party) : party_(party) {}
  virtual ~Transport() = default;

  // Sends `payload` and returns the peer's payload for the same round. A
  // peer ABORT yields Aborted; a type or level mismatch sends ABORT to the
  // peer and yields Internal. After either, every call fails.
  absl::StatusOr<std::vector<uint8_t>> Exchange(MessageType type, uint16_t level,
                                                absl::Span<const uint8_t> payload);

  // Tells the peer this side is giving up; best effort.
  void Abort(absl::string_view reason);

  int party() const { return party_; }
  const TrafficStats& stats() const { return stats_; }

 protected:
  virtual absl::Status SendBytes(std::vector<uint8_t> frame) = 0;
  virtual absl::StatusOr<Frame> ReceiveFrame() = 0;

 private:
  absl::Status Send(MessageType type, uint16_t level, absl::Span<const uint8_t> payload);
  absl::StatusOr<std::vector<uint8_t>> Check(Frame frame, MessageType type, uint16_t level);

  int party_;
  TrafficStats stats_;
  bool failed_ = false;
};

// In-process pair joined by two queues.
class LoopbackTransport final : public Transport {
 public:
  static std::pair<std::unique_ptr<LoopbackTransport>, std::unique_ptr<LoopbackTransport>>
  CreatePair(std::chrono::milliseconds timeout = std::chrono::minutes(10));

  ~LoopbackTransport() override;

 protected:
  absl::Status SendBytes(std::vector<uint8_t> frame) override;
  absl::StatusOr<Frame> ReceiveFrame() override;

 private:
  struct Shared;
  LoopbackTransport(int party, std::shared_ptr<Shared> shared,
                    std::chrono::milliseconds timeout);

  std::shared_ptr<Shared> shared_;
  std::chrono::milliseconds timeout_;
};

// A framed TCP connection.
class TcpConnection {
 public:
  // Retries until `timeout` elapses (the peer may not be listening yet).
  static absl::StatusOr<std::unique_ptr<TcpConnection>> Connect(
      const std::string& host_port, std::chrono::milliseconds timeout);
  ~TcpConnection();

  absl::Status WriteFrame(MessageType type, uint16_t level, absl::Span<const uint8_t> payload);
  absl::Status WriteRaw(absl::Span<const uint8_t> bytes);
  // Fails with DeadlineExceeded if nothing arrives within `timeout`.
  absl::StatusOr<Frame> ReadFrame(std::chrono::milliseconds timeout);
  std::string peer() const;

 private:
  friend class TcpListener;
  struct Impl;
  explicit TcpConnection(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

class TcpListener {
 public:
  // "host:port"; port 0 picks a free port.
  static absl::StatusOr<std::unique_ptr<TcpListener>> Listen(const std::string& host_port);
  ~TcpListener();

  // Waits up to `poll` for a connection; returns nullptr on timeout.
  absl::StatusOr<std::unique_ptr<TcpConnection>> Accept(std::chrono::milliseconds poll);
  uint16_t port() const;

 private:
  struct Impl;
  explicit TcpListener(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

class TcpTransport final : public Transport {
 public:
  TcpTransport(int party, std::unique_ptr<TcpConnection> connection,
               std::chrono::milliseconds timeout);

 protected:
  absl::Status SendBytes(std::vector<uint8_t> frame) override;
  absl::StatusOr<Frame> ReceiveFrame() override;

 private:
  std::unique_ptr<TcpConnection> connection_;
  std::chrono::milliseconds timeout_;
};

// Splits "host:port".
absl::StatusOr<std::pair<std::string, uint16_t>> ParseHostPort(absl::string_view host_port);

}  // namespace poplar::net

#endif  // POPLAR_NET_TRANSPORT_H_
