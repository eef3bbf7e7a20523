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

#include "poplar/net/transport.h"

#include <poll.h>

#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "boost/asio.hpp"
#include "poplar/status_macros.h"

namespace poplar::net {

namespace asio = boost::asio;
using asio::ip::tcp;

absl::Status Transport::Send(MessageType type, uint16_t level,
                             absl::Span<const uint8_t> payload) {
  std::vector<uint8_t> frame = EncodeFrame(type, level, payload);
  stats_.bytes_sent += frame.size();
  stats_.frames_sent += 1;
  stats_.sent_by_type[type] += frame.size();
  stats_.sent_by_round[{type, level}] += frame.size();
  return SendBytes(std::move(frame));
}

absl::StatusOr<std::vector<uint8_t>> Transport::Check(Frame frame, MessageType type,
                                                      uint16_t level) {
  stats_.bytes_received += kFrameHeaderBytes + frame.payload.size();
  if (frame.type == MessageType::kAbort) {
    failed_ = true;
    return absl::AbortedError(absl::StrCat(
        "peer aborted: ", std::string(frame.payload.begin(), frame.payload.end())));
  }
  if (frame.type != type || frame.level != level) {
    std::string reason =
        absl::StrCat("protocol desync: expected ", MessageTypeName(type), " at level ", level,
                     ", received ", MessageTypeName(frame.type), " at level ", frame.level);
    Abort(reason);
    return absl::InternalError(reason);
  }
  return std::move(frame.payload);
}

absl::StatusOr<std::vector<uint8_t>> Transport::Exchange(MessageType type, uint16_t level,
                                                         absl::Span<const uint8_t> payload) {
  if (failed_) return absl::FailedPreconditionError("transport already failed");
  if (party_ == 0) {
    absl::Status s = Send(type, level, payload);
    if (!s.ok()) {
      failed_ = true;
      return s;
    }
  }
  auto frame = ReceiveFrame();
  if (!frame.ok()) {
    failed_ = true;
    return frame.status();
  }
  POPLAR_ASSIGN_OR_RETURN(std::vector<uint8_t> peer, Check(*std::move(frame), type, level));
  if (party_ == 1) {
    absl::Status s = Send(type, level, payload);
    if (!s.ok()) {
      failed_ = true;
      return s;
    }
  }
  return peer;
}

void Transport::Abort(absl::string_view reason) {
  if (failed_) return;
  failed_ = true;
  std::vector<uint8_t> bytes(reason.begin(), reason.end());
  Send(MessageType::kAbort, 0, bytes).IgnoreError();
}

struct LoopbackTransport::Shared {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::vector<uint8_t>> queue[2];  // queue[p] holds frames for party p
  bool closed[2] = {false, false};
};

std::pair<std::unique_ptr<LoopbackTransport>, std::unique_ptr<LoopbackTransport>>
LoopbackTransport::CreatePair(std::chrono::milliseconds timeout) {
  auto shared = std::make_shared<Shared>();
  return {std::unique_ptr<LoopbackTransport>(new LoopbackTransport(0, shared, timeout)),
          std::unique_ptr<LoopbackTransport>(new LoopbackTransport(1, shared, timeout))};
}

LoopbackTransport::LoopbackTransport(int party, std::shared_ptr<Shared> shared,
                                     std::chrono::milliseconds timeout)
    : Transport(party), shared_(std::move(shared)), timeout_(timeout) {}

LoopbackTransport::~LoopbackTransport() {
  std::lock_guard<std::mutex> lock(shared_->mu);
  shared_->closed[party()] = true;
  shared_->cv.notify_all();
}

absl::Status LoopbackTransport::SendBytes(std::vector<uint8_t> frame) {
  std::lock_guard<std::mutex> lock(shared_->mu);
  if (shared_->closed[1 - party()]) return absl::UnavailableError("peer closed");
  shared_->queue[1 - party()].push_back(std::move(frame));
  shared_->cv.notify_all();
  return absl::OkStatus();
}

absl::StatusOr<Frame> LoopbackTransport::ReceiveFrame() {
  std::unique_lock<std::mutex> lock(shared_->mu);
  auto& q = shared_->queue[party()];
  if (!shared_->cv.wait_for(lock, timeout_,
                            [&] { return !q.empty() || shared_->closed[1 - party()]; })) {
    return absl::DeadlineExceededError("timed out waiting for peer");
  }
  if (q.empty()) return absl::UnavailableError("peer closed");
  std::vector<uint8_t> bytes = std::move(q.front());
  q.pop_front();
  lock.unlock();
  size_t consumed = 0;
  return DecodeFrame(bytes, &consumed);
}

absl::StatusOr<std::pair<std::string, uint16_t>> ParseHostPort(absl::string_view host_port) {
  size_t colon = host_port.rfind(':');
  uint32_t port = 0;
  if (colon == absl::string_view::npos ||
      !absl::SimpleAtoi(host_port.substr(colon + 1), &port) || port > 65535) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected host:port, got '", host_port, "'"));
  }
  std::string host(host_port.substr(0, colon));
  if (host.empty()) host = "127.0.0.1";
  return std::make_pair(host, static_cast<uint16_t>(port));
}

struct TcpConnection::Impl {
  asio::io_context io;
  tcp::socket socket{io};
};

TcpConnection::TcpConnection(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
TcpConnection::~TcpConnection() {
  boost::system::error_code ec;
  impl_->socket.shutdown(tcp::socket::shutdown_both, ec);
  impl_->socket.close(ec);
}

absl::StatusOr<std::unique_ptr<TcpConnection>> TcpConnection::Connect(
    const std::string& host_port, std::chrono::milliseconds timeout) {
  POPLAR_ASSIGN_OR_RETURN(auto hp, ParseHostPort(host_port));
  auto impl = std::make_unique<Impl>();
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  boost::system::error_code ec;
  for (;;) {
    tcp::resolver resolver(impl->io);
    auto endpoints = resolver.resolve(hp.first, std::to_string(hp.second), ec);
    if (!ec) {
      asio::connect(impl->socket, endpoints, ec);
      if (!ec) break;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      return absl::UnavailableError(
          absl::StrCat("cannot connect to ", host_port, ": ", ec.message()));
    }
    impl->socket.close(ec);
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  impl->socket.set_option(tcp::no_delay(true), ec);
  return std::unique_ptr<TcpConnection>(new TcpConnection(std::move(impl)));
}

absl::Status TcpConnection::WriteRaw(absl::Span<const uint8_t> bytes) {
  boost::system::error_code ec;
  asio::write(impl_->socket, asio::buffer(bytes.data(), bytes.size()), ec);
  if (ec) return absl::UnavailableError(absl::StrCat("write failed: ", ec.message()));
  return absl::OkStatus();
}

absl::Status TcpConnection::WriteFrame(MessageType type, uint16_t level,
                                       absl::Span<const uint8_t> payload) {
  return WriteRaw(EncodeFrame(type, level, payload));
}

namespace {

absl::Status ReadExactly(tcp::socket& socket, uint8_t* out, size_t n,
                         std::chrono::steady_clock::time_point deadline) {
  size_t got = 0;
  while (got < n) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return absl::DeadlineExceededError("read timed out");
    pollfd pfd{socket.native_handle(), POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(std::min<int64_t>(left.count(), 1 << 30)));
    if (rc == 0) return absl::DeadlineExceededError("read timed out");
    if (rc < 0) return absl::UnavailableError("poll failed");
    boost::system::error_code ec;
    size_t k = socket.read_some(asio::buffer(out + got, n - got), ec);
    if (ec) return absl::UnavailableError(absl::StrCat("read failed: ", ec.message()));
    got += k;
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Frame> TcpConnection::ReadFrame(std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::vector<uint8_t> buf(4);
  POPLAR_RETURN_IF_ERROR(ReadExactly(impl_->socket, buf.data(), 4, deadline));
  uint32_t length = buf[0] | (buf[1] << 8) | (buf[2] << 16) | (uint32_t{buf[3]} << 24);
  if (length < 3 || length > kMaxFrameLength) {
    return absl::InvalidArgumentError(absl::StrCat("bad frame length ", length));
  }
  buf.resize(4 + length);
  POPLAR_RETURN_IF_ERROR(ReadExactly(impl_->socket, buf.data() + 4, length, deadline));
  size_t consumed = 0;
  return DecodeFrame(buf, &consumed);
}

std::string TcpConnection::peer() const {
  boost::system::error_code ec;
  auto ep = impl_->socket.remote_endpoint(ec);
  if (ec) return "unknown";
  return absl::StrCat(ep.address().to_string(), ":", ep.port());
}

struct TcpListener::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
};

TcpListener::TcpListener(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
TcpListener::~TcpListener() {
  boost::system::error_code ec;
  impl_->acceptor.close(ec);
}

absl::StatusOr<std::unique_ptr<TcpListener>> TcpListener::Listen(const std::string& host_port) {
  POPLAR_ASSIGN_OR_RETURN(auto hp, ParseHostPort(host_port));
  auto impl = std::make_unique<Impl>();
  boost::system::error_code ec;
  auto address = asio::ip::make_address(hp.first == "localhost" ? "127.0.0.1" : hp.first, ec);
  if (ec) return absl::InvalidArgumentError(absl::StrCat("bad address ", hp.first));
  tcp::endpoint endpoint(address, hp.second);
  impl->acceptor.open(endpoint.protocol(), ec);
  if (!ec) impl->acceptor.set_option(tcp::acceptor::reuse_address(true), ec);
  if (!ec) impl->acceptor.bind(endpoint, ec);
  if (!ec) impl->acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (!ec) impl->acceptor.non_blocking(true, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat("cannot listen on ", host_port, ": ", ec.message()));
  }
  return std::unique_ptr<TcpListener>(new TcpListener(std::move(impl)));
}

absl::StatusOr<std::unique_ptr<TcpConnection>> TcpListener::Accept(
    std::chrono::milliseconds poll) {
  pollfd pfd{impl_->acceptor.native_handle(), POLLIN, 0};
  int rc = ::poll(&pfd, 1, static_cast<int>(poll.count()));
  if (rc == 0) return std::unique_ptr<TcpConnection>();
  if (rc < 0) return absl::UnavailableError("poll failed on listener");
  auto impl = std::make_unique<TcpConnection::Impl>();
  boost::system::error_code ec;
  impl_->acceptor.accept(impl->socket, ec);
  if (ec == asio::error::would_block || ec == asio::error::try_again) {
    return std::unique_ptr<TcpConnection>();
  }
  if (ec) return absl::UnavailableError(absl::StrCat("accept failed: ", ec.message()));
  impl->socket.non_blocking(false, ec);
  impl->socket.set_option(tcp::no_delay(true), ec);
  return std::unique_ptr<TcpConnection>(new TcpConnection(std::move(impl)));
}

uint16_t TcpListener::port() const {
  boost::system::error_code ec;
  return impl_->acceptor.local_endpoint(ec).port();
}

TcpTransport::TcpTransport(int party, std::unique_ptr<TcpConnection> connection,
                           std::chrono::milliseconds timeout)
    : Transport(party), connection_(std::move(connection)), timeout_(timeout) {}

absl::Status TcpTransport::SendBytes(std::vector<uint8_t> frame) {
  return connection_->WriteRaw(frame);
}

absl::StatusOr<Frame> TcpTransport::ReceiveFrame() { return connection_->ReadFrame(timeout_); }

}  // namespace poplar::net
