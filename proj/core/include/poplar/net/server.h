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

#ifndef POPLAR_NET_SERVER_H_
#define POPLAR_NET_SERVER_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>

#include "absl/status/statusor.h"
#include "poplar/net/protocol.h"

namespace poplar::net {

struct ServerOptions {
  int role = 0;
  // Address to accept client uploads (and, for role 1, the peer) on.
  std::string listen = "127.0.0.1:0";
  // Role 0 dials this address once ingest ends.
  std::string peer;
  RunConfig config;
  // Stop ingesting after this many accepted uploads; 0 waits for FINISH.
  uint64_t expected_clients = 0;
  // Accepted uploads are appended here when set.
  std::string spool_path;
  // Skip ingest and aggregate the uploads already in the spool.
  bool resume = false;
  std::chrono::milliseconds timeout = std::chrono::minutes(5);
  // Called with the bound port once listening (tests bind port 0).
  std::function<void(uint16_t)> on_listening;
};

// Ingests uploads, pairs with the peer server and runs the aggregation.
absl::StatusOr<AggregationReport> RunServer(const ServerOptions& options);

}  // namespace poplar::net

#endif  // POPLAR_NET_SERVER_H_
