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

#ifndef POPLAR_NET_CLIENT_H_
#define POPLAR_NET_CLIENT_H_

#include <array>
#include <chrono>
#include <string>

#include "absl/status/status.h"
#include "absl/types/span.h"
#include "poplar/bit_string.h"
#include "poplar/group.h"
#include "poplar/random.h"

namespace poplar::net {

struct ClientOptions {
  std::array<std::string, 2> servers;
  std::chrono::milliseconds timeout = std::chrono::seconds(30);
};

// Encodes `input` with `groups` and uploads one share to each server.
absl::Status SubmitInput(const ClientOptions& options, const BitString& input,
                         absl::Span<const GroupDesc> groups, RandomSource& rng);

// Asks a server to stop ingesting.
absl::Status SendFinish(const std::string& server, std::chrono::milliseconds timeout);

}  // namespace poplar::net

#endif  // POPLAR_NET_CLIENT_H_
