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

#ifndef POPLAR_NET_SUBMISSION_H_
#define POPLAR_NET_SUBMISSION_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/internal/hash.h"
#include "poplar/net/spool.h"
#include "poplar/submission.h"

namespace poplar::net {

inline constexpr uint8_t kUploadVersion = 1;

// Upload layout: u8 version | 16-octet nonce | u16 key length | key |
// u32 pp length | pp | u32 correlated length | correlated | 32-octet digest
// of the pp octets.
std::vector<uint8_t> EncodeUpload(const ClientSubmission& submission);

struct ClientRecord {
  ClientSubmission submission;
  internal::Digest pp_digest;
};

// Rejects malformed uploads and digests that do not match the pp octets.
absl::StatusOr<ClientRecord> DecodeUpload(absl::Span<const uint8_t> bytes);

// Uploads received by one server, deduplicated by nonce, optionally
// mirrored to a spool. Thread-safe.
class SubmissionStore {
 public:
  explicit SubmissionStore(std::unique_ptr<Spool> spool = nullptr);

  // Rebuilds a store from a spool file; malformed or duplicate records are
  // skipped, as on first ingest.
  static absl::StatusOr<std::unique_ptr<SubmissionStore>> Replay(const std::string& path,
                                                                 bool keep_appending);

  absl::Status Ingest(absl::Span<const uint8_t> upload);

  size_t size() const;
  std::vector<ClientRecord> Snapshot() const;

 private:
  mutable std::mutex mu_;
  std::unique_ptr<Spool> spool_;
  std::vector<ClientRecord> records_;
  absl::flat_hash_set<std::string> nonces_;
};

}  // namespace poplar::net

#endif  // POPLAR_NET_SUBMISSION_H_
