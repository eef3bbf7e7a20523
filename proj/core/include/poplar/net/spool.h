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

#ifndef POPLAR_NET_SPOOL_H_
#define POPLAR_NET_SPOOL_H_

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"

namespace poplar::net {

// Append-only file of u32-LE length-prefixed records.
class Spool {
 public:
  struct Contents {
    std::vector<std::vector<uint8_t>> records;
    // Octets after the last complete record (a torn write).
    uint64_t truncated_bytes = 0;
  };

  // Reads every complete record; a partial record at the end is ignored.
  static absl::StatusOr<Contents> Read(const std::string& path);

  // Opens for appending. With `truncate` the file starts empty; otherwise a
  // torn tail is cut off so new records follow the last complete one.
  static absl::StatusOr<std::unique_ptr<Spool>> Open(const std::string& path, bool truncate);

  ~Spool();

  // Writes and flushes one record.
  absl::Status Append(absl::Span<const uint8_t> record);

 private:
  explicit Spool(std::FILE* file) : file_(file) {}
  std::FILE* file_;
};

}  // namespace poplar::net

#endif  // POPLAR_NET_SPOOL_H_
