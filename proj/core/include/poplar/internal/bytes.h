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

#ifndef POPLAR_INTERNAL_BYTES_H_
#define POPLAR_INTERNAL_BYTES_H_

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/types/span.h"

namespace poplar::internal {

// Appends little-endian encodings to a growing buffer.
class ByteWriter {
 public:
  explicit ByteWriter(std::vector<uint8_t>* out) : out_(out) {}

  void U8(uint8_t v) { out_->push_back(v); }
  void U16(uint16_t v) { Le(v, 2); }
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void Bytes(absl::Span<const uint8_t> b) {
    out_->insert(out_->end(), b.begin(), b.end());
  }

 private:
  void Le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_->push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t>* out_;
};

// Bounds-checked little-endian reader. Every read fails with
// InvalidArgument on truncation instead of reading past the end.
class ByteReader {
 public:
  explicit ByteReader(absl::Span<const uint8_t> in) : in_(in) {}

  absl::StatusOr<uint8_t> U8() {
    auto v = Le(1);
    if (!v.ok()) return v.status();
    return static_cast<uint8_t>(*v);
  }
  absl::StatusOr<uint16_t> U16() {
    auto v = Le(2);
    if (!v.ok()) return v.status();
    return static_cast<uint16_t>(*v);
  }
  absl::StatusOr<uint32_t> U32() {
    auto v = Le(4);
    if (!v.ok()) return v.status();
    return static_cast<uint32_t>(*v);
  }
  absl::StatusOr<uint64_t> U64() { return Le(8); }

  absl::StatusOr<absl::Span<const uint8_t>> Bytes(size_t n) {
    if (remaining() < n) {
      return absl::InvalidArgumentError(
          absl::StrCat("truncated buffer: need ", n, " bytes, have ", remaining()));
    }
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  absl::Span<const uint8_t> Rest() const { return in_.subspan(pos_); }
  absl::Status Skip(size_t n) {
    auto b = Bytes(n);
    return b.ok() ? absl::OkStatus() : b.status();
  }

  size_t remaining() const { return in_.size() - pos_; }
  size_t position() const { return pos_; }
  bool done() const { return pos_ == in_.size(); }

 private:
  absl::StatusOr<uint64_t> Le(int n) {
    if (remaining() < static_cast<size_t>(n)) {
      return absl::InvalidArgumentError(
          absl::StrCat("truncated buffer: need ", n, " bytes, have ", remaining()));
    }
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }

  absl::Span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace poplar::internal

#endif  // POPLAR_INTERNAL_BYTES_H_
