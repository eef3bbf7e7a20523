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

#ifndef POPLAR_BIT_STRING_H_
#define POPLAR_BIT_STRING_H_

#include <cstdint>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace poplar {

// A bit string, most significant bit first. Bit 0 is the first bit walked
// down the prefix tree.
class BitString {
 public:
  BitString() = default;

  // Low `length` bits of `v`, most significant first.
  static BitString FromUint64(uint64_t v, int length);
  // Parses "0101".
  static absl::StatusOr<BitString> FromBinary(absl::string_view text);
  // Parses ceil(length / 4) hex digits; trailing pad bits must be zero.
  static absl::StatusOr<BitString> FromHex(absl::string_view hex, int length);
  // All-ones string of the given length.
  static BitString Ones(int length);

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool bit(int i) const { return (words_[i / 64] >> (63 - i % 64)) & 1; }

  void PushBack(bool b);
  BitString Append(bool b) const {
    BitString out = *this;
    out.PushBack(b);
    return out;
  }
  BitString Prefix(int length) const;

  std::string ToBinary() const;
  std::string ToHex() const;
  // Packed big-endian octets, zero padded at the end.
  std::vector<uint8_t> ToBytes() const;
  static absl::StatusOr<BitString> FromBytes(const std::vector<uint8_t>& bytes, int length);

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }
  // Shorter strings first, then lexicographic.
  friend bool operator<(const BitString& a, const BitString& b);

  template <typename H>
  friend H AbslHashValue(H h, const BitString& s) {
    return H::combine(std::move(h), s.words_, s.size_);
  }

 private:
  std::vector<uint64_t> words_;
  int size_ = 0;
};

}  // namespace poplar

#endif  // POPLAR_BIT_STRING_H_
