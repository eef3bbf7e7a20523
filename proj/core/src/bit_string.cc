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

#include "poplar/bit_string.h"

#include "absl/strings/str_cat.h"

namespace poplar {

BitString BitString::FromUint64(uint64_t v, int length) {
  BitString s;
  for (int i = length - 1; i >= 0; --i) s.PushBack(i < 64 && ((v >> i) & 1));
  return s;
}

absl::StatusOr<BitString> BitString::FromBinary(absl::string_view text) {
  BitString s;
  for (char c : text) {
    if (c != '0' && c != '1') {
      return absl::InvalidArgumentError(absl::StrCat("not a binary string: ", text));
    }
    s.PushBack(c == '1');
  }
  return s;
}

absl::StatusOr<BitString> BitString::FromHex(absl::string_view hex, int length) {
  if (length < 0 || hex.size() != static_cast<size_t>((length + 3) / 4)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", (length + 3) / 4, " hex digits for ", length, " bits"));
  }
  BitString s;
  for (size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      return absl::InvalidArgumentError(absl::StrCat("bad hex digit in ", hex));
    }
    for (int j = 3; j >= 0; --j) {
      bool b = (v >> j) & 1;
      if (s.size() < length) {
        s.PushBack(b);
      } else if (b) {
        return absl::InvalidArgumentError("nonzero padding bits in hex string");
      }
    }
  }
  return s;
}

BitString BitString::Ones(int length) {
  BitString s;
  for (int i = 0; i < length; ++i) s.PushBack(true);
  return s;
}

void BitString::PushBack(bool b) {
  if (size_ % 64 == 0) words_.push_back(0);
  if (b) words_.back() |= uint64_t{1} << (63 - size_ % 64);
  ++size_;
}

BitString BitString::Prefix(int length) const {
  BitString s;
  s.size_ = length;
  s.words_.assign(words_.begin(), words_.begin() + (length + 63) / 64);
  if (length % 64 != 0) s.words_.back() &= ~uint64_t{0} << (64 - length % 64);
  return s;
}

std::string BitString::ToBinary() const {
  std::string out;
  out.reserve(size_);
  for (int i = 0; i < size_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

std::string BitString::ToHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < size_; i += 4) {
    int v = 0;
    for (int j = 0; j < 4; ++j) v = (v << 1) | (i + j < size_ && bit(i + j));
    out.push_back(kDigits[v]);
  }
  return out;
}

std::vector<uint8_t> BitString::ToBytes() const {
  std::vector<uint8_t> out((size_ + 7) / 8);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>(words_[i / 8] >> (56 - 8 * (i % 8)));
  }
  return out;
}

absl::StatusOr<BitString> BitString::FromBytes(const std::vector<uint8_t>& bytes, int length) {
  if (length < 0 || bytes.size() != static_cast<size_t>((length + 7) / 8)) {
    return absl::InvalidArgumentError("bit string length does not match its octets");
  }
  BitString s;
  for (int i = 0; i < length; ++i) s.PushBack((bytes[i / 8] >> (7 - i % 8)) & 1);
  if (s.ToBytes() != bytes) return absl::InvalidArgumentError("nonzero padding bits");
  return s;
}

bool operator<(const BitString& a, const BitString& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  return a.words_ < b.words_;
}

}  // namespace poplar
