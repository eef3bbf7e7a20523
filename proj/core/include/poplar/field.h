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

#ifndef POPLAR_FIELD_H_
#define POPLAR_FIELD_H_

#include <cstdint>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/internal/uint256.h"
#include "poplar/random.h"

namespace poplar {

enum class FieldId : uint8_t { kInner = 0, kLeaf = 1, kTest = 2 };

// A prime field used for payloads and sketches.
//
//   kInner: p = 2^62 - 57        (tree levels 1..n-1, 8-octet encoding)
//   kLeaf:  p = 2^255 - 19       (level n, 32-octet encoding)
//   kTest:  p = 65537            (statistical tests, 3-octet encoding)
//
// Elements are encoded little-endian in byte_width() octets.
class FieldSpec {
 public:
  static const FieldSpec& Inner();
  static const FieldSpec& Leaf();
  static const FieldSpec& Test();
  static const FieldSpec& Get(FieldId id);

  FieldId id() const { return id_; }
  const internal::Uint256& modulus() const { return modulus_; }
  // ceil(log2 p).
  int bit_width() const { return bit_width_; }
  int byte_width() const { return (bit_width_ + 7) / 8; }
  absl::string_view name() const { return name_; }
  // True when the modulus fits in one 64-bit word.
  bool is_word_sized() const { return modulus_.limb[1] == 0; }

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

 private:
  FieldSpec(FieldId id, internal::Uint256 modulus, absl::string_view name);

  FieldId id_;
  internal::Uint256 modulus_;
  int bit_width_;
  absl::string_view name_;
};

// Canonically reduced element of one of the FieldSpecs. Mixing elements of
// different fields throws std::invalid_argument.
class FieldElem {
 public:
  // An unbound element; any arithmetic on it throws.
  FieldElem() = default;
  explicit FieldElem(const FieldSpec& spec) : spec_(&spec) {}

  static FieldElem FromUint64(uint64_t v, const FieldSpec& spec);
  static FieldElem FromInt64(int64_t v, const FieldSpec& spec);
  static FieldElem FromUint256(const internal::Uint256& v, const FieldSpec& spec);
  // Little-endian integer of any length, reduced mod p.
  static FieldElem FromWideBytes(absl::Span<const uint8_t> bytes, const FieldSpec& spec);
  // Canonical decode: exactly byte_width() octets holding a value < p.
  static absl::StatusOr<FieldElem> FromBytes(absl::Span<const uint8_t> bytes,
                                             const FieldSpec& spec);
  // Uniform element: byte_width() + 8 random octets reduced mod p.
  static FieldElem Random(const FieldSpec& spec, RandomSource& rng);

  void AppendBytes(std::vector<uint8_t>& out) const;
  std::vector<uint8_t> ToBytes() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  FieldElem Square() const { return *this * *this; }
  FieldElem Pow(const internal::Uint256& exponent) const;
  // Throws std::domain_error on zero.
  FieldElem Inverse() const;

  bool IsZero() const { return internal::IsZero(value_); }
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  bool bound() const { return spec_ != nullptr; }
  const FieldSpec& spec() const;
  const internal::Uint256& value() const { return value_; }
  uint64_t low_word() const { return value_.limb[0]; }

  // Centered lift to (-p/2, p/2]; nullopt when the magnitude needs more than
  // 63 bits.
  std::optional<int64_t> ToCenteredInt64() const;

  std::string ToHex() const;

 private:
  const FieldSpec* spec_ = nullptr;
  internal::Uint256 value_{};
};

// Inner product over `spec`; throws std::invalid_argument on a length
// mismatch.
FieldElem InnerProduct(absl::Span<const FieldElem> a, absl::Span<const FieldElem> b,
                       const FieldSpec& spec);

}  // namespace poplar

#endif  // POPLAR_FIELD_H_
