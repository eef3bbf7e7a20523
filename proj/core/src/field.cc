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

#include "poplar/field.h"

#include <stdexcept>

#include "absl/strings/str_cat.h"

namespace poplar {
namespace {

using internal::uint128;
using internal::Uint256;

constexpr uint64_t kInnerModulus = (uint64_t{1} << 62) - 57;
constexpr uint64_t kTestModulus = 65537;
constexpr Uint256 kLeafModulus{{0xFFFFFFFFFFFFFFEDULL, 0xFFFFFFFFFFFFFFFFULL,
                                0xFFFFFFFFFFFFFFFFULL, 0x7FFFFFFFFFFFFFFFULL}};

[[noreturn]] void ThrowMismatch(const FieldSpec* a, const FieldSpec* b) {
  if (a == nullptr || b == nullptr) {
    throw std::invalid_argument("arithmetic on an unbound field element");
  }
  throw std::invalid_argument(
      absl::StrCat("field mismatch: ", a->name(), " vs ", b->name()));
}


inline const FieldSpec& Common(const FieldSpec* a, const FieldSpec* b) {
  if (a != b || a == nullptr) ThrowMismatch(a, b);
  return *a;
}

// x mod (2^62 - 57) for x < 2^124, using 2^62 = 57 (mod p).
inline uint64_t ReduceInner(uint128 x) {
  constexpr uint64_t mask = (uint64_t{1} << 62) - 1;
  uint128 r = (x >> 62) * 57 + (x & mask);
  uint64_t r2 = static_cast<uint64_t>((r >> 62) * 57 + (r & mask));
  if (r2 >= kInnerModulus) r2 -= kInnerModulus;
  return r2;
}

inline uint64_t MulWord(uint64_t a, uint64_t b, const FieldSpec& spec) {
  uint128 prod = static_cast<uint128>(a) * b;
  if (spec.id() == FieldId::kInner) return ReduceInner(prod);
  return static_cast<uint64_t>(prod % spec.modulus().limb[0]);
}

// Reduces a value below 2^256 + 2^250 (five limbs, the top one small) mod
// 2^255 - 19 by folding bits >= 255 with 2^255 = 19.
Uint256 FoldLeaf(std::array<uint64_t, 5> r) {
  constexpr uint64_t top_mask = 0x7FFFFFFFFFFFFFFFULL;
  for (;;) {
    uint64_t top = (r[4] << 1) | (r[3] >> 63);
    if (top == 0) break;
    r[3] &= top_mask;
    r[4] = 0;
    uint128 carry = static_cast<uint128>(top) * 19;
    for (int i = 0; i < 5 && carry != 0; ++i) {
      uint128 cur = static_cast<uint128>(r[i]) + carry;
      r[i] = static_cast<uint64_t>(cur);
      carry = cur >> 64;
    }
  }
  Uint256 out{{r[0], r[1], r[2], r[3]}};
  if (internal::Compare(out, kLeafModulus) >= 0) internal::SubInPlace(out, kLeafModulus);
  return out;
}

Uint256 MulLeaf(const Uint256& a, const Uint256& b) {
  internal::Uint512 p = internal::Multiply(a, b);
  std::array<uint64_t, 5> r{};
  uint128 carry = 0;
  for (int i = 0; i < 4; ++i) {
    uint128 cur = static_cast<uint128>(p[i]) + static_cast<uint128>(p[i + 4]) * 38 + carry;
    r[i] = static_cast<uint64_t>(cur);
    carry = cur >> 64;
  }
  r[4] = static_cast<uint64_t>(carry);
  return FoldLeaf(r);
}

}  // namespace

FieldSpec::FieldSpec(FieldId id, Uint256 modulus, absl::string_view name)
    : id_(id), modulus_(modulus), name_(name) {
  Uint256 pm1 = modulus;
  internal::SubInPlace(pm1, Uint256::FromUint64(1));
  bit_width_ = internal::BitLength(pm1);
}

const FieldSpec& FieldSpec::Inner() {
  static const FieldSpec spec(FieldId::kInner, Uint256::FromUint64(kInnerModulus), "inner");
  return spec;
}

const FieldSpec& FieldSpec::Leaf() {
  static const FieldSpec spec(FieldId::kLeaf, kLeafModulus, "leaf");
  return spec;
}

const FieldSpec& FieldSpec::Test() {
  static const FieldSpec spec(FieldId::kTest, Uint256::FromUint64(kTestModulus), "test");
  return spec;
}

const FieldSpec& FieldSpec::Get(FieldId id) {
  switch (id) {
    case FieldId::kInner:
      return Inner();
    case FieldId::kLeaf:
      return Leaf();
    case FieldId::kTest:
      return Test();
  }
  throw std::invalid_argument("unknown field id");
}

FieldElem FieldElem::FromUint64(uint64_t v, const FieldSpec& spec) {
  return FromUint256(Uint256::FromUint64(v), spec);
}

FieldElem FieldElem::FromInt64(int64_t v, const FieldSpec& spec) {
  if (v >= 0) return FromUint64(static_cast<uint64_t>(v), spec);
  // Two's-complement magnitude is safe for INT64_MIN.
  uint64_t magnitude = ~static_cast<uint64_t>(v) + 1;
  return -FromUint64(magnitude, spec);
}

FieldElem FieldElem::FromUint256(const Uint256& v, const FieldSpec& spec) {
  if (spec.is_word_sized()) {
    std::array<uint8_t, 32> bytes;
    for (int i = 0; i < 32; ++i) bytes[i] = static_cast<uint8_t>(v.limb[i / 8] >> (8 * (i % 8)));
    return FromWideBytes(bytes, spec);
  }
  FieldElem out(spec);
  out.value_ = v;
  while (internal::Compare(out.value_, spec.modulus()) >= 0) {
    internal::SubInPlace(out.value_, spec.modulus());
  }
  return out;
}

FieldElem FieldElem::FromWideBytes(absl::Span<const uint8_t> bytes, const FieldSpec& spec) {
  FieldElem acc(spec);
  const size_t num_words = (bytes.size() + 7) / 8;
  if (spec.is_word_sized()) {
    const uint64_t p = spec.modulus().limb[0];
    uint64_t r = 0;
    for (size_t w = num_words; w-- > 0;) {
      uint64_t word = 0;
      for (size_t i = 0; i < 8 && 8 * w + i < bytes.size(); ++i) {
        word |= static_cast<uint64_t>(bytes[8 * w + i]) << (8 * i);
      }
      uint128 cur = (static_cast<uint128>(r) << 64) | word;
      r = static_cast<uint64_t>(cur % p);
    }
    acc.value_ = Uint256::FromUint64(r);
    return acc;
  }
  // 2^64 mod p as a field element.
  Uint256 shift_value{{0, 1, 0, 0}};
  FieldElem shift = FromUint256(shift_value, spec);
  for (size_t w = num_words; w-- > 0;) {
    uint64_t word = 0;
    for (size_t i = 0; i < 8 && 8 * w + i < bytes.size(); ++i) {
      word |= static_cast<uint64_t>(bytes[8 * w + i]) << (8 * i);
    }
    acc = acc * shift + FromUint256(Uint256::FromUint64(word), spec);
  }
  return acc;
}

absl::StatusOr<FieldElem> FieldElem::FromBytes(absl::Span<const uint8_t> bytes,
                                               const FieldSpec& spec) {
  if (bytes.size() != static_cast<size_t>(spec.byte_width())) {
    return absl::InvalidArgumentError(absl::StrCat("field element for ", spec.name(),
                                                   " needs ", spec.byte_width(),
                                                   " octets, got ", bytes.size()));
  }
  Uint256 v{};
  for (size_t i = 0; i < bytes.size(); ++i) {
    v.limb[i / 8] |= static_cast<uint64_t>(bytes[i]) << (8 * (i % 8));
  }
  if (internal::Compare(v, spec.modulus()) >= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("non-canonical ", spec.name(), " field element"));
  }
  FieldElem out(spec);
  out.value_ = v;
  return out;
}

FieldElem FieldElem::Random(const FieldSpec& spec, RandomSource& rng) {
  std::vector<uint8_t> buf(spec.byte_width() + 8);
  rng.Fill(absl::MakeSpan(buf));
  return FromWideBytes(buf, spec);
}

void FieldElem::AppendBytes(std::vector<uint8_t>& out) const {
  const int width = spec().byte_width();
  for (int i = 0; i < width; ++i) {
    out.push_back(static_cast<uint8_t>(value_.limb[i / 8] >> (8 * (i % 8))));
  }
}

std::vector<uint8_t> FieldElem::ToBytes() const {
  std::vector<uint8_t> out;
  out.reserve(spec().byte_width());
  AppendBytes(out);
  return out;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  const FieldSpec& spec = Common(spec_, o.spec_);
  FieldElem out(spec);
  if (spec.is_word_sized()) {
    uint64_t s = value_.limb[0] + o.value_.limb[0];
    if (s >= spec.modulus().limb[0]) s -= spec.modulus().limb[0];
    out.value_.limb[0] = s;
    return out;
  }
  out.value_ = value_;
  internal::AddInPlace(out.value_, o.value_);
  if (internal::Compare(out.value_, spec.modulus()) >= 0) {
    internal::SubInPlace(out.value_, spec.modulus());
  }
  return out;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  const FieldSpec& spec = Common(spec_, o.spec_);
  FieldElem out(spec);
  if (spec.is_word_sized()) {
    uint64_t a = value_.limb[0], b = o.value_.limb[0];
    out.value_.limb[0] = a >= b ? a - b : a + (spec.modulus().limb[0] - b);
    return out;
  }
  out.value_ = value_;
  if (internal::SubInPlace(out.value_, o.value_)) {
    internal::AddInPlace(out.value_, spec.modulus());
  }
  return out;
}

FieldElem FieldElem::operator-() const {
  const FieldSpec& s = spec();
  FieldElem out(s);
  if (IsZero()) return out;
  out.value_ = s.modulus();
  internal::SubInPlace(out.value_, value_);
  return out;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  const FieldSpec& spec = Common(spec_, o.spec_);
  FieldElem out(spec);
  if (spec.is_word_sized()) {
    out.value_.limb[0] = MulWord(value_.limb[0], o.value_.limb[0], spec);
    return out;
  }
  out.value_ = MulLeaf(value_, o.value_);
  return out;
}

FieldElem FieldElem::Pow(const Uint256& exponent) const {
  FieldElem result = FromUint64(1, spec());
  FieldElem base = *this;
  const int bits = internal::BitLength(exponent);
  for (int i = bits - 1; i >= 0; --i) {
    result = result.Square();
    if ((exponent.limb[i / 64] >> (i % 64)) & 1) result = result * base;
  }
  return result;
}

FieldElem FieldElem::Inverse() const {
  if (IsZero()) throw std::domain_error("inverse of zero");
  Uint256 e = spec().modulus();
  internal::SubInPlace(e, Uint256::FromUint64(2));
  return Pow(e);
}

bool FieldElem::operator==(const FieldElem& o) const {
  return spec_ == o.spec_ && value_ == o.value_;
}

const FieldSpec& FieldElem::spec() const {
  if (spec_ == nullptr) ThrowMismatch(nullptr, nullptr);
  return *spec_;
}

std::optional<int64_t> FieldElem::ToCenteredInt64() const {
  const FieldSpec& s = spec();
  Uint256 half = s.modulus();
  // half = (p - 1) / 2
  for (int i = 0; i < 4; ++i) {
    half.limb[i] = (half.limb[i] >> 1) | (i < 3 ? half.limb[i + 1] << 63 : 0);
  }
  if (internal::Compare(value_, half) <= 0) {
    if (internal::BitLength(value_) > 63) return std::nullopt;
    return static_cast<int64_t>(value_.limb[0]);
  }
  Uint256 magnitude = s.modulus();
  internal::SubInPlace(magnitude, value_);
  if (internal::BitLength(magnitude) > 63) return std::nullopt;
  return -static_cast<int64_t>(magnitude.limb[0]);
}

std::string FieldElem::ToHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const int width = spec().byte_width();
  for (int i = width - 1; i >= 0; --i) {
    uint8_t byte = static_cast<uint8_t>(value_.limb[i / 8] >> (8 * (i % 8)));
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xf]);
  }
  return out;
}

FieldElem InnerProduct(absl::Span<const FieldElem> a, absl::Span<const FieldElem> b,
                       const FieldSpec& spec) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        absl::StrCat("inner product length mismatch: ", a.size(), " vs ", b.size()));
  }
  FieldElem acc(spec);
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace poplar
