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

#ifndef POPLAR_GROUP_H_
#define POPLAR_GROUP_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "poplar/field.h"
#include "poplar/internal/uint256.h"
#include "poplar/random.h"

namespace poplar {

// Wire code of a payload group. kRing is followed on the wire by one octet
// holding m - 1.
enum class GroupCode : uint8_t {
  kTrivial = 0,
  kInner = 1,
  kInnerPair = 2,
  kLeaf = 3,
  kLeafPair = 4,
  kTest = 5,
  kTestPair = 6,
  kRing = 7,
};

// Descriptor of a per-level payload group: the trivial group, F or F x F
// over one of the fields, or Z_{2^m} for 1 <= m <= 256.
class GroupDesc {
 public:
  GroupDesc() = default;

  static GroupDesc Trivial() { return GroupDesc(); }
  static GroupDesc Field(const FieldSpec& spec, int arity);
  static GroupDesc Ring(int bits);
  static GroupDesc Inner() { return Field(FieldSpec::Inner(), 1); }
  static GroupDesc InnerPair() { return Field(FieldSpec::Inner(), 2); }
  static GroupDesc Leaf() { return Field(FieldSpec::Leaf(), 1); }
  static GroupDesc LeafPair() { return Field(FieldSpec::Leaf(), 2); }
  static GroupDesc Test() { return Field(FieldSpec::Test(), 1); }
  static GroupDesc TestPair() { return Field(FieldSpec::Test(), 2); }

  // Reads a code (and the ring width octet, if any).
  static absl::StatusOr<GroupDesc> Decode(absl::Span<const uint8_t> bytes, size_t* consumed);
  void AppendCode(std::vector<uint8_t>& out) const;
  // Octets used by AppendCode.
  int CodeBytes() const { return code_ == GroupCode::kRing ? 2 : 1; }

  GroupCode code() const { return code_; }
  bool is_trivial() const { return code_ == GroupCode::kTrivial; }
  bool is_ring() const { return code_ == GroupCode::kRing; }
  bool is_field() const { return field_ != nullptr; }
  // Field groups only.
  const FieldSpec& field() const;
  // Number of coordinates: 0 (trivial), 1 (ring), or the field arity.
  int arity() const { return arity_; }
  int ring_bits() const { return ring_bits_; }

  // ceil(log2 |G|); 0 for the trivial group.
  int LogSize() const { return log_size_; }
  int EncodedBytes() const;

  std::string ToString() const;

  friend bool operator==(const GroupDesc& a, const GroupDesc& b) {
    return a.code_ == b.code_ && a.ring_bits_ == b.ring_bits_;
  }
  friend bool operator!=(const GroupDesc& a, const GroupDesc& b) { return !(a == b); }

 private:
  GroupCode code_ = GroupCode::kTrivial;
  const FieldSpec* field_ = nullptr;
  int arity_ = 0;
  int ring_bits_ = 0;
  int log_size_ = 0;
};

// Element of a GroupDesc. Field groups hold up to two FieldElems; ring
// groups hold one masked integer.
class GroupElem {
 public:
  // The unique element of the trivial group.
  GroupElem() = default;

  static GroupElem Zero(const GroupDesc& desc);
  static GroupElem OfField(const GroupDesc& desc, const FieldElem& a);
  static GroupElem OfFields(const GroupDesc& desc, const FieldElem& a, const FieldElem& b);
  static GroupElem OfRing(const GroupDesc& desc, const internal::Uint256& v);
  // Every coordinate set to `v` (reduced into the group).
  static GroupElem OfUint64(const GroupDesc& desc, uint64_t v);
  static GroupElem Random(const GroupDesc& desc, RandomSource& rng);

  // Reduces a little-endian octet string into the group: a ring keeps the
  // low m bits, a field group splits the octets evenly across coordinates.
  static GroupElem FromWideBytes(const GroupDesc& desc, absl::Span<const uint8_t> bytes);

  static absl::StatusOr<GroupElem> Decode(const GroupDesc& desc,
                                          absl::Span<const uint8_t> bytes);
  void AppendBytes(std::vector<uint8_t>& out) const;

  GroupElem operator+(const GroupElem& o) const;
  GroupElem operator-(const GroupElem& o) const;
  GroupElem operator-() const;
  GroupElem& operator+=(const GroupElem& o) { return *this = *this + o; }
  GroupElem& operator-=(const GroupElem& o) { return *this = *this - o; }

  bool IsZero() const;
  bool operator==(const GroupElem& o) const;
  bool operator!=(const GroupElem& o) const { return !(*this == o); }

  const GroupDesc& desc() const { return desc_; }
  const FieldElem& coord(int i) const { return coord_.at(i); }
  const internal::Uint256& ring_value() const { return ring_; }

  std::string ToString() const;

 private:
  void CheckSameGroup(const GroupElem& o) const;

  GroupDesc desc_;
  std::array<FieldElem, 2> coord_;
  internal::Uint256 ring_{};
};

}  // namespace poplar

#endif  // POPLAR_GROUP_H_
