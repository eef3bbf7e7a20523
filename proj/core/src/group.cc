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

#include "poplar/group.h"

#include <stdexcept>

#include "absl/strings/str_cat.h"

namespace poplar {
namespace {

using internal::Uint256;

Uint256 RingMask(int bits) {
  Uint256 mask{};
  for (int i = 0; i < 4; ++i) {
    int lo = 64 * i;
    if (bits >= lo + 64) {
      mask.limb[i] = ~uint64_t{0};
    } else if (bits > lo) {
      mask.limb[i] = (uint64_t{1} << (bits - lo)) - 1;
    }
  }
  return mask;
}

Uint256 And(const Uint256& a, const Uint256& b) {
  return Uint256{{a.limb[0] & b.limb[0], a.limb[1] & b.limb[1], a.limb[2] & b.limb[2],
                  a.limb[3] & b.limb[3]}};
}

GroupCode FieldCode(FieldId id, int arity) {
  switch (id) {
    case FieldId::kInner:
      return arity == 1 ? GroupCode::kInner : GroupCode::kInnerPair;
    case FieldId::kLeaf:
      return arity == 1 ? GroupCode::kLeaf : GroupCode::kLeafPair;
    case FieldId::kTest:
      return arity == 1 ? GroupCode::kTest : GroupCode::kTestPair;
  }
  throw std::invalid_argument("unknown field id");
}

}  // namespace

GroupDesc GroupDesc::Field(const FieldSpec& spec, int arity) {
  if (arity != 1 && arity != 2) throw std::invalid_argument("field group arity must be 1 or 2");
  GroupDesc g;
  g.code_ = FieldCode(spec.id(), arity);
  g.field_ = &spec;
  g.arity_ = arity;
  Uint256 pm1 = spec.modulus();
  internal::SubInPlace(pm1, Uint256::FromUint64(1));
  if (arity == 1) {
    g.log_size_ = internal::BitLength(pm1);
  } else {
    internal::Uint512 sq = internal::Multiply(spec.modulus(), spec.modulus());
    internal::Decrement(sq);
    g.log_size_ = internal::BitLength(sq);
  }
  return g;
}

GroupDesc GroupDesc::Ring(int bits) {
  if (bits < 1 || bits > 256) throw std::invalid_argument("ring width must be in [1, 256]");
  GroupDesc g;
  g.code_ = GroupCode::kRing;
  g.arity_ = 1;
  g.ring_bits_ = bits;
  g.log_size_ = bits;
  return g;
}

absl::StatusOr<GroupDesc> GroupDesc::Decode(absl::Span<const uint8_t> bytes, size_t* consumed) {
  if (bytes.empty()) return absl::InvalidArgumentError("truncated group code");
  *consumed = 1;
  switch (static_cast<GroupCode>(bytes[0])) {
    case GroupCode::kTrivial:
      return Trivial();
    case GroupCode::kInner:
      return Inner();
    case GroupCode::kInnerPair:
      return InnerPair();
    case GroupCode::kLeaf:
      return Leaf();
    case GroupCode::kLeafPair:
      return LeafPair();
    case GroupCode::kTest:
      return Test();
    case GroupCode::kTestPair:
      return TestPair();
    case GroupCode::kRing:
      if (bytes.size() < 2) return absl::InvalidArgumentError("truncated ring width");
      *consumed = 2;
      return Ring(int{bytes[1]} + 1);
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown group code ", int{bytes[0]}));
}

void GroupDesc::AppendCode(std::vector<uint8_t>& out) const {
  out.push_back(static_cast<uint8_t>(code_));
  if (is_ring()) out.push_back(static_cast<uint8_t>(ring_bits_ - 1));
}

const FieldSpec& GroupDesc::field() const {
  if (field_ == nullptr) throw std::invalid_argument("not a field group: " + ToString());
  return *field_;
}

int GroupDesc::EncodedBytes() const {
  if (is_ring()) return (ring_bits_ + 7) / 8;
  if (is_field()) return arity_ * field_->byte_width();
  return 0;
}

std::string GroupDesc::ToString() const {
  if (is_trivial()) return "trivial";
  if (is_ring()) return absl::StrCat("Z/2^", ring_bits_);
  return arity_ == 1 ? std::string(field_->name()) : absl::StrCat(field_->name(), "^2");
}

GroupElem GroupElem::Zero(const GroupDesc& desc) {
  GroupElem e;
  e.desc_ = desc;
  if (desc.is_field()) {
    for (int i = 0; i < desc.arity(); ++i) e.coord_[i] = FieldElem(desc.field());
  }
  return e;
}

GroupElem GroupElem::OfField(const GroupDesc& desc, const FieldElem& a) {
  if (!desc.is_field() || desc.arity() != 1 || a.spec().id() != desc.field().id()) {
    throw std::invalid_argument("element does not belong to " + desc.ToString());
  }
  GroupElem e = Zero(desc);
  e.coord_[0] = a;
  return e;
}

GroupElem GroupElem::OfFields(const GroupDesc& desc, const FieldElem& a, const FieldElem& b) {
  if (!desc.is_field() || desc.arity() != 2 || a.spec().id() != desc.field().id() ||
      b.spec().id() != desc.field().id()) {
    throw std::invalid_argument("elements do not belong to " + desc.ToString());
  }
  GroupElem e = Zero(desc);
  e.coord_[0] = a;
  e.coord_[1] = b;
  return e;
}

GroupElem GroupElem::OfRing(const GroupDesc& desc, const Uint256& v) {
  if (!desc.is_ring()) throw std::invalid_argument("not a ring group: " + desc.ToString());
  GroupElem e = Zero(desc);
  e.ring_ = And(v, RingMask(desc.ring_bits()));
  return e;
}

GroupElem GroupElem::OfUint64(const GroupDesc& desc, uint64_t v) {
  if (desc.is_ring()) return OfRing(desc, Uint256::FromUint64(v));
  GroupElem e = Zero(desc);
  for (int i = 0; i < desc.arity(); ++i) e.coord_[i] = FieldElem::FromUint64(v, desc.field());
  return e;
}

GroupElem GroupElem::Random(const GroupDesc& desc, RandomSource& rng) {
  if (desc.is_trivial()) return Zero(desc);
  std::vector<uint8_t> buf(desc.is_ring() ? 32 : desc.arity() * (desc.field().byte_width() + 8));
  rng.Fill(absl::MakeSpan(buf));
  return FromWideBytes(desc, buf);
}

GroupElem GroupElem::FromWideBytes(const GroupDesc& desc, absl::Span<const uint8_t> bytes) {
  GroupElem e = Zero(desc);
  if (desc.is_ring()) {
    Uint256 v{};
    for (size_t i = 0; i < bytes.size() && i < 32; ++i) {
      v.limb[i / 8] |= static_cast<uint64_t>(bytes[i]) << (8 * (i % 8));
    }
    e.ring_ = And(v, RingMask(desc.ring_bits()));
  } else if (desc.is_field()) {
    const size_t chunk = bytes.size() / desc.arity();
    for (int i = 0; i < desc.arity(); ++i) {
      e.coord_[i] = FieldElem::FromWideBytes(bytes.subspan(i * chunk, chunk), desc.field());
    }
  }
  return e;
}

absl::StatusOr<GroupElem> GroupElem::Decode(const GroupDesc& desc,
                                            absl::Span<const uint8_t> bytes) {
  if (bytes.size() != static_cast<size_t>(desc.EncodedBytes())) {
    return absl::InvalidArgumentError(absl::StrCat("element of ", desc.ToString(), " needs ",
                                                   desc.EncodedBytes(), " octets, got ",
                                                   bytes.size()));
  }
  GroupElem e = Zero(desc);
  if (desc.is_ring()) {
    Uint256 v{};
    for (size_t i = 0; i < bytes.size(); ++i) {
      v.limb[i / 8] |= static_cast<uint64_t>(bytes[i]) << (8 * (i % 8));
    }
    if (And(v, RingMask(desc.ring_bits())) != v) {
      return absl::InvalidArgumentError("ring element has bits above its width");
    }
    e.ring_ = v;
  } else if (desc.is_field()) {
    const size_t width = desc.field().byte_width();
    for (int i = 0; i < desc.arity(); ++i) {
      auto c = FieldElem::FromBytes(bytes.subspan(i * width, width), desc.field());
      if (!c.ok()) return c.status();
      e.coord_[i] = *c;
    }
  }
  return e;
}

void GroupElem::AppendBytes(std::vector<uint8_t>& out) const {
  if (desc_.is_ring()) {
    const int width = desc_.EncodedBytes();
    for (int i = 0; i < width; ++i) {
      out.push_back(static_cast<uint8_t>(ring_.limb[i / 8] >> (8 * (i % 8))));
    }
    return;
  }
  for (int i = 0; i < desc_.arity(); ++i) coord_[i].AppendBytes(out);
}

void GroupElem::CheckSameGroup(const GroupElem& o) const {
  if (desc_ != o.desc_) {
    throw std::invalid_argument(
        absl::StrCat("group mismatch: ", desc_.ToString(), " vs ", o.desc_.ToString()));
  }
}

GroupElem GroupElem::operator+(const GroupElem& o) const {
  CheckSameGroup(o);
  GroupElem e = *this;
  if (desc_.is_ring()) {
    internal::AddInPlace(e.ring_, o.ring_);
    e.ring_ = And(e.ring_, RingMask(desc_.ring_bits()));
  } else {
    for (int i = 0; i < desc_.arity(); ++i) e.coord_[i] += o.coord_[i];
  }
  return e;
}

GroupElem GroupElem::operator-(const GroupElem& o) const {
  CheckSameGroup(o);
  GroupElem e = *this;
  if (desc_.is_ring()) {
    internal::SubInPlace(e.ring_, o.ring_);
    e.ring_ = And(e.ring_, RingMask(desc_.ring_bits()));
  } else {
    for (int i = 0; i < desc_.arity(); ++i) e.coord_[i] -= o.coord_[i];
  }
  return e;
}

GroupElem GroupElem::operator-() const { return Zero(desc_) - *this; }

bool GroupElem::IsZero() const {
  if (desc_.is_ring()) return internal::IsZero(ring_);
  for (int i = 0; i < desc_.arity(); ++i) {
    if (!coord_[i].IsZero()) return false;
  }
  return true;
}

bool GroupElem::operator==(const GroupElem& o) const {
  if (desc_ != o.desc_) return false;
  if (desc_.is_ring()) return ring_ == o.ring_;
  for (int i = 0; i < desc_.arity(); ++i) {
    if (coord_[i] != o.coord_[i]) return false;
  }
  return true;
}

std::string GroupElem::ToString() const {
  if (desc_.is_trivial()) return "()";
  std::vector<uint8_t> bytes;
  AppendBytes(bytes);
  std::string out = "(";
  if (desc_.is_ring()) {
    absl::StrAppend(&out, "0x");
    for (size_t i = bytes.size(); i-- > 0;) {
      absl::StrAppend(&out, absl::Hex(bytes[i], absl::kZeroPad2));
    }
  } else {
    for (int i = 0; i < desc_.arity(); ++i) {
      if (i > 0) out += ", ";
      auto v = coord_[i].ToCenteredInt64();
      absl::StrAppend(&out, v ? absl::StrCat(*v) : "0x" + coord_[i].ToHex());
    }
  }
  return out + ")";
}

}  // namespace poplar
