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

#include "poplar/prg.h"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "poplar/internal/hash.h"

namespace poplar {
namespace {

using internal::Aes128;

thread_local OracleTranscript* current_transcript = nullptr;

inline void Note(OracleTranscript::Kind kind, const Seed& s, int calls) {
  if (current_transcript != nullptr) current_transcript->Record(kind, s, calls);
}

inline void StoreBlock(uint8_t* dst, uint64_t lo, uint64_t hi) {
  std::memcpy(dst, &lo, 8);
  std::memcpy(dst + 8, &hi, 8);
}

inline void LoadBlock(const uint8_t* src, uint64_t& lo, uint64_t& hi) {
  std::memcpy(&lo, src, 8);
  std::memcpy(&hi, src + 8, 8);
}

// Writes 16 * num_blocks octets: block j is MMO over s with tweak first + j.
void Mmo(const Seed& s, uint64_t first_tweak, size_t num_blocks, uint8_t* out) {
  uint8_t in[16 * 16];
  uint8_t* buf = num_blocks <= 16 ? in : new uint8_t[16 * num_blocks];
  for (size_t j = 0; j < num_blocks; ++j) {
    StoreBlock(buf + 16 * j, s.lo() ^ (first_tweak + j), s.hi());
  }
  Aes128::FixedKey().EncryptBlocks(buf, out, num_blocks);
  for (size_t j = 0; j < 16 * num_blocks; ++j) out[j] ^= buf[j];
  if (buf != in) delete[] buf;
}

std::vector<uint8_t> Stretch(const Seed& s, int calls) {
  std::vector<uint8_t> out(32 * calls);
  Mmo(s, 2, 2 * calls, out.data());
  return out;
}

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

internal::Uint256 LowBits(absl::Span<const uint8_t> bytes, int m) {
  return GroupElem::FromWideBytes(GroupDesc::Ring(m), bytes).ring_value();
}

}  // namespace

Seed Seed::FromBytes(absl::Span<const uint8_t> bytes16) {
  if (bytes16.size() != 16) throw std::invalid_argument("seed needs 16 octets");
  uint64_t lo, hi;
  LoadBlock(bytes16.data(), lo, hi);
  return Seed(lo, hi);
}

Seed Seed::Random(RandomSource& rng) {
  std::array<uint8_t, 16> b;
  rng.Fill(absl::MakeSpan(b));
  return FromBytes(b);
}

std::array<uint8_t, 16> Seed::ToBytes() const {
  std::array<uint8_t, 16> out;
  StoreBlock(out.data(), lo_, hi_);
  return out;
}

void Seed::AppendBytes(std::vector<uint8_t>& out) const {
  auto b = ToBytes();
  out.insert(out.end(), b.begin(), b.end());
}

PrgOutput Expand(const Seed& s) {
  Note(OracleTranscript::Kind::kExpand, s, 1);
  uint8_t out[32];
  Mmo(s, 0, 2, out);
  PrgOutput r;
  uint64_t lo, hi;
  LoadBlock(out, lo, hi);
  r.t_left = lo & 1;
  r.left = Seed((lo >> 1) | (hi << 63), hi >> 1);
  LoadBlock(out + 16, lo, hi);
  r.t_right = lo & 1;
  r.right = Seed((lo >> 1) | (hi << 63), hi >> 1);
  return r;
}

int ConvertCalls(const GroupDesc& group) { return CeilDiv(group.LogSize(), kLambda); }

int LevelCost(const GroupDesc& group) { return 1 + ConvertCalls(group); }

GroupElem Convert(const Seed& s, const GroupDesc& group) {
  if (group.is_trivial()) return GroupElem();
  if (group.is_ring() && group.ring_bits() <= kLambda) {
    return GroupElem::OfRing(group, ConvertPow2(s, group.ring_bits()));
  }
  const int calls = ConvertCalls(group);
  Note(OracleTranscript::Kind::kConvert, s, calls);
  return GroupElem::FromWideBytes(group, Stretch(s, calls));
}

SeededElem ConvertWithSeed(const Seed& s, const GroupDesc& group) {
  if (group.is_trivial()) return {s, GroupElem()};
  const int calls = ConvertCalls(group);
  Note(OracleTranscript::Kind::kConvert, s, calls);
  std::vector<uint8_t> out = Stretch(s, calls);
  SeededElem r;
  r.seed = Seed::FromBytes(absl::MakeConstSpan(out).subspan(0, 16));
  r.value = GroupElem::FromWideBytes(group, absl::MakeConstSpan(out).subspan(16));
  return r;
}

internal::Uint256 ConvertPow2(const Seed& s, int m) {
  if (m < 1 || m > 256) throw std::invalid_argument("ConvertPow2 width must be in [1, 256]");
  if (m <= kLambda) return LowBits(s.ToBytes(), m);
  const int calls = CeilDiv(m, kLambda);
  Note(OracleTranscript::Kind::kConvert, s, calls);
  return LowBits(Stretch(s, calls), m);
}

void OracleTranscript::Record(Kind kind, const Seed& seed, int calls) {
  queries_.push_back({kind, seed});
  index_.insert({static_cast<uint8_t>(kind), seed});
  calls_ += calls;
}

bool OracleTranscript::Contains(Kind kind, const Seed& seed) const {
  return index_.contains(std::make_pair(static_cast<uint8_t>(kind), seed));
}

void OracleTranscript::Clear() {
  queries_.clear();
  index_.clear();
  calls_ = 0;
}

ScopedOracleTranscript::ScopedOracleTranscript(OracleTranscript* transcript)
    : previous_(current_transcript) {
  current_transcript = transcript;
}

ScopedOracleTranscript::~ScopedOracleTranscript() { current_transcript = previous_; }

namespace {

std::array<uint8_t, 16> PrfKey(const Seed& seed, absl::Span<const uint8_t> tag) {
  auto s = seed.ToBytes();
  internal::Digest d = internal::Sha256Concat({s, tag});
  std::array<uint8_t, 16> key;
  std::memcpy(key.data(), d.data(), 16);
  return key;
}

absl::Span<const uint8_t> TagBytes(absl::string_view tag) {
  return absl::MakeConstSpan(reinterpret_cast<const uint8_t*>(tag.data()), tag.size());
}

}  // namespace

PrfStream::PrfStream(const Seed& seed, absl::Span<const uint8_t> tag)
    : aes_(PrfKey(seed, tag)) {}

PrfStream::PrfStream(const Seed& seed, absl::string_view tag)
    : PrfStream(seed, TagBytes(tag)) {}

void PrfStream::Fill(uint64_t index, absl::Span<uint8_t> out) const {
  uint8_t ctr[16 * 8];
  uint8_t ks[16 * 8];
  size_t pos = 0;
  uint64_t j = 0;
  while (pos < out.size()) {
    size_t blocks = std::min<size_t>(8, (out.size() - pos + 15) / 16);
    for (size_t k = 0; k < blocks; ++k, ++j) StoreBlock(ctr + 16 * k, index, j);
    aes_.EncryptBlocks(ctr, ks, blocks);
    size_t take = std::min(out.size() - pos, 16 * blocks);
    std::memcpy(out.data() + pos, ks, take);
    pos += take;
  }
}

std::vector<uint8_t> PrfStream::Block(uint64_t index, size_t length) const {
  std::vector<uint8_t> out(length);
  Fill(index, absl::MakeSpan(out));
  return out;
}

FieldElem PrfStream::Elem(uint64_t index, const FieldSpec& spec) const {
  uint8_t buf[40];
  const size_t len = spec.byte_width() + 8;
  Fill(index, absl::MakeSpan(buf, len));
  return FieldElem::FromWideBytes(absl::MakeConstSpan(buf, len), spec);
}

}  // namespace poplar
