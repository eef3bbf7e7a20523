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

#include "poplar/net/wire.h"

#include <gtest/gtest.h>

#include <vector>

#include "poplar/random.h"
#include "testing/status_matchers.h"

namespace poplar::net {
namespace {

TEST(WireTest, FrameLayoutIsFrozen) {
  const std::vector<uint8_t> payload = {0xAA, 0xBB};
  EXPECT_EQ(EncodeFrame(MessageType::kWeights, 0x0102, payload),
            (std::vector<uint8_t>{5, 0, 0, 0, 6, 0x02, 0x01, 0xAA, 0xBB}));
}

TEST(WireTest, RoundTripsBackToBackFrames) {
  DeterministicRandom rng(1);
  std::vector<uint8_t> stream;
  std::vector<Frame> sent;
  for (int i = 0; i < 20; ++i) {
    Frame f;
    f.type = static_cast<MessageType>(1 + rng.Uniform(11));
    f.level = static_cast<uint16_t>(rng.Uniform(65536));
    f.payload.resize(rng.Uniform(100));
    rng.Fill(absl::MakeSpan(f.payload));
    std::vector<uint8_t> bytes = EncodeFrame(f.type, f.level, f.payload);
    stream.insert(stream.end(), bytes.begin(), bytes.end());
    sent.push_back(std::move(f));
  }
  absl::Span<const uint8_t> rest(stream);
  for (const Frame& want : sent) {
    size_t consumed = 0;
    ASSERT_OK_AND_ASSIGN(Frame got, DecodeFrame(rest, &consumed));
    EXPECT_EQ(got.type, want.type);
    EXPECT_EQ(got.level, want.level);
    EXPECT_EQ(got.payload, want.payload);
    EXPECT_EQ(consumed, kFrameHeaderBytes + want.payload.size());
    rest.remove_prefix(consumed);
  }
  EXPECT_TRUE(rest.empty());
}

TEST(WireTest, TruncatedFramesAreOutOfRange) {
  std::vector<uint8_t> bytes = EncodeFrame(MessageType::kNonce, 0, std::vector<uint8_t>(16, 7));
  for (size_t cut = 0; cut < bytes.size(); ++cut) {
    size_t consumed = 0;
    EXPECT_EQ(DecodeFrame(absl::MakeConstSpan(bytes.data(), cut), &consumed).status().code(),
              absl::StatusCode::kOutOfRange)
        << cut;
  }
}

TEST(WireTest, MalformedFramesAreRejected) {
  size_t consumed = 0;
  // Length too small to hold type and level.
  std::vector<uint8_t> short_len = {2, 0, 0, 0, 1, 0};
  EXPECT_EQ(DecodeFrame(short_len, &consumed).status().code(), absl::StatusCode::kInvalidArgument);
  // Unknown message type.
  std::vector<uint8_t> bad_type = {3, 0, 0, 0, 99, 0, 0};
  EXPECT_EQ(DecodeFrame(bad_type, &consumed).status().code(), absl::StatusCode::kInvalidArgument);
  // Over the length cap.
  std::vector<uint8_t> huge = {0xFF, 0xFF, 0xFF, 0xFF, 1, 0, 0};
  EXPECT_EQ(DecodeFrame(huge, &consumed).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(WireTest, ElementArrays) {
  DeterministicRandom rng(2);
  for (const FieldSpec* spec : {&FieldSpec::Inner(), &FieldSpec::Leaf(), &FieldSpec::Test()}) {
    std::vector<FieldElem> elems;
    for (int i = 0; i < 9; ++i) elems.push_back(FieldElem::Random(*spec, rng));
    std::vector<uint8_t> bytes;
    AppendElems(elems, bytes);
    EXPECT_EQ(bytes.size(), 9u * spec->byte_width());
    ASSERT_OK_AND_ASSIGN(std::vector<FieldElem> back, DecodeElems(bytes, 9, *spec));
    EXPECT_EQ(back, elems);
    EXPECT_FALSE(DecodeElems(bytes, 8, *spec).ok());
    EXPECT_FALSE(DecodeElems(bytes, 10, *spec).ok());
  }
  // Non-canonical: p itself.
  std::vector<uint8_t> p = {0x01, 0x00, 0x01};
  EXPECT_FALSE(DecodeElems(p, 1, FieldSpec::Test()).ok());
}

TEST(WireTest, MessageTypeNames) {
  EXPECT_EQ(MessageTypeName(MessageType::kRound1), "ROUND1");
  EXPECT_EQ(MessageTypeName(MessageType::kWeights), "WEIGHTS");
}

}  // namespace
}  // namespace poplar::net
