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

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "poplar/random.h"
#include "testing/oracles.h"
#include "testing/status_matchers.h"

namespace poplar {
namespace {

using testing::BigInt;
using testing::FromBig;
using testing::ModulusOf;
using testing::ToBig;

class FieldTest : public ::testing::TestWithParam<FieldId> {
 protected:
  const FieldSpec& spec() const { return FieldSpec::Get(GetParam()); }
  BigInt p() const { return ModulusOf(spec()); }
  BigInt Big(const FieldElem& e) const { return ToBig(e.value()); }
};

TEST_P(FieldTest, ModulusMatchesIndependentConstantAndIsPrime) {
  EXPECT_EQ(ToBig(spec().modulus()), p());
  EXPECT_TRUE(testing::IsProbablePrime(p()));
  EXPECT_EQ(spec().bit_width(), static_cast<int>(msb(p() - 1)) + 1);
}

TEST_P(FieldTest, ArithmeticMatchesBigIntOracle) {
  DeterministicRandom rng(static_cast<uint64_t>(GetParam()) + 11);
  std::vector<FieldElem> edge = {FieldElem::FromUint64(0, spec()),
                                 FieldElem::FromUint64(1, spec()),
                                 FieldElem::FromUint256(FromBig(p() - 1), spec()),
                                 FieldElem::FromUint256(FromBig(p() - 2), spec()),
                                 FieldElem::FromUint256(FromBig((p() - 1) / 2), spec())};
  for (int i = 0; i < 2000; ++i) {
    FieldElem a = i < 25 ? edge[i % 5] : FieldElem::Random(spec(), rng);
    FieldElem b = i < 25 ? edge[i / 5] : FieldElem::Random(spec(), rng);
    const BigInt x = Big(a), y = Big(b);
    ASSERT_LT(x, p());
    EXPECT_EQ(Big(a + b), (x + y) % p());
    EXPECT_EQ(Big(a - b), testing::Mod(x - y, p()));
    EXPECT_EQ(Big(a * b), (x * y) % p());
    EXPECT_EQ(Big(-a), testing::Mod(-x, p()));
    if (!a.IsZero()) EXPECT_EQ(Big(a * a.Inverse()), 1);
  }
}

TEST_P(FieldTest, WideBytesReduceLikeBigInt) {
  DeterministicRandom rng(99);
  for (size_t len : {1u, 7u, 8u, 9u, 16u, 31u, 32u, 40u, 64u}) {
    std::vector<uint8_t> bytes(len);
    for (int trial = 0; trial < 50; ++trial) {
      rng.Fill(absl::MakeSpan(bytes));
      if (trial == 0) std::fill(bytes.begin(), bytes.end(), 0xFF);
      EXPECT_EQ(Big(FieldElem::FromWideBytes(bytes, spec())),
                testing::LittleEndianToBig(bytes) % p());
    }
  }
}

TEST_P(FieldTest, EncodingRoundTripsAndRejectsNonCanonical) {
  DeterministicRandom rng(5);
  for (int i = 0; i < 100; ++i) {
    FieldElem a = FieldElem::Random(spec(), rng);
    std::vector<uint8_t> bytes = a.ToBytes();
    ASSERT_EQ(bytes.size(), static_cast<size_t>(spec().byte_width()));
    ASSERT_OK_AND_ASSIGN(FieldElem back, FieldElem::FromBytes(bytes, spec()));
    EXPECT_EQ(back, a);
  }
  // p itself is not a canonical encoding.
  BigInt v = p();
  std::vector<uint8_t> bytes(spec().byte_width());
  for (auto& b : bytes) {
    b = static_cast<uint8_t>(v & 0xFF);
    v >>= 8;
  }
  EXPECT_FALSE(FieldElem::FromBytes(bytes, spec()).ok());
  bytes.pop_back();
  EXPECT_FALSE(FieldElem::FromBytes(bytes, spec()).ok());
}

TEST_P(FieldTest, CenteredLift) {
  EXPECT_EQ(FieldElem::FromInt64(-5, spec()).ToCenteredInt64(), -5);
  EXPECT_EQ(FieldElem::FromInt64(12345, spec()).ToCenteredInt64(), 12345);
  EXPECT_EQ(FieldElem::FromUint64(0, spec()).ToCenteredInt64(), 0);
  EXPECT_EQ(Big(FieldElem::FromInt64(INT64_MIN, spec())),
            testing::Mod(BigInt(INT64_MIN), p()));
}

TEST_P(FieldTest, PowMatchesFermat) {
  DeterministicRandom rng(8);
  FieldElem a = FieldElem::Random(spec(), rng);
  if (a.IsZero()) a = FieldElem::FromUint64(3, spec());
  EXPECT_EQ(Big(a.Pow(FromBig(p() - 1))), 1);
}

TEST_P(FieldTest, InnerProductMatchesOracle) {
  DeterministicRandom rng(21);
  std::vector<FieldElem> a, b;
  BigInt expected = 0;
  for (int i = 0; i < 33; ++i) {
    a.push_back(FieldElem::Random(spec(), rng));
    b.push_back(FieldElem::Random(spec(), rng));
    expected += Big(a.back()) * Big(b.back());
  }
  EXPECT_EQ(Big(InnerProduct(a, b, spec())), expected % p());
  b.pop_back();
  EXPECT_THROW(InnerProduct(a, b, spec()), std::invalid_argument);
}

INSTANTIATE_TEST_SUITE_P(AllFields, FieldTest,
                         ::testing::Values(FieldId::kInner, FieldId::kLeaf, FieldId::kTest),
                         [](const auto& info) {
                           return std::string(FieldSpec::Get(info.param).name());
                         });

TEST(FieldMixing, DifferentFieldsThrow) {
  FieldElem a = FieldElem::FromUint64(1, FieldSpec::Inner());
  FieldElem b = FieldElem::FromUint64(1, FieldSpec::Leaf());
  EXPECT_THROW(a + b, std::invalid_argument);
  EXPECT_THROW(FieldElem() + a, std::invalid_argument);
  EXPECT_THROW(FieldElem::FromUint64(0, FieldSpec::Test()).Inverse(), std::domain_error);
}

TEST(FieldWidths, Encodings) {
  EXPECT_EQ(FieldSpec::Inner().byte_width(), 8);
  EXPECT_EQ(FieldSpec::Leaf().byte_width(), 32);
  EXPECT_EQ(FieldSpec::Test().byte_width(), 3);
}

}  // namespace
}  // namespace poplar
