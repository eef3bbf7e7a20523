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

#include "poplar/sketch.h"

#include <gtest/gtest.h>

#include <functional>
#include <vector>

#include "poplar/random.h"
#include "testing/oracles.h"
#include "testing/status_matchers.h"

namespace poplar {
namespace {

const FieldSpec& F() { return FieldSpec::Test(); }
FieldElem E(uint64_t v) { return FieldElem::FromUint64(v, F()); }

// Reconstructed check value for vectors (v, v_star), fresh masks and r.
FieldElem CheckValue(const std::vector<FieldElem>& v, const std::vector<FieldElem>& v_star,
                     const SketchClientEncoding& enc, const Seed& shared, RandomSource& rng) {
  const uint8_t id[2] = {1, 2};
  SketchRandomness rand = DeriveSketchRandomness(shared, id, 0, v.size(), F());
  std::vector<FieldElem> share[2], share_star[2];
  for (size_t i = 0; i < v.size(); ++i) {
    FieldElem r = FieldElem::Random(F(), rng), s = FieldElem::Random(F(), rng);
    share[0].push_back(r);
    share[1].push_back(v[i] - r);
    share_star[0].push_back(s);
    share_star[1].push_back(v_star[i] - s);
  }
  SketchTriple sent[2];
  for (int b = 0; b < 2; ++b) {
    sent[b] = Round1(ComputeLocals(share[b], share_star[b], rand).value(),
                     DeriveMasks(enc.shares[b].mask_seed, 0, F()));
  }
  const SketchTriple sum = sent[0] + sent[1];
  return Round2Share(0, sum, enc.shares[0].a_share[0], enc.shares[0].b_share[0]) +
         Round2Share(1, sum, enc.shares[1].a_share[0], enc.shares[1].b_share[0]);
}

TEST(SketchTest, HonestUnitVectorsAlwaysAccept) {
  DeterministicRandom rng(1);
  const FieldSpec* fields[] = {&F()};
  for (int trial = 0; trial < 500; ++trial) {
    SketchClientEncoding enc = SketchClientEncode(fields, rng);
    const size_t m = 1 + rng.Uniform(16);
    const size_t i = rng.Uniform(m);
    std::vector<FieldElem> v(m, E(0)), vs(m, E(0));
    v[i] = E(1);
    vs[i] = enc.kappa[0];
    EXPECT_TRUE(CheckValue(v, vs, enc, Seed::Random(rng), rng).IsZero());
  }
}

TEST(SketchTest, ZeroVectorAccepts) {
  // A level where the client's path was pruned contributes all zeros.
  DeterministicRandom rng(2);
  const FieldSpec* fields[] = {&F()};
  SketchClientEncoding enc = SketchClientEncode(fields, rng);
  std::vector<FieldElem> zero(4, E(0));
  EXPECT_TRUE(CheckValue(zero, zero, enc, Seed::Random(rng), rng).IsZero());
}

TEST(SketchTest, InvalidVectorsRarelyAccept) {
  DeterministicRandom rng(3);
  const FieldSpec* fields[] = {&F()};
  const int trials = 3000;
  struct Case {
    const char* name;
    std::function<void(std::vector<FieldElem>&, std::vector<FieldElem>&, const FieldElem&)> make;
  };
  const std::vector<Case> cases = {
      {"two_hot", [](auto& v, auto& vs, const FieldElem& k) {
         v[0] = v[3] = E(1);
         vs[0] = vs[3] = k;
       }},
      {"double_weight", [](auto& v, auto& vs, const FieldElem& k) {
         v[2] = E(2);
         vs[2] = k + k;
       }},
      {"wrong_kappa", [](auto& v, auto& vs, const FieldElem& k) {
         v[1] = E(1);
         vs[1] = k + E(1);
       }},
      {"star_only", [](auto&, auto& vs, const FieldElem&) { vs[1] = E(5); }},
  };
  for (const Case& c : cases) {
    int accepted = 0;
    for (int t = 0; t < trials; ++t) {
      SketchClientEncoding enc = SketchClientEncode(fields, rng);
      std::vector<FieldElem> v(5, E(0)), vs(5, E(0));
      c.make(v, vs, enc.kappa[0]);
      accepted += CheckValue(v, vs, enc, Seed::Random(rng), rng).IsZero();
    }
    // Acceptance probability is at most 2/p; over this many trials any
    // acceptance at all would be far outside expectation.
    EXPECT_LE(accepted, 2) << c.name;
  }
}

TEST(SketchTest, OffsetWithZeroDeltaIsDeterministic) {
  DeterministicRandom rng(4);
  for (int t = 0; t < 200; ++t) {
    FieldElem ds = FieldElem::Random(F(), rng), dss = FieldElem::Random(F(), rng);
    EXPECT_EQ(SketchOffsetProbe(E(0), ds, dss, 6, rng.Uniform(6), rng), -ds - dss);
  }
}

TEST(SketchTest, OffsetWithNonzeroDeltaSpreadsOut) {
  DeterministicRandom rng(5);
  const int trials = 8000, buckets = 16;
  std::vector<int> hist(buckets, 0);
  for (int t = 0; t < trials; ++t) {
    FieldElem v = SketchOffsetProbe(E(7), E(3), E(11), 4, 1, rng);
    ++hist[v.low_word() * buckets / 65537];
  }
  double chi2 = 0;
  const double expect = static_cast<double>(trials) / buckets;
  for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
  // 15 degrees of freedom; 37.7 is the 0.999 quantile.
  EXPECT_LT(chi2, 37.7);
}

TEST(SketchTest, Round2MatchesPolynomialOracle) {
  DeterministicRandom rng(6);
  const testing::BigInt p = testing::TestModulus();
  for (int t = 0; t < 100; ++t) {
    SketchTriple s{FieldElem::Random(F(), rng), FieldElem::Random(F(), rng),
                   FieldElem::Random(F(), rng)};
    FieldElem a = FieldElem::Random(F(), rng), b = FieldElem::Random(F(), rng);
    auto big = [](const FieldElem& e) { return testing::ToBig(e.value()); };
    EXPECT_EQ(big(Round2Share(1, s, a, b)), testing::Mod(big(a) * big(s.z) + big(b), p));
    EXPECT_EQ(big(Round2Share(0, s, a, b)),
              testing::Mod(big(s.z) * big(s.z) - big(s.z_star) - big(s.z_star2) +
                               big(a) * big(s.z) + big(b),
                           p));
  }
}

TEST(SketchTest, RandomnessDependsOnClientAndLevel) {
  const Seed seed(1, 2);
  const uint8_t a[] = {1}, b[] = {2};
  auto r = [&](absl::Span<const uint8_t> id, int level) {
    return DeriveSketchRandomness(seed, id, level, 3, FieldSpec::Inner()).r;
  };
  EXPECT_EQ(r(a, 0), r(a, 0));
  EXPECT_NE(r(a, 0), r(b, 0));
  EXPECT_NE(r(a, 0), r(a, 1));
  SketchRandomness rand = DeriveSketchRandomness(seed, a, 0, 3, FieldSpec::Inner());
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(rand.r_squared[i], rand.r[i] * rand.r[i]);
}

TEST(SketchTest, ComputeLocalsRejectsMismatchedLengths) {
  SketchRandomness rand = DeriveSketchRandomness(Seed(), {}, 0, 3, F());
  std::vector<FieldElem> three(3, E(1)), two(2, E(1));
  EXPECT_FALSE(ComputeLocals(two, three, rand).ok());
  EXPECT_FALSE(ComputeLocals(three, two, rand).ok());
  EXPECT_TRUE(ComputeLocals(three, three, rand).ok());
}

TEST(SketchTest, CorrelatedSharesRoundTrip) {
  DeterministicRandom rng(7);
  const FieldSpec* fields[] = {&FieldSpec::Inner(), &FieldSpec::Inner(), &FieldSpec::Leaf()};
  SketchClientEncoding enc = SketchClientEncode(fields, rng);
  for (const ClientCorrelated& c : enc.shares) {
    std::vector<uint8_t> bytes;
    c.AppendBytes(bytes);
    EXPECT_EQ(bytes.size(), 16u + 2 * (8 + 8 + 32));
    size_t consumed = 0;
    ASSERT_OK_AND_ASSIGN(ClientCorrelated back, ClientCorrelated::Decode(bytes, fields, &consumed));
    EXPECT_EQ(consumed, bytes.size());
    EXPECT_EQ(back.mask_seed, c.mask_seed);
    EXPECT_EQ(back.a_share, c.a_share);
    EXPECT_EQ(back.b_share, c.b_share);
    bytes.pop_back();
    EXPECT_FALSE(ClientCorrelated::Decode(bytes, fields, &consumed).ok());
  }
}

TEST(SketchTest, SharesOfAAndBReconstruct) {
  DeterministicRandom rng(8);
  const FieldSpec* fields[] = {&F()};
  SketchClientEncoding enc = SketchClientEncode(fields, rng);
  MaskShares m0 = DeriveMasks(enc.shares[0].mask_seed, 0, F());
  MaskShares m1 = DeriveMasks(enc.shares[1].mask_seed, 0, F());
  const FieldElem a = m0.a + m1.a, b = m0.b + m1.b, c = m0.c + m1.c;
  const FieldElem& k = enc.kappa[0];
  EXPECT_EQ(enc.shares[0].a_share[0] + enc.shares[1].a_share[0], k - a - a);
  EXPECT_EQ(enc.shares[0].b_share[0] + enc.shares[1].b_share[0], a * a + b - a * k + c);
}

}  // namespace
}  // namespace poplar
