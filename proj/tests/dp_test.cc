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

#include "poplar/dp.h"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <stdexcept>

#include "poplar/random.h"

namespace poplar::dp {
namespace {

using Dec = boost::multiprecision::cpp_dec_float_50;

// Advanced composition evaluated in 50-digit decimal arithmetic.
double ComposeOracle(double epsilon, uint64_t q, double delta_prime) {
  const Dec e(epsilon);
  const Dec qd(q);
  const Dec root = sqrt(Dec(2) * qd * log(Dec(1) / Dec(delta_prime)));
  return static_cast<double>(root * e + qd * e * (exp(e) - Dec(1)));
}

TEST(DpTest, ComposeMatchesHighPrecisionOracle) {
  DeterministicRandom rng(1);
  for (int i = 0; i < 200; ++i) {
    const double epsilon = std::exp(-1 - 9 * rng.UniformDouble());
    const uint64_t q = 1 + rng.Uniform(1'000'000);
    const double delta = std::exp(-1 - 40 * rng.UniformDouble());
    const double want = ComposeOracle(epsilon, q, delta);
    EXPECT_NEAR(Compose(epsilon, q, delta), want, 1e-12 * want);
  }
}

TEST(DpTest, ComposeOfSmallQueries) {
  EXPECT_NEAR(Compose(0.001, 25'600, std::ldexp(1.0, -40)), 1.22, 0.01);
  EXPECT_EQ(Compose(0.5, 0, 0.1), 0.0);
  EXPECT_THROW(Compose(0, 1, 0.1), std::invalid_argument);
  EXPECT_THROW(Compose(1, 1, 1.0), std::invalid_argument);
}

TEST(DpTest, ComposeIsMonotone) {
  double prev = 0;
  for (uint64_t q = 1; q < 5000; q += 97) {
    const double e = Compose(0.01, q, 1e-9);
    EXPECT_GT(e, prev);
    prev = e;
  }
  EXPECT_GT(Compose(0.02, 100, 1e-9), Compose(0.01, 100, 1e-9));
  EXPECT_GT(Compose(0.01, 100, 1e-12), Compose(0.01, 100, 1e-9));
}

TEST(DpTest, NoiseBound) {
  EXPECT_EQ(NoiseBound(0.001, 30), 60'000);
  EXPECT_EQ(NoiseBound(0.5, 5), 20);
  EXPECT_EQ(NoiseBound(0.3, 1), 7);
  EXPECT_EQ(NoiseBound(1, 0), 0);
  EXPECT_THROW(NoiseBound(0, 1), std::invalid_argument);
}

TEST(DpTest, MinClientsIsTheSmallestSufficientCount) {
  for (double tau : {0.001, 0.01, 0.05}) {
    for (double eps : {0.01, 0.1, 1.0}) {
      const uint64_t c = MinClients(tau, eps, 0.5, 10);
      const double bound = 2 * 10 / eps;
      EXPECT_LT(bound, 0.5 * tau * static_cast<double>(c));
      EXPECT_GE(bound, 0.5 * tau * static_cast<double>(c - 1));
    }
  }
}

// Rounded Laplace: P(|X| >= k) = e^{-eps (k - 1/2)} for k >= 1.
TEST(DpTest, NoiseMatchesRoundedLaplace) {
  DeterministicRandom rng(2);
  const double eps = 0.4;
  const int trials = 200'000;
  int64_t sum = 0;
  int at_least[6] = {};
  for (int i = 0; i < trials; ++i) {
    const int64_t x = SampleNoise(eps, rng);
    sum += x;
    for (int k = 1; k < 6; ++k) at_least[k] += std::llabs(x) >= k;
  }
  // Variance of Laplace(1/eps) is 2/eps^2 = 12.5; mean within 4 sigma.
  EXPECT_NEAR(static_cast<double>(sum) / trials, 0, 4 * std::sqrt(12.5 / trials) + 0.01);
  for (int k = 1; k < 6; ++k) {
    const double p = std::exp(-eps * (k - 0.5));
    const double sigma = std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(static_cast<double>(at_least[k]) / trials, p, 4 * sigma) << k;
  }
}

TEST(DpTest, NoiseStaysInsideTheBound) {
  DeterministicRandom rng(3);
  const double eps = 0.05;
  const double kappa = 5;
  const int64_t bound = NoiseBound(eps, kappa);
  const int trials = 100'000;
  int outside = 0;
  for (int i = 0; i < trials; ++i) outside += std::llabs(SampleNoise(eps, rng)) > bound;
  const double p = std::exp(-kappa);
  const double rate = static_cast<double>(outside) / trials;
  EXPECT_LE(rate, p + 3 * std::sqrt(p * (1 - p) / trials));
}

TEST(DpTest, NoiseMeanAndLargeEpsilon) {
  DeterministicRandom rng(5);
  const int trials = 1'000'000;
  int64_t sum = 0;
  for (int i = 0; i < trials; ++i) sum += SampleNoise(0.1, rng);
  EXPECT_LT(std::abs(static_cast<double>(sum) / trials), 3 * (std::sqrt(2.0) / 0.1) / 1e3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(SampleNoise(1e6, rng), 0);
}

TEST(DpTest, MinClientsSatisfiesTheSizingRule) {
  // slack 0.05 and tau 0.01 turn 2 kappa / eps < slack tau C into
  // 4000 kappa / C < eps.
  for (double kappa : {1.0, 10.0, 30.0}) {
    for (double eps : {0.01, 0.1, 1.0}) {
      const uint64_t c = MinClients(0.01, eps, 0.05, kappa);
      EXPECT_LT(4000 * kappa / static_cast<double>(c), eps * (1 + 1e-12));
      EXPECT_GE(4000 * kappa / static_cast<double>(c - 1), eps * (1 - 1e-12));
    }
  }
}

TEST(DpTest, SampleNoiseRejectsBadEpsilon) {
  DeterministicRandom rng(4);
  EXPECT_THROW(SampleNoise(0, rng), std::invalid_argument);
  EXPECT_THROW(SampleNoise(-1, rng), std::invalid_argument);
}

}  // namespace
}  // namespace poplar::dp
