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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poplar::dp {

int64_t SampleNoise(double epsilon, RandomSource& rng) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  // u uniform on (0, 1], sign from a separate bit.
  double u = 1.0 - rng.UniformDouble();
  const bool negative = rng.NextUint64() & 1;
  const double magnitude = -std::log(u) / epsilon;
  const double rounded = std::floor(magnitude + 0.5);
  if (rounded > 9.0e18) throw std::overflow_error("noise sample out of range");
  const auto v = static_cast<int64_t>(rounded);
  return negative ? -v : v;
}

double Compose(double epsilon, uint64_t q, double delta_prime) {
  if (!(epsilon > 0) || !(delta_prime > 0 && delta_prime < 1)) {
    throw std::invalid_argument("compose needs epsilon > 0 and 0 < delta' < 1");
  }
  if (q == 0) return 0.0;
  const double qd = static_cast<double>(q);
  return std::sqrt(2.0 * qd * std::log(1.0 / delta_prime)) * epsilon +
         qd * epsilon * std::expm1(epsilon);
}

int64_t NoiseBound(double epsilon, double kappa) {
  if (!(epsilon > 0) || kappa < 0) throw std::invalid_argument("bad noise-bound parameters");
  const double bound = 2.0 * kappa / epsilon;
  // Absorb floating-point error so exact integers stay exact.
  return static_cast<int64_t>(std::ceil(bound - 1e-9 * std::max(1.0, bound)));
}

uint64_t MinClients(double tau, double epsilon, double slack, double kappa) {
  if (!(tau > 0) || !(epsilon > 0) || !(slack > 0) || kappa < 0) {
    throw std::invalid_argument("bad min-clients parameters");
  }
  const double bound = 2.0 * kappa / epsilon;
  const double per_client = slack * tau;
  auto c = static_cast<uint64_t>(std::floor(bound / per_client)) + 1;
  // The division can land one off near integers; settle with the product.
  while (!(bound < per_client * static_cast<double>(c))) ++c;
  while (c > 1 && bound < per_client * static_cast<double>(c - 1)) --c;
  return c;
}

}  // namespace poplar::dp
