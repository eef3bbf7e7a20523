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

#ifndef POPLAR_DP_H_
#define POPLAR_DP_H_

#include <cstdint>

#include "poplar/random.h"

namespace poplar::dp {

// Laplace(0, 1/epsilon) rounded half away from zero.
int64_t SampleNoise(double epsilon, RandomSource& rng);

// Advanced composition of q epsilon-DP queries:
// sqrt(2 q ln(1/delta')) epsilon + q epsilon (e^epsilon - 1). Zero when q = 0.
double Compose(double epsilon, uint64_t q, double delta_prime);

// 2 kappa / epsilon rounded up: one query's noise stays inside this bound
// except with probability e^-kappa.
int64_t NoiseBound(double epsilon, double kappa);

// Smallest C with 2 kappa / epsilon < slack * tau * C.
uint64_t MinClients(double tau, double epsilon, double slack, double kappa);

}  // namespace poplar::dp

#endif  // POPLAR_DP_H_
