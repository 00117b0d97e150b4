// Copyright 2026 The polygamy-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "polygamy/states.hpp"

namespace polygamy::testing {

/// Rank <= 2 two-qubit state together with the purification columns v0, v1
/// (rho = v0 v0^dagger + v1 v1^dagger), built from a Haar-random vector on
/// 2 x 2 x ancilla(2).
struct Rank2State {
  DensityMatrix rho;
  std::vector<Complex> v0;
  std::vector<Complex> v1;
};

inline Rank2State rank2_two_qubit(std::uint64_t seed) {
  const PureState psi = haar_random_pure(SystemLayout({2, 2, 2}), seed);
  std::vector<Complex> v0(4), v1(4);
  for (std::size_t x = 0; x < 4; ++x) {
    v0[x] = psi[2 * x];
    v1[x] = psi[2 * x + 1];
  }
  ComplexMatrix m(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      m(r, c) = v0[r] * std::conj(v0[c]) + v1[r] * std::conj(v1[c]);
    }
  }
  return {DensityMatrix(m, SystemLayout::qubits(2)), v0, v1};
}

/// Random Hermitian matrix with entries from the given seed.
ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed);

/// Random 2x2 unitary (Haar).
ComplexMatrix random_unitary2(std::uint64_t seed);

}  // namespace polygamy::testing
