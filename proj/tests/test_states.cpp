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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "polygamy/errors.hpp"
#include "polygamy/rng.hpp"
#include "polygamy/states.hpp"

using namespace polygamy;

namespace {

double norm(const PureState& psi) {
  double s = 0.0;
  for (const Complex& z : psi.amplitudes()) s += std::norm(z);
  return std::sqrt(s);
}

double reduced_purity(const PureState& psi, std::size_t subsystem) {
  const std::size_t keep[] = {subsystem};
  return psi.reduced(keep).purity();
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= (xs.size() - 1);
  return m;
}

}  // namespace

TEST_CASE("layouts") {
  const SystemLayout l({2, 3, 2});
  CHECK(l.total_dim() == 12);
  CHECK(l.labels() == std::vector<std::string>{"A", "B0", "B1"});
  CHECK(l.describe() == "2x3x2");
  CHECK_THROWS_AS(SystemLayout({2, 1}), LayoutError);
  CHECK_THROWS_AS(SystemLayout(std::vector<std::size_t>{}), LayoutError);
  CHECK_THROWS_AS(SystemLayout({4096, 2}), SizeError);
  const std::size_t keep[] = {2, 0};
  CHECK(l.restricted(keep).labels() == std::vector<std::string>{"A", "B1"});
}

TEST_CASE("w_state") {
  SUBCASE("three qubits, big-endian indices") {
    const PureState w = w_state(3);
    const double a = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 8; ++i) {
      const bool weight_one = i == 4 || i == 2 || i == 1;
      CHECK(std::abs(w[i] - Complex(weight_one ? a : 0.0)) < 1e-15);
    }
  }
  SUBCASE("two qubits") {
    const PureState w = w_state(2);
    const double a = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(w[1] - a) < 1e-15);
    CHECK(std::abs(w[2] - a) < 1e-15);
    CHECK(w[0] == Complex(0.0));
    CHECK(w[3] == Complex(0.0));
  }
  SUBCASE("normalized for every n") {
    for (std::size_t n = 2; n <= 10; ++n) CHECK(std::abs(norm(w_state(n)) - 1.0) < 1e-12);
  }
  SUBCASE("n < 2") { CHECK_THROWS_AS(w_state(1), DomainError); }
  SUBCASE("single-qubit marginals have spectrum {(n-1)/n, 1/n}") {
    for (std::size_t n = 2; n <= 8; ++n) {
      const PureState w = w_state(n);
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t keep[] = {q};
        const auto spectrum = hermitian_eigenvalues(w.reduced(keep).matrix());
        CHECK(std::abs(spectrum[0] - 1.0 / n) <= 1e-12);
        CHECK(std::abs(spectrum[1] - (n - 1.0) / n) <= 1e-12);
      }
    }
  }
}

TEST_CASE("pure state validation") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}, SystemLayout({2})), ValidationError);
  CHECK_THROWS_AS(PureState({1.0}, SystemLayout({2})), ShapeError);
  const PureState loose({1.0 + 1e-9, 0.0}, SystemLayout({2}), 1e-8);
  CHECK(std::abs(norm(loose) - 1.0) < 1e-15);
}

TEST_CASE("density matrix validation") {
  const SystemLayout q({2});
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(2), q), ValidationError);
  const double negative[] = {1.2, -0.2};
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal(negative), q), PositivityError);
  ComplexMatrix skew = ComplexMatrix::identity(2) * 0.5;
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(skew, q), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4) * 0.25, q), ShapeError);
}

TEST_CASE("haar_random_pure") {
  const SystemLayout layout({2, 3});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CHECK(std::abs(norm(haar_random_pure(layout, seed)) - 1.0) <= 1e-12);
  }
  const PureState a = haar_random_pure(layout, 1234);
  const PureState b = haar_random_pure(layout, 1234);
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(a.amplitudes() != haar_random_pure(layout, 1235).amplitudes());
}

TEST_CASE("mean two-qubit reduced purity is (dA+dB)/(dA dB+1) = 0.8") {
  const SystemLayout layout = SystemLayout::qubits(2);
  std::vector<double> purities;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    purities.push_back(reduced_purity(haar_random_pure(layout, seed), 0));
  }
  CHECK(std::abs(moments(purities).mean - 0.8) <= 0.01);
}

TEST_CASE("reduced purity statistics are covariant under permuting the layout") {
  // The dimension-2 marginal of a 2x3 state and of a 3x2 state must be
  // identically distributed.
  std::vector<double> first, second;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    first.push_back(reduced_purity(haar_random_pure(SystemLayout({2, 3}), seed), 0));
    second.push_back(
        reduced_purity(haar_random_pure(SystemLayout({3, 2}), seed + 500000), 1));
  }
  const Moments a = moments(first);
  const Moments b = moments(second);
  const double se = std::sqrt(a.variance / first.size() + b.variance / second.size());
  CHECK(std::abs(a.mean - b.mean) <= 3.0 * se);
  // Known mean for dA=2, dB=3: 5/7.
  CHECK(std::abs(a.mean - 5.0 / 7.0) <= 3.0 * std::sqrt(a.variance / first.size()) + 1e-3);
}

TEST_CASE("random_mixed") {
  const SystemLayout layout = SystemLayout::qubits(2);
  SUBCASE("no ancilla gives a pure state") {
    CHECK(std::abs(random_mixed(layout, 1, 3).purity() - 1.0) <= 1e-10);
  }
  SUBCASE("full-rank construction stays positive") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const DensityMatrix rho = random_mixed(layout, 4, seed);
      CHECK(hermitian_eigenvalues(rho.matrix()).front() >= -1e-10);
    }
  }
  SUBCASE("rank is bounded by the ancilla dimension") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto eig = hermitian_eigenvalues(random_mixed(layout, 2, seed).matrix());
      CHECK(std::abs(eig[0]) <= 1e-10);
      CHECK(std::abs(eig[1]) <= 1e-10);
      CHECK(eig[2] > 1e-6);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(random_mixed(layout, 0, 1), DomainError);
    CHECK_THROWS_AS(random_mixed(SystemLayout({64, 64}), 2, 1), SizeError);
  }
}

TEST_CASE("haar_isometry has orthonormal columns") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix u = haar_isometry(9, 3, seed);
    CHECK((u.adjoint() * u - ComplexMatrix::identity(3)).frobenius_norm() <= 1e-12);
  }
  CHECK_THROWS_AS(haar_isometry(2, 3, 0), DomainError);
}

TEST_CASE("rng streams") {
  const Rng master(42);
  Rng a = master.split(7);
  Rng b = Rng(master.derive_seed(7));
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  Rng c = master.split(8);
  CHECK(Rng(master.derive_seed(7))() != c());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
