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
#include <random>

#include "oracles.hpp"
#include "polygamy/errors.hpp"
#include "polygamy/linalg.hpp"
#include "polygamy/rng.hpp"
#include "polygamy/states.hpp"
#include "support.hpp"

using namespace polygamy;

namespace {

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double re = normal(rng);
      m(i, j) = Complex(re, normal(rng));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("matrix construction rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(0, 2), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(NAN, 0.0)}), ValidationError);
}

TEST_CASE("tensor_product") {
  SUBCASE("identity") {
    CHECK(distance(tensor_product(ComplexMatrix::identity(2),
                                  ComplexMatrix::identity(2)),
                   ComplexMatrix::identity(4)) == 0.0);
  }
  SUBCASE("projectors") {
    const double p0[] = {1, 0};
    const double p1[] = {0, 1};
    const double expected[] = {0, 1, 0, 0};
    CHECK(distance(tensor_product(ComplexMatrix::diagonal(p0),
                                  ComplexMatrix::diagonal(p1)),
                   ComplexMatrix::diagonal(expected)) == 0.0);
  }
  SUBCASE("entry layout matches explicit index arithmetic") {
    const ComplexMatrix a = random_matrix(2, 2, 1);
    const ComplexMatrix b = random_matrix(2, 2, 2);
    const ComplexMatrix k = tensor_product(a, b);
    CHECK(k(2, 3) == a(1, 1) * b(0, 1));
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        CHECK(k(r, c) == oracle::kron_entry(a, b, r, c));
      }
    }
  }
  SUBCASE("rectangular factors") {
    const ComplexMatrix k = tensor_product(random_matrix(2, 3, 3), random_matrix(3, 1, 4));
    CHECK(k.rows() == 6);
    CHECK(k.cols() == 3);
  }
  SUBCASE("size cap") {
    CHECK_THROWS_AS(tensor_product(ComplexMatrix::identity(64),
                                   ComplexMatrix::identity(128)),
                    SizeError);
    CHECK_THROWS_AS(tensor_product(ComplexMatrix::identity(4),
                                   ComplexMatrix::identity(4), 8),
                    SizeError);
  }
}

TEST_CASE("hermitian_eig on textbook spectra") {
  const double d[] = {1.0 / 3.0, 2.0 / 3.0};
  const HermitianEigen e = hermitian_eig(ComplexMatrix::diagonal(d));
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(e.eigenvalues[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const ComplexMatrix x(2, 2, {0.0, 1.0, 1.0, 0.0});
  const HermitianEigen ex = hermitian_eig(x);
  CHECK(std::abs(ex.eigenvalues[0] + 1.0) < 1e-14);
  CHECK(std::abs(ex.eigenvalues[1] - 1.0) < 1e-14);

  // Pauli Y has complex off-diagonal entries.
  const ComplexMatrix y(2, 2, {0.0, Complex(0, -1), Complex(0, 1), 0.0});
  const HermitianEigen ey = hermitian_eig(y);
  CHECK(std::abs(ey.eigenvalues[0] + 1.0) < 1e-14);
  CHECK(distance(ey.reconstruct(), y) < 1e-14);
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  for (std::size_t n : {1, 3, 6, 16, 40}) {
    const ComplexMatrix m = testing::random_hermitian(n, 100 + n);
    const HermitianEigen e = hermitian_eig(m);
    CHECK(distance(e.reconstruct(), m) <= 1e-10);
    const ComplexMatrix gram = e.eigenvectors.adjoint() * e.eigenvectors;
    CHECK(distance(gram, ComplexMatrix::identity(n)) <= 1e-10);
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
}

TEST_CASE("hermitian_eig is deterministic") {
  const ComplexMatrix m = testing::random_hermitian(6, 7);
  const HermitianEigen a = hermitian_eig(m);
  const HermitianEigen b = hermitian_eig(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  for (std::size_t i = 0; i < 36; ++i) {
    CHECK(a.eigenvectors.entries()[i] == b.eigenvectors.entries()[i]);
  }
}

TEST_CASE("hermitian_eig error paths") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), ShapeError);

  ComplexMatrix drift = testing::random_hermitian(4, 9);
  drift(0, 1) += Complex(5e-9, 0.0);
  CHECK_NOTHROW(hermitian_eig(drift));
  drift(0, 1) += Complex(1e-6, 0.0);
  CHECK_THROWS_AS(hermitian_eig(drift), ValidationError);

  try {
    hermitian_eig(testing::random_hermitian(5, 3), 0);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("2x2 eigenvalues match characteristic polynomial roots") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const ComplexMatrix m = testing::random_hermitian(2, seed);
    const auto [lo, hi] = oracle::char_poly_roots(m);
    const HermitianEigen e = hermitian_eig(m);
    CHECK(std::abs(e.eigenvalues[0] - lo) <= 1e-10);
    CHECK(std::abs(e.eigenvalues[1] - hi) <= 1e-10);
    const auto fast = hermitian_eigenvalues(m);
    CHECK(std::abs(fast[0] - lo) <= 1e-10);
    CHECK(std::abs(fast[1] - hi) <= 1e-10);
  }
}

TEST_CASE("partial_trace fixtures") {
  SUBCASE("product state") {
    const DensityMatrix a = random_mixed(SystemLayout({2}), 2, 11);
    const DensityMatrix b = random_mixed(SystemLayout({3}), 3, 12);
    const std::size_t keep[] = {0};
    CHECK(distance(partial_trace(tensor_product(a, b), keep).matrix(),
                   a.matrix()) <= 1e-12);
  }
  SUBCASE("Bell state") {
    const std::size_t keep[] = {0};
    const DensityMatrix r = partial_trace(bell_state().density(), keep);
    CHECK(distance(r.matrix(), ComplexMatrix::identity(2) * 0.5) <= 1e-15);
  }
  SUBCASE("W state") {
    const std::size_t keep[] = {0};
    const DensityMatrix r = partial_trace(w_state(3).density(), keep);
    const double d[] = {2.0 / 3.0, 1.0 / 3.0};
    CHECK(distance(r.matrix(), ComplexMatrix::diagonal(d)) <= 1e-15);
    CHECK(r.layout().dims() == std::vector<std::size_t>{2});
  }
  SUBCASE("kept order follows the original order") {
    const PureState psi = haar_random_pure(SystemLayout({2, 3, 2}), 5);
    const std::size_t forward[] = {0, 1};
    const std::size_t backward[] = {1, 0};
    CHECK(distance(partial_trace(psi.density(), forward).matrix(),
                   partial_trace(psi.density(), backward).matrix()) == 0.0);
    CHECK(partial_trace(psi.density(), backward).layout().dims() ==
          std::vector<std::size_t>{2, 3});
  }
  SUBCASE("invalid index sets") {
    const DensityMatrix rho = w_state(3).density();
    const std::size_t out_of_range[] = {3};
    const std::size_t duplicated[] = {1, 1};
    CHECK_THROWS_AS(partial_trace(rho, out_of_range), LayoutError);
    CHECK_THROWS_AS(partial_trace(rho, duplicated), LayoutError);
    CHECK_THROWS_AS(partial_trace(rho, std::span<const std::size_t>{}), LayoutError);
  }
}

TEST_CASE("partial_trace properties on random states") {
  const SystemLayout layout({2, 3, 2});
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const DensityMatrix rho = random_mixed(layout, 1 + seed % 5, seed);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
      const ComplexMatrix r = partial_trace(rho.matrix(), layout.dims(), keep);
      CHECK(std::abs(r.trace() - 1.0) <= 1e-10);
      CHECK(hermitian_eigenvalues(r).front() >= -1e-10);
    }
    // Tracing C then B equals tracing {B, C} at once.
    const std::size_t keep_ab[] = {0, 1};
    const std::size_t keep_a[] = {0};
    const DensityMatrix ab = partial_trace(rho, keep_ab);
    CHECK(distance(partial_trace(ab, keep_a).matrix(),
                   partial_trace(rho, keep_a).matrix()) <= 1e-12);
  }
}

TEST_CASE("tensor then trace recovers the first factor scaled by the second trace") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = random_matrix(3, 3, seed);
    const ComplexMatrix b = random_matrix(2, 2, seed + 1000);
    const std::size_t dims[] = {3, 2};
    const std::size_t keep[] = {0};
    const ComplexMatrix reduced = partial_trace(tensor_product(a, b), dims, keep);
    CHECK(distance(reduced, a * b.trace()) <= 1e-12);
  }
}

TEST_CASE("partial_trace_pure agrees with the projector route") {
  const PureState psi = haar_random_pure(SystemLayout({3, 2, 2}), 77);
  for (const std::vector<std::size_t>& keep :
       {std::vector<std::size_t>{0}, {2}, {0, 2}, {1, 2}}) {
    CHECK(distance(partial_trace_pure(psi.amplitudes(), psi.layout().dims(), keep),
                   partial_trace(psi.density().matrix(), psi.layout().dims(), keep)) <=
          1e-14);
  }
}
