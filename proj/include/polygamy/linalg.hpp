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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace polygamy {

using Complex = std::complex<double>;

/// Largest Hilbert-space dimension any constructor or product may produce.
inline constexpr std::size_t kMaxTotalDim = 4096;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix. Throws ShapeError for a zero extent.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes row-major entries; throws ShapeError on a count mismatch and
  /// ValidationError on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  Complex& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// ||M - M^dagger||_F
  double hermiticity_defect() const;

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix operator*(Complex s) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Spectral decomposition of a Hermitian matrix: columns of `eigenvectors`
/// are orthonormal and pair with the ascending `eigenvalues`.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  /// V diag(lambda) V^dagger
  ComplexMatrix reconstruct() const;
};

/// Kronecker product, first factor most significant. Throws SizeError when
/// either resulting extent exceeds `max_dim`.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dim = kMaxTotalDim);

/// Maximum distance from Hermitian that is silently symmetrized away.
inline constexpr double kHermitianDriftTolerance = 1e-8;

/// Cyclic complex Jacobi eigensolver. The input is replaced by (M + M^dagger)/2
/// when within kHermitianDriftTolerance of Hermitian; beyond that a
/// ValidationError is raised. Throws ShapeError for non-square input and
/// ConvergenceError (carrying the off-diagonal norm) after `max_sweeps`.
HermitianEigen hermitian_eig(const ComplexMatrix& m, int max_sweeps = 100,
                             double off_diagonal_tolerance = 1e-12);

/// Eigenvalues only; same contract as hermitian_eig.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Mixed-radix big-endian helpers: subsystem 0 is the most significant digit.
std::size_t total_dimension(std::span<const std::size_t> dims);

/// Reduced operator on the subsystems in `keep` (kept in their original
/// relative order) for an operator on a register with subsystem dims `dims`.
/// Throws LayoutError for an empty, duplicated or out-of-range index set.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Same reduction taken directly from state amplitudes, without forming the
/// full projector.
ComplexMatrix partial_trace_pure(std::span<const Complex> amplitudes,
                                 std::span<const std::size_t> dims,
                                 std::span<const std::size_t> keep);

}  // namespace polygamy
