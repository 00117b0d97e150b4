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
#include <span>
#include <string>
#include <vector>

#include "polygamy/linalg.hpp"

namespace polygamy {

/// Ordered subsystem dimensions of a register, e.g. A|B0 B1 ... B_{N-1}.
/// Every dimension is at least 2.
class SystemLayout {
 public:
  SystemLayout() = default;
  /// Labels default to A, B0, B1, ...
  explicit SystemLayout(std::vector<std::size_t> dims,
                        std::vector<std::string> labels = {});

  static SystemLayout qubits(std::size_t n);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t total_dim() const noexcept { return total_; }

  /// Layout of the kept subsystems, in original relative order.
  SystemLayout restricted(std::span<const std::size_t> keep) const;

  /// "2x2x3"
  std::string describe() const;

  bool operator==(const SystemLayout&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::size_t total_ = 0;
};

class DensityMatrix;

/// Unit-norm state vector on a layout.
class PureState {
 public:
  /// Throws ShapeError on a length mismatch and ValidationError when the norm
  /// differs from 1 by more than `tolerance`; the stored vector is
  /// renormalized.
  PureState(std::vector<Complex> amplitudes, SystemLayout layout,
            double tolerance = 1e-10);

  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
  const SystemLayout& layout() const noexcept { return layout_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  DensityMatrix density() const;
  /// Reduced state on `keep`.
  DensityMatrix reduced(std::span<const std::size_t> keep) const;

 private:
  std::vector<Complex> amps_;
  SystemLayout layout_;
};

/// Hermitian, unit-trace, positive semidefinite operator on a layout.
class DensityMatrix {
 public:
  /// Validates against `tolerance` (Hermiticity defect, trace deviation and
  /// most negative eigenvalue), then stores the symmetrized, trace-normalized
  /// matrix. Throws ValidationError or PositivityError.
  DensityMatrix(ComplexMatrix matrix, SystemLayout layout,
                double tolerance = 1e-10);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const SystemLayout& layout() const noexcept { return layout_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

  double purity() const;
  HermitianEigen eig() const { return hermitian_eig(matrix_); }

 private:
  ComplexMatrix matrix_;
  SystemLayout layout_;
};

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> keep);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Computational basis state |digits>.
PureState basis_state(const SystemLayout& layout,
                      std::span<const std::size_t> digits);

/// (|10...0> + |01...0> + ... + |0...01>)/sqrt(n) on n qubits.
PureState w_state(std::size_t n);

/// (|00> + |11>)/sqrt(2)
PureState bell_state();

/// a (x) b as a pure state on the concatenated layout.
PureState product(const PureState& a, const PureState& b);

/// Haar-uniform unit vector: normalized i.i.d. complex Gaussian amplitudes.
PureState haar_random_pure(const SystemLayout& layout, std::uint64_t seed);

/// Partial trace over a `ancilla_dim`-dimensional ancilla of a Haar-random
/// pure state on layout (x) ancilla. The result has rank <= ancilla_dim.
DensityMatrix random_mixed(const SystemLayout& layout, std::size_t ancilla_dim,
                           std::uint64_t seed);

/// Haar-distributed m x r matrix with orthonormal columns (m >= r).
ComplexMatrix haar_isometry(std::size_t m, std::size_t r, std::uint64_t seed);

}  // namespace polygamy
