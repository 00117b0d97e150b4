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

#include "polygamy/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "polygamy/errors.hpp"
#include "polygamy/rng.hpp"

namespace polygamy {

SystemLayout::SystemLayout(std::vector<std::size_t> dims,
                           std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) throw LayoutError("layout needs at least one subsystem");
  for (std::size_t d : dims_) {
    if (d < 2) {
      throw LayoutError("subsystem dimension " + std::to_string(d) +
                        " is below 2");
    }
  }
  total_ = total_dimension(dims_);
  if (labels_.empty()) {
    labels_.push_back("A");
    for (std::size_t i = 1; i < dims_.size(); ++i) {
      labels_.push_back("B" + std::to_string(i - 1));
    }
  } else if (labels_.size() != dims_.size()) {
    throw LayoutError("label count does not match subsystem count");
  }
}

SystemLayout SystemLayout::qubits(std::size_t n) {
  return SystemLayout(std::vector<std::size_t>(n, 2));
}

SystemLayout SystemLayout::restricted(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (std::size_t i : sorted) {
    if (i >= dims_.size()) throw LayoutError("subsystem index out of range");
    dims.push_back(dims_[i]);
    labels.push_back(labels_[i]);
  }
  return SystemLayout(std::move(dims), std::move(labels));
}

std::string SystemLayout::describe() const {
  std::string out;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(dims_[i]);
  }
  return out;
}

PureState::PureState(std::vector<Complex> amplitudes, SystemLayout layout,
                     double tolerance)
    : amps_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (amps_.size() != layout_.total_dim()) {
    throw ShapeError("state has " + std::to_string(amps_.size()) +
                     " amplitudes, layout " + layout_.describe() + " needs " +
                     std::to_string(layout_.total_dim()));
  }
  double norm2 = 0.0;
  for (const Complex& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("amplitude is not finite");
    }
    norm2 += std::norm(z);
  }
  const double norm = std::sqrt(norm2);
  if (std::abs(norm - 1.0) > tolerance) {
    throw ValidationError("state norm " + std::to_string(norm) +
                          " differs from 1");
  }
  for (Complex& z : amps_) z /= norm;
}

DensityMatrix PureState::density() const {
  return DensityMatrix(ComplexMatrix::outer(amps_), layout_);
}

DensityMatrix PureState::reduced(std::span<const std::size_t> keep) const {
  return DensityMatrix(partial_trace_pure(amps_, layout_.dims(), keep),
                       layout_.restricted(keep));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SystemLayout layout,
                             double tolerance)
    : layout_(std::move(layout)) {
  if (!matrix.is_square() || matrix.rows() != layout_.total_dim()) {
    throw ShapeError("density matrix of extent " +
                     std::to_string(matrix.rows()) + "x" +
                     std::to_string(matrix.cols()) + " does not match layout " +
                     layout_.describe());
  }
  const double defect = matrix.hermiticity_defect();
  if (defect > std::max(tolerance, kHermitianDriftTolerance)) {
    throw ValidationError("density matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  const double tr = matrix.trace().real();
  if (std::abs(tr - 1.0) > tolerance) {
    throw ValidationError("density matrix trace " + std::to_string(tr) +
                          " differs from 1");
  }
  const std::size_t n = matrix.rows();
  matrix_ = ComplexMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      matrix_(r, c) = 0.5 * (matrix(r, c) + std::conj(matrix(c, r))) / tr;
    }
  }
  const double min_eig = hermitian_eigenvalues(matrix_).front();
  if (min_eig < -tolerance) {
    throw PositivityError("density matrix has eigenvalue " +
                          std::to_string(min_eig));
  }
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
  const double f = matrix_.frobenius_norm();
  return f * f;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> keep) {
  return DensityMatrix(
      partial_trace(rho.matrix(), rho.layout().dims(), keep),
      rho.layout().restricted(keep));
}

namespace {

SystemLayout concatenated(const SystemLayout& a, const SystemLayout& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return SystemLayout(std::move(dims));
}

std::vector<Complex> gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<Complex> v(n);
  for (Complex& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return v;
}

}  // namespace

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor_product(a.matrix(), b.matrix()),
                       concatenated(a.layout(), b.layout()));
}

PureState basis_state(const SystemLayout& layout,
                      std::span<const std::size_t> digits) {
  if (digits.size() != layout.size()) {
    throw LayoutError("basis state needs one digit per subsystem");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= layout.dims()[i]) {
      throw LayoutError("basis digit exceeds subsystem dimension");
    }
    index = index * layout.dims()[i] + digits[i];
  }
  std::vector<Complex> amps(layout.total_dim());
  amps[index] = 1.0;
  return PureState(std::move(amps), layout);
}

PureState w_state(std::size_t n) {
  if (n < 2) throw DomainError("W state needs at least 2 qubits");
  const SystemLayout layout = SystemLayout::qubits(n);
  std::vector<Complex> amps(layout.total_dim());
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) amps[std::size_t{1} << i] = a;
  return PureState(std::move(amps), layout);
}

PureState bell_state() {
  const double a = 1.0 / std::sqrt(2.0);
  return PureState({a, 0.0, 0.0, a}, SystemLayout::qubits(2));
}

PureState product(const PureState& a, const PureState& b) {
  const SystemLayout layout = concatenated(a.layout(), b.layout());
  std::vector<Complex> amps;
  amps.reserve(layout.total_dim());
  for (const Complex& x : a.amplitudes()) {
    for (const Complex& y : b.amplitudes()) amps.push_back(x * y);
  }
  return PureState(std::move(amps), layout);
}

PureState haar_random_pure(const SystemLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> amps = gaussian_vector(layout.total_dim(), rng);
  double norm2 = 0.0;
  for (const Complex& z : amps) norm2 += std::norm(z);
  const double norm = std::sqrt(norm2);
  for (Complex& z : amps) z /= norm;
  return PureState(std::move(amps), layout);
}

DensityMatrix random_mixed(const SystemLayout& layout, std::size_t ancilla_dim,
                           std::uint64_t seed) {
  if (ancilla_dim < 1) throw DomainError("ancilla dimension must be >= 1");
  if (ancilla_dim == 1) return haar_random_pure(layout, seed).density();
  std::vector<std::size_t> dims = layout.dims();
  dims.push_back(ancilla_dim);
  const SystemLayout purified(std::move(dims));
  const PureState psi = haar_random_pure(purified, seed);
  std::vector<std::size_t> keep(layout.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return DensityMatrix(
      partial_trace_pure(psi.amplitudes(), purified.dims(), keep), layout);
}

ComplexMatrix haar_isometry(std::size_t m, std::size_t r, std::uint64_t seed) {
  if (r == 0 || m < r) throw DomainError("isometry needs m >= r >= 1");
  Rng rng(seed);
  // Columns of a complex Ginibre matrix, orthonormalized by Gram-Schmidt
  // (positive diagonal of R, hence Haar).
  std::vector<std::vector<Complex>> cols(r);
  for (auto& c : cols) c = gaussian_vector(m, rng);
  for (std::size_t k = 0; k < r; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += std::conj(cols[j][i]) * cols[k][i];
        for (std::size_t i = 0; i < m; ++i) cols[k][i] -= dot * cols[j][i];
      }
    }
    double n2 = 0.0;
    for (const Complex& z : cols[k]) n2 += std::norm(z);
    const double n = std::sqrt(n2);
    for (Complex& z : cols[k]) z /= n;
  }
  ComplexMatrix u(m, r);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < r; ++k) u(i, k) = cols[k][i];
  }
  return u;
}

}  // namespace polygamy
