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

#include "polygamy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polygamy/errors.hpp"

namespace polygamy {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix extents must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix extents must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw ShapeError("expected " + std::to_string(rows * cols) +
                     " entries, got " + std::to_string(entries_.size()));
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("matrix entry is not finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      m(i, j) = v[i] * std::conj(v[j]);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw ShapeError("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw ShapeError("hermiticity of a non-square matrix");
  double s = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      s += std::norm((*this)(r, c) - std::conj((*this)(c, r)));
    }
  }
  return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("product of mismatched matrices");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw ShapeError("sum of mismatched matrices");
  }
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] += rhs.entries_[i];
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  return *this + rhs * Complex(-1.0);
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
  ComplexMatrix out = *this;
  for (Complex& z : out.entries_) z *= s;
  return out;
}

ComplexMatrix HermitianEigen::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += eigenvectors(r, k) * eigenvalues[k] * std::conj(eigenvectors(c, k));
      }
      out(r, c) = s;
    }
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dim) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw SizeError("tensor product of extent " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " exceeds the cap of " +
                    std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw ShapeError("eigendecomposition of a " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + " matrix");
  }
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianDriftTolerance) {
    throw ValidationError("matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  ComplexMatrix a(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    }
  }
  return a;
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& m, int max_sweeps,
                             double off_diagonal_tolerance) {
  ComplexMatrix a = symmetrized(m);
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold =
      off_diagonal_tolerance * std::max(1.0, a.frobenius_norm());

  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > threshold) {
    if (sweep++ >= max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge", off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        // Phase-rotate column q so that a(p,q) becomes real, then apply a
        // real Jacobi rotation. G = P R, G^dagger A G zeroes (p,q).
        const Complex phase = a(p, q) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) {
      out.eigenvectors(r, k) = v(r, order[k]);
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() == 2 && m.cols() == 2) {
    const ComplexMatrix a = symmetrized(m);
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double half_gap = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double r = std::hypot(half_gap, std::abs(a(0, 1)));
    return {mean - r, mean + r};
  }
  return hermitian_eig(m).eigenvalues;
}

std::size_t total_dimension(std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw LayoutError("subsystem dimension must be positive");
    if (total > kMaxTotalDim / d) {
      throw SizeError("total dimension exceeds the cap of " +
                      std::to_string(kMaxTotalDim));
    }
    total *= d;
  }
  return total;
}

namespace {

// Full-register offsets contributed by every multi-index over `subset`.
std::vector<std::size_t> subset_offsets(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> subset) {
  std::vector<std::size_t> stride(dims.size());
  std::size_t s = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    stride[i] = s;
    s *= dims[i];
  }
  std::vector<std::size_t> offsets{0};
  for (std::size_t idx : subset) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[idx]);
    for (std::size_t base : offsets) {
      for (std::size_t digit = 0; digit < dims[idx]; ++digit) {
        next.push_back(base + digit * stride[idx]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

struct Split {
  std::vector<std::size_t> kept_offsets;
  std::vector<std::size_t> traced_offsets;
};

Split split_register(std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
  if (keep.empty()) throw LayoutError("partial trace must keep a subsystem");
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw LayoutError("duplicate subsystem index in partial trace");
  }
  if (sorted.back() >= dims.size()) {
    throw LayoutError("subsystem index " + std::to_string(sorted.back()) +
                      " out of range for " + std::to_string(dims.size()) +
                      " subsystems");
  }
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!std::binary_search(sorted.begin(), sorted.end(), i)) {
      traced.push_back(i);
    }
  }
  return {subset_offsets(dims, sorted), subset_offsets(dims, traced)};
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total = total_dimension(dims);
  if (m.rows() != total || m.cols() != total) {
    throw ShapeError("operator does not match the register dimension");
  }
  const Split split = split_register(dims, keep);
  const std::size_t n = split.kept_offsets.size();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t t : split.traced_offsets) {
        s += m(split.kept_offsets[i] + t, split.kept_offsets[j] + t);
      }
      out(i, j) = s;
    }
  }
  return out;
}

ComplexMatrix partial_trace_pure(std::span<const Complex> amplitudes,
                                 std::span<const std::size_t> dims,
                                 std::span<const std::size_t> keep) {
  if (amplitudes.size() != total_dimension(dims)) {
    throw ShapeError("amplitude count does not match the register dimension");
  }
  const Split split = split_register(dims, keep);
  const std::size_t n = split.kept_offsets.size();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t t : split.traced_offsets) {
        s += amplitudes[split.kept_offsets[i] + t] *
             std::conj(amplitudes[split.kept_offsets[j] + t]);
      }
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  }
  return out;
}

}  // namespace polygamy
