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

#include "polygamy/measures.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <string>

#include "polygamy/errors.hpp"
#include "polygamy/rng.hpp"

namespace polygamy {

std::string_view to_string(PureMeasure m) {
  return m == PureMeasure::entropy ? "entropy" : "tangle";
}

PureMeasure parse_measure(std::string_view name) {
  if (name == "entropy") return PureMeasure::entropy;
  if (name == "tangle") return PureMeasure::tangle;
  throw DomainError("unknown measure '" + std::string(name) + "'");
}

double entropy_bits(std::span<const double> spectrum) {
  double s = 0.0;
  for (double l : spectrum) {
    if (l < -1e-8) {
      throw PositivityError("negative eigenvalue " + std::to_string(l));
    }
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_bits(hermitian_eigenvalues(rho.matrix()));
}

namespace {

void check_cut(const SystemLayout& layout, std::span<const std::size_t> side_a) {
  std::vector<std::size_t> sorted(side_a.begin(), side_a.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty() || sorted.size() >= layout.size() ||
      sorted.back() >= layout.size()) {
    throw LayoutError("side A must be a nonempty strict subset of " +
                      std::to_string(layout.size()) + " subsystems");
  }
}

// Gram matrix of the smaller factor of a d_a x d_b reshaped vector.
ComplexMatrix reduced_gram(std::span<const Complex> v, std::size_t d_a,
                           std::size_t d_b) {
  if (d_a <= d_b) {
    ComplexMatrix g(d_a, d_a);
    for (std::size_t i = 0; i < d_a; ++i) {
      for (std::size_t j = i; j < d_a; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < d_b; ++k) {
          s += v[i * d_b + k] * std::conj(v[j * d_b + k]);
        }
        g(i, j) = s;
        g(j, i) = std::conj(s);
      }
    }
    return g;
  }
  ComplexMatrix g(d_b, d_b);
  for (std::size_t i = 0; i < d_b; ++i) {
    for (std::size_t j = i; j < d_b; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < d_a; ++k) {
        s += std::conj(v[k * d_b + i]) * v[k * d_b + j];
      }
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  }
  return g;
}

}  // namespace

double pure_entanglement(const PureState& psi,
                         std::span<const std::size_t> side_a) {
  check_cut(psi.layout(), side_a);
  const ComplexMatrix reduced =
      partial_trace_pure(psi.amplitudes(), psi.layout().dims(), side_a);
  return entropy_bits(hermitian_eigenvalues(reduced));
}

double tangle_pure(const PureState& psi, std::span<const std::size_t> side_a) {
  check_cut(psi.layout(), side_a);
  const ComplexMatrix reduced =
      partial_trace_pure(psi.amplitudes(), psi.layout().dims(), side_a);
  if (reduced.rows() != 2) {
    throw DomainError("tangle needs a single-qubit side, got dimension " +
                      std::to_string(reduced.rows()));
  }
  const double purity = std::pow(reduced.frobenius_norm(), 2);
  return std::clamp(2.0 * (1.0 - purity), 0.0, 1.0);
}

double weighted_member_value(std::span<const Complex> v, std::size_t d_a,
                             std::size_t d_b, PureMeasure measure) {
  if (std::min(d_a, d_b) == 2) {
    // Closed-form 2x2 path; this is the optimizer's inner loop.
    Complex g01 = 0.0;
    double g00 = 0.0, g11 = 0.0;
    if (d_a == 2) {
      for (std::size_t k = 0; k < d_b; ++k) {
        g00 += std::norm(v[k]);
        g11 += std::norm(v[d_b + k]);
        g01 += v[k] * std::conj(v[d_b + k]);
      }
    } else {
      for (std::size_t k = 0; k < d_a; ++k) {
        g00 += std::norm(v[k * 2]);
        g11 += std::norm(v[k * 2 + 1]);
        g01 += std::conj(v[k * 2]) * v[k * 2 + 1];
      }
    }
    const double p = g00 + g11;
    if (p <= 0.0) return 0.0;
    if (measure == PureMeasure::tangle) {
      const double tr_sq = g00 * g00 + g11 * g11 + 2.0 * std::norm(g01);
      return std::max(0.0, 2.0 * (p - tr_sq / p));
    }
    const double half = 0.5 * (g00 - g11);
    const double r = std::sqrt(half * half + std::norm(g01));
    const double hi = 0.5 * p + r;
    const double lo = std::max(0.0, 0.5 * p - r);
    double s = p * std::log2(p) - hi * std::log2(hi);
    if (lo > 0.0) s -= lo * std::log2(lo);
    return std::max(0.0, s);
  }

  const ComplexMatrix g = reduced_gram(v, d_a, d_b);
  const double p = g.trace().real();
  if (p <= 0.0) return 0.0;
  if (measure == PureMeasure::tangle) {
    const double f = g.frobenius_norm();
    return std::max(0.0, 2.0 * (p - f * f / p));
  }
  double s = p * std::log2(p);
  for (double mu : hermitian_eigenvalues(g)) {
    if (mu > 0.0) s -= mu * std::log2(mu);
  }
  return std::max(0.0, s);
}

Decomposition::Decomposition(std::vector<DecompositionMember> members)
    : members_(std::move(members)) {
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight > 0.0)) {
      throw ValidationError("decomposition weights must be positive");
    }
    total += m.weight;
  }
  if (members_.empty() || std::abs(total - 1.0) > 1e-10) {
    throw ValidationError("decomposition weights sum to " +
                          std::to_string(total));
  }
}

ComplexMatrix Decomposition::mixture() const {
  const std::size_t n = members_.front().state.layout().total_dim();
  ComplexMatrix out(n, n);
  for (const auto& m : members_) {
    out = out + ComplexMatrix::outer(m.state.amplitudes()) * Complex(m.weight);
  }
  return out;
}

double Decomposition::reconstruction_residual(const DensityMatrix& rho) const {
  return (mixture() - rho.matrix()).frobenius_norm();
}

double Decomposition::average(PureMeasure measure) const {
  double s = 0.0;
  for (const auto& m : members_) {
    const std::size_t side[] = {0};
    s += m.weight * (measure == PureMeasure::entropy
                         ? pure_entanglement(m.state, side)
                         : tangle_pure(m.state, side));
  }
  return s;
}

namespace {

// sqrt(l_i) e_i for the nonzero eigenpairs, as flat vectors.
std::vector<std::vector<Complex>> scaled_eigenvectors(const DensityMatrix& rho) {
  const HermitianEigen eig = rho.eig();
  std::vector<std::vector<Complex>> out;
  const std::size_t n = rho.dim();
  // Descending, so the dominant eigenvector comes first.
  for (std::size_t k = n; k-- > 0;) {
    const double l = eig.eigenvalues[k];
    if (l <= kRankThreshold) continue;
    std::vector<Complex> v(n);
    const double s = std::sqrt(l);
    for (std::size_t i = 0; i < n; ++i) v[i] = s * eig.eigenvectors(i, k);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Complex>> ensemble_vectors(
    const std::vector<std::vector<Complex>>& basis,
    const ComplexMatrix& isometry) {
  const std::size_t n = basis.front().size();
  std::vector<std::vector<Complex>> out(isometry.rows(),
                                        std::vector<Complex>(n));
  for (std::size_t j = 0; j < isometry.rows(); ++j) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Complex u = isometry(j, i);
      for (std::size_t x = 0; x < n; ++x) out[j][x] += u * basis[i][x];
    }
  }
  return out;
}

Decomposition to_decomposition(const std::vector<std::vector<Complex>>& vectors,
                               const SystemLayout& layout) {
  std::vector<DecompositionMember> members;
  for (const auto& v : vectors) {
    double p = 0.0;
    for (const Complex& z : v) p += std::norm(z);
    if (p < 1e-15) continue;
    const double norm = std::sqrt(p);
    std::vector<Complex> amps(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) amps[i] = v[i] / norm;
    members.push_back({p, PureState(std::move(amps), layout)});
  }
  // Weights are norms of a unitary image of the eigen-ensemble, so they sum to
  // the retained trace; renormalize away the dropped tail.
  double total = 0.0;
  for (const auto& m : members) total += m.weight;
  for (auto& m : members) m.weight /= total;
  return Decomposition(std::move(members));
}

}  // namespace

std::size_t numerical_rank(const DensityMatrix& rho) {
  const auto eigenvalues = hermitian_eigenvalues(rho.matrix());
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(),
                    [](double l) { return l > kRankThreshold; }));
}

Decomposition decomposition_from_isometry(const DensityMatrix& rho,
                                          const ComplexMatrix& isometry) {
  const auto basis = scaled_eigenvectors(rho);
  if (isometry.cols() != basis.size() || isometry.rows() < basis.size()) {
    throw ShapeError("isometry must be m x rank with m >= rank");
  }
  return to_decomposition(ensemble_vectors(basis, isometry), rho.layout());
}

Decomposition random_decomposition(const DensityMatrix& rho, std::size_t m,
                                   std::uint64_t seed) {
  const std::size_t rank = numerical_rank(rho);
  if (m < rank) {
    throw DomainError("ensemble size " + std::to_string(m) +
                      " is below the rank " + std::to_string(rank));
  }
  return decomposition_from_isometry(rho, haar_isometry(m, rank, seed));
}

namespace {

struct RestartResult {
  double value = 0.0;
  std::vector<std::vector<Complex>> members;
  Decomposition witness;
  long long iterations = 0;
  bool converged = false;
};

struct ClimbSetup {
  std::vector<std::vector<Complex>> basis;
  std::size_t ensemble_size;
  std::size_t d_a;
  std::size_t d_b;
  PureMeasure measure;
};

RestartResult climb(const ClimbSetup& setup, const AssistOptions& opt,
                    int restart) {
  const std::size_t m = setup.ensemble_size;
  const std::size_t r = setup.basis.size();
  Rng rng = Rng(opt.seed).split(static_cast<std::uint64_t>(restart));

  ComplexMatrix start(m, r);
  if (restart == 0) {
    for (std::size_t i = 0; i < r; ++i) start(i, i) = 1.0;
  } else {
    start = haar_isometry(m, r, rng());
  }

  RestartResult res;
  res.members = ensemble_vectors(setup.basis, start);
  auto& members = res.members;
  std::vector<double> values(m);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    values[j] = weighted_member_value(members[j], setup.d_a, setup.d_b,
                                      setup.measure);
    total += values[j];
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  }
  if (pairs.empty()) {
    res.converged = true;
    res.value = total;
    return res;
  }

  std::normal_distribution<double> normal;
  const std::size_t n = setup.basis.front().size();
  std::vector<Complex> ta(n), tb(n);
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(opt.iterations) + 1);
  history.push_back(total);
  double step = opt.initial_step;

  for (int it = 0; it < opt.iterations; ++it) {
    std::size_t accepted = 0;
    for (const auto& [a, b] : pairs) {
      const double theta = step * normal(rng);
      const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      const double c = std::cos(theta);
      for (double s : {std::sin(theta), -std::sin(theta)}) {
        for (std::size_t x = 0; x < n; ++x) {
          ta[x] = c * members[a][x] - phase * s * members[b][x];
          tb[x] = std::conj(phase) * s * members[a][x] + c * members[b][x];
        }
        const double va =
            weighted_member_value(ta, setup.d_a, setup.d_b, setup.measure);
        const double vb =
            weighted_member_value(tb, setup.d_a, setup.d_b, setup.measure);
        if (va + vb > values[a] + values[b]) {
          total += (va + vb) - (values[a] + values[b]);
          values[a] = va;
          values[b] = vb;
          members[a].swap(ta);
          members[b].swap(tb);
          ++accepted;
          break;
        }
      }
    }
    ++res.iterations;
    history.push_back(total);

    if (accepted == 0) {
      step *= 0.5;
    } else if (2 * accepted >= pairs.size()) {
      step = std::min(step * 1.5, std::numbers::pi / 2);
    }
    const auto w = static_cast<std::size_t>(opt.stall_window);
    if (step < 1e-10 ||
        (history.size() > w &&
         history.back() - history[history.size() - 1 - w] < opt.stall_tolerance)) {
      res.converged = true;
      break;
    }
  }

  // Recompute from the final ensemble to shed accumulated update roundoff.
  res.value = 0.0;
  for (const auto& v : members) {
    res.value += weighted_member_value(v, setup.d_a, setup.d_b, setup.measure);
  }
  return res;
}

}  // namespace

EoaEstimate assisted_measure(const DensityMatrix& rho, PureMeasure measure,
                             const AssistOptions& options) {
  const SystemLayout& layout = rho.layout();
  if (layout.size() < 2) {
    throw LayoutError("assisted measure needs a bipartite layout");
  }
  if (options.restarts < 1) throw DomainError("restarts must be >= 1");
  if (options.iterations < 0) throw DomainError("iterations must be >= 0");

  ClimbSetup setup;
  setup.d_a = layout.dims().front();
  setup.d_b = layout.total_dim() / setup.d_a;
  setup.measure = measure;
  if (measure == PureMeasure::tangle && setup.d_a != 2) {
    throw DomainError("tangle of assistance needs a qubit on side A");
  }
  setup.basis = scaled_eigenvectors(rho);
  const std::size_t rank = setup.basis.size();
  if (options.ensemble_size != 0) {
    if (options.ensemble_size < rank) {
      throw DomainError("ensemble size " + std::to_string(options.ensemble_size) +
                        " is below the rank " + std::to_string(rank));
    }
    setup.ensemble_size = options.ensemble_size;
  } else {
    setup.ensemble_size =
        std::max(rank, std::min(rank * rank, options.ensemble_cap));
  }

  const int restarts = options.restarts;
  std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) \
    if (options.execution == Execution::parallel)
  for (int i = 0; i < restarts; ++i) {
    try {
      RestartResult r = climb(setup, options, i);
      // Rank restarts by the witness average itself so the reported value
      // and the selection criterion are the same number.
      r.witness = to_decomposition(r.members, layout);
      r.value = r.witness.average(measure);
      results[static_cast<std::size_t>(i)] = std::move(r);
    } catch (...) {
#pragma omp critical(polygamy_assist_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t best = 0;
  long long iterations = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    iterations += results[i].iterations;
    if (results[i].value > results[best].value) best = i;
  }

  EoaEstimate est;
  est.witness = results[best].witness;
  est.value = results[best].value;
  est.diagnostics.restarts = restarts;
  est.diagnostics.iterations = iterations;
  est.diagnostics.converged = results[best].converged;
  est.diagnostics.best_restart = static_cast<int>(best);
  est.diagnostics.ensemble_size = setup.ensemble_size;
  est.diagnostics.rank = rank;
  if (measure == PureMeasure::entropy) {
    est.diagnostics.exceeds_ceiling =
        est.value > std::log2(static_cast<double>(std::min(setup.d_a, setup.d_b))) + 1e-9;
  }
  return est;
}

}  // namespace polygamy
