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
#include <string_view>
#include <vector>

#include "polygamy/execution.hpp"
#include "polygamy/states.hpp"

namespace polygamy {

/// Pure-state functional that a concave roof is built from.
enum class PureMeasure { entropy, tangle };

std::string_view to_string(PureMeasure m);
/// Throws DomainError for an unknown name.
PureMeasure parse_measure(std::string_view name);

/// Eigenvalues at or above this are counted towards the rank of a state.
inline constexpr double kRankThreshold = 1e-10;

/// -sum l log2 l with 0 log 0 = 0. Values in [-1e-10, 0] are clamped to zero;
/// anything below -1e-8 raises PositivityError.
double entropy_bits(std::span<const double> spectrum);

/// S(rho) in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of entanglement across side_a | complement, in bits. side_a must
/// be a nonempty strict subset of the subsystems (LayoutError otherwise).
double pure_entanglement(const PureState& psi, std::span<const std::size_t> side_a);

/// 2 (1 - Tr rho_A^2); side_a must reduce to a single qubit (DomainError
/// otherwise).
double tangle_pure(const PureState& psi, std::span<const std::size_t> side_a);

/// p E(v / sqrt(p)) with p = ||v||^2, for an unnormalized vector on a
/// d_a x d_b bipartite register. This is the contribution of one ensemble
/// member to the average the roof maximizes.
double weighted_member_value(std::span<const Complex> v, std::size_t d_a,
                             std::size_t d_b, PureMeasure measure);

struct DecompositionMember {
  double weight;
  PureState state;
};

/// Pure-state ensemble {p_i, |psi_i>} realizing a mixed state.
class Decomposition {
 public:
  Decomposition() = default;
  /// Throws ValidationError unless all weights are positive and sum to 1
  /// within 1e-10.
  explicit Decomposition(std::vector<DecompositionMember> members);

  const std::vector<DecompositionMember>& members() const noexcept {
    return members_;
  }
  std::size_t size() const noexcept { return members_.size(); }

  /// sum_i p_i |psi_i><psi_i|
  ComplexMatrix mixture() const;
  /// ||mixture() - rho||_F
  double reconstruction_residual(const DensityMatrix& rho) const;
  /// sum_i p_i E(psi_i) across the first-vs-rest cut.
  double average(PureMeasure measure) const;

 private:
  std::vector<DecompositionMember> members_;
};

/// Count of eigenvalues above kRankThreshold.
std::size_t numerical_rank(const DensityMatrix& rho);

/// Ensemble |psi~_j> = sum_i U_ji sqrt(l_i) |e_i> for an m x r isometry U,
/// where (l_i, e_i) are the r nonzero eigenpairs of rho. Members whose weight
/// falls below 1e-15 are dropped.
Decomposition decomposition_from_isometry(const DensityMatrix& rho,
                                          const ComplexMatrix& isometry);

/// Decomposition from a Haar-random m x rank isometry. Throws DomainError
/// when m < rank.
Decomposition random_decomposition(const DensityMatrix& rho, std::size_t m,
                                   std::uint64_t seed);

struct AssistOptions {
  int restarts = 30;
  int iterations = 500;
  /// 0 selects rank^2, capped at ensemble_cap.
  std::size_t ensemble_size = 0;
  std::size_t ensemble_cap = 16;
  int stall_window = 50;
  double stall_tolerance = 1e-9;
  double initial_step = 0.5;
  std::uint64_t seed = 42;
  Execution execution = Execution::parallel;
};

struct OptimizerDiagnostics {
  int restarts = 0;
  long long iterations = 0;
  bool converged = false;
  int best_restart = 0;
  std::size_t ensemble_size = 0;
  std::size_t rank = 0;
  /// Set when an entropy estimate exceeds log2 min(d_A, d_B) by over 1e-9.
  bool exceeds_ceiling = false;
};

/// Feasible lower bound on an assisted measure together with its witness.
struct EoaEstimate {
  double value = 0.0;
  Decomposition witness;
  OptimizerDiagnostics diagnostics;
};

/// Concave-roof maximization of sum_i p_i E(psi_i) over pure-state
/// decompositions of rho, across the cut (subsystem 0) | (rest).
///
/// Multi-start stochastic ascent over m x r isometries: restart 0 starts from
/// the eigen-ensemble, the others from Haar-random isometries. Each iteration
/// proposes a random plane rotation for every pair of ensemble members,
/// keeping it (or its reverse) when the average improves; the step size is
/// halved after a sweep without progress. Restart i draws from
/// Rng(seed).split(i), and the reduction keeps the largest value with ties
/// going to the lowest restart index, so serial and parallel execution agree
/// bit for bit.
///
/// Throws LayoutError if rho has fewer than 2 subsystems and DomainError for
/// the tangle on a non-qubit side A.
EoaEstimate assisted_measure(const DensityMatrix& rho, PureMeasure measure,
                             const AssistOptions& options = {});

}  // namespace polygamy
