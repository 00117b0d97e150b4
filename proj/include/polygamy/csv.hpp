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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polygamy/audit.hpp"

namespace polygamy {

/// 12 significant digits, '.' separator, independent of the C++ locale.
std::string format_number(double x);
/// Empty field for a missing value.
std::string format_number(const std::optional<double>& x);

/// Header: beta,lhs_pow,bound_thm1,bound_kim,bound_thm2,k_used
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Header: trial,seed,lhs,E0,...,E{N-1},beta,verdict,residual
/// One row per (trial, beta); residual is tightest bound minus lhs^beta.
void write_audit_csv(std::ostream& out, const std::vector<AuditRecord>& records);

/// Header: trial,seed,tau,tau_ab,tau_ac,verdict,residual
/// residual is tau_ab + tau_ac - tau.
void write_tangle_csv(std::ostream& out, const std::vector<TangleRecord>& records);

}  // namespace polygamy
