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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "polygamy/states.hpp"

namespace polygamy {

/// Tolerance applied to norm, trace and Hermiticity of ingested states.
inline constexpr double kStateFileTolerance = 1e-8;

using AnyState = std::variant<PureState, DensityMatrix>;

/// Parses a state document:
///
///   {"dims": [2, 2, 2], "kind": "pure" | "density", "data": [[re, im], ...]}
///
/// "density" data is row-major. Malformed documents raise ValidationError;
/// states outside tolerance raise ValidationError or PositivityError.
AnyState parse_state(std::string_view json_text);

AnyState load_state(const std::filesystem::path& path);

std::string dump_state(const PureState& psi);
std::string dump_state(const DensityMatrix& rho);

DensityMatrix to_density(const AnyState& state);

}  // namespace polygamy
