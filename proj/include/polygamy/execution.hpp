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

namespace polygamy {

/// Selects between the OpenMP kernel and the serial reference loop. Both
/// produce bit-identical results; the serial path is what tests compare to.
enum class Execution { serial, parallel };

/// Worker count OpenMP will use for parallel kernels (1 without OpenMP).
int worker_count();

/// Caps worker parallelism; n <= 0 leaves the runtime default in place.
void set_worker_count(int n);

}  // namespace polygamy
