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

#include "polygamy/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace polygamy {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "beta,lhs_pow,bound_thm1,bound_kim,bound_thm2,k_used\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.beta) << ',' << format_number(r.lhs_pow) << ','
        << format_number(r.bound_thm1) << ',' << format_number(r.bound_kim)
        << ',' << format_number(r.bound_thm2) << ',' << format_number(r.k_used)
        << '\n';
  }
}

void write_audit_csv(std::ostream& out, const std::vector<AuditRecord>& records) {
  std::size_t n = records.empty() ? 0 : records.front().profile.values.size();
  out << "trial,seed,lhs";
  for (std::size_t j = 0; j < n; ++j) out << ",E" << j;
  out << ",beta,verdict,residual\n";
  for (const AuditRecord& rec : records) {
    for (const BoundReport& r : rec.reports) {
      out << rec.trial << ',' << rec.seed << ',' << format_number(rec.lhs);
      for (double e : rec.profile.values) out << ',' << format_number(e);
      out << ',' << format_number(r.beta) << ',' << to_string(r.verdict) << ','
          << format_number(r.margin) << '\n';
    }
  }
}

void write_tangle_csv(std::ostream& out, const std::vector<TangleRecord>& records) {
  out << "trial,seed,tau,tau_ab,tau_ac,verdict,residual\n";
  for (const TangleRecord& r : records) {
    out << r.trial << ',' << r.seed << ',' << format_number(r.tangle) << ','
        << format_number(r.tangle_ab) << ',' << format_number(r.tangle_ac)
        << ',' << to_string(r.verdict) << ','
        << format_number(r.tangle_ab + r.tangle_ac - r.tangle) << '\n';
  }
}

}  // namespace polygamy
