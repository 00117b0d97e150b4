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

#include "polygamy/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <numeric>

#include <CLI11.hpp>
#include <json.hpp>

#include "polygamy/audit.hpp"
#include "polygamy/bounds.hpp"
#include "polygamy/csv.hpp"
#include "polygamy/errors.hpp"
#include "polygamy/execution.hpp"
#include "polygamy/measures.hpp"
#include "polygamy/state_io.hpp"

namespace polygamy::cli {

namespace {

using nlohmann::ordered_json;

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json report_json(const BoundReport& r) {
  ordered_json j;
  j["beta"] = r.beta;
  j["lhs"] = r.lhs;
  j["profile"] = r.profile.values;
  j["permutation"] = r.profile.permutation;
  j["source"] = r.profile.source == ProfileSource::analytic ? "analytic" : "estimated";
  j["k_used"] = optional_json(r.k_used);
  j["lhs_pow"] = r.lhs_pow;
  j["sum_pow"] = r.sum_pow;
  j["bound_kim"] = r.bound_kim;
  j["bound_thm1"] = r.bound_thm1;
  j["bound_thm2"] = optional_json(r.bound_thm2);
  j["cond_thm1"] = r.cond_thm1;
  j["cond_thm2"] = r.cond_thm2;
  j["gap_thm1"] = r.gap_thm1();
  j["gap_kim"] = r.gap_kim();
  j["margin"] = optional_json(r.margin);
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

ordered_json summary_json(const AuditSummary& s) {
  ordered_json j;
  j["trials"] = s.trials;
  j["verified"] = s.verified;
  j["inconclusive"] = s.inconclusive;
  j["not_applicable"] = s.not_applicable;
  j["violated"] = s.violated;
  j["escalations"] = s.escalations;
  j["max_chain_residual"] = optional_json(s.max_chain_residual);
  ordered_json per_beta = ordered_json::array();
  for (const BetaTally& t : s.per_beta) {
    per_beta.push_back({{"beta", t.beta},
                        {"verified", t.verified},
                        {"inconclusive", t.inconclusive},
                        {"not_applicable", t.not_applicable},
                        {"violated", t.violated}});
  }
  j["per_beta"] = per_beta;
  return j;
}

ordered_json estimate_json(const EoaEstimate& e, PureMeasure measure) {
  ordered_json j;
  j["measure"] = std::string(to_string(measure));
  j["value"] = e.value;
  ordered_json members = ordered_json::array();
  for (const auto& m : e.witness.members()) {
    ordered_json amps = ordered_json::array();
    for (const Complex& z : m.state.amplitudes()) amps.push_back({z.real(), z.imag()});
    members.push_back({{"weight", m.weight}, {"amplitudes", amps}});
  }
  j["witness"] = members;
  const OptimizerDiagnostics& d = e.diagnostics;
  j["diagnostics"] = {{"restarts", d.restarts},
                      {"iterations", d.iterations},
                      {"converged", d.converged},
                      {"best_restart", d.best_restart},
                      {"ensemble_size", d.ensemble_size},
                      {"rank", d.rank},
                      {"exceeds_ceiling", d.exceeds_ceiling}};
  return j;
}

AssistOptions optimizer_options(const RunConfig& c) {
  AssistOptions o;
  o.restarts = c.restarts;
  o.iterations = c.iterations;
  o.ensemble_size = c.ensemble_size;
  o.ensemble_cap = c.ensemble_cap;
  o.seed = c.seed;
  return o;
}

EvaluateOptions evaluate_options(const RunConfig& c) {
  EvaluateOptions o;
  o.k_override = c.k_override;
  o.sort_descending = c.sort_profile;
  o.analytic_tolerance = c.analytic_tolerance;
  o.estimated_tolerance = c.estimated_tolerance;
  return o;
}

EntanglementProfile profile_of(const RunConfig& c) {
  if (c.profile.empty()) throw ValidationError("--profile is required");
  return EntanglementProfile::make(
      c.profile, c.estimated ? ProfileSource::estimated : ProfileSource::analytic);
}

// Sum of the profile is the largest LHS the general polygamy inequality
// admits, so it is the default LHS when none is given.
double lhs_of(const RunConfig& c) {
  return c.lhs.value_or(std::accumulate(c.profile.begin(), c.profile.end(), 0.0));
}

void log(const RunConfig& c, std::ostream& err, const std::string& line) {
  if (!c.quiet) err << line << '\n';
}

void run_subcommand(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "verify-wstate") {
    out << report_json(wstate_case(c.beta)).dump(2) << '\n';
  } else if (c.subcommand == "bounds") {
    out << report_json(evaluate_bounds(lhs_of(c), profile_of(c), c.beta,
                                       evaluate_options(c)))
               .dump(2)
        << '\n';
  } else if (c.subcommand == "sweep-beta") {
    const auto grid = linear_grid(c.beta_start, c.beta_stop, c.beta_steps);
    std::vector<SweepRow> rows;
    if (c.source == "wstate") {
      rows = wstate_sweep(grid);
    } else if (c.source == "profile") {
      rows = beta_sweep(lhs_of(c), profile_of(c), grid, evaluate_options(c));
    } else {
      throw ValidationError("--source must be wstate or profile");
    }
    write_sweep_csv(out, rows);
  } else if (c.subcommand == "lemma-check") {
    const double worst = lemma_grid_audit(c.resolution);
    ordered_json j;
    j["resolution"] = c.resolution;
    j["min_residual"] = worst;
    j["ok"] = worst >= -1e-12;
    out << j.dump(2) << '\n';
  } else if (c.subcommand == "random-audit") {
    AuditConfig cfg;
    cfg.layout = SystemLayout(c.layout);
    cfg.trials = c.trials;
    cfg.betas = c.betas;
    cfg.optimizer = optimizer_options(c);
    cfg.master_seed = c.seed;
    cfg.evaluate = evaluate_options(c);
    const AuditResult res = random_audit(cfg);
    write_audit_csv(out, res.records);
    const std::string summary = summary_json(res.summary).dump(2);
    if (!c.summary_path.empty()) {
      std::ofstream(c.summary_path) << summary << '\n';
    } else {
      log(c, err, summary);
    }
  } else if (c.subcommand == "tangle-audit") {
    TangleAuditConfig cfg;
    cfg.trials = c.trials;
    cfg.master_seed = c.seed;
    cfg.optimizer = optimizer_options(c);
    const TangleAuditResult res = tangle_audit(cfg);
    write_tangle_csv(out, res.records);
    const std::string summary = summary_json(res.summary).dump(2);
    if (!c.summary_path.empty()) {
      std::ofstream(c.summary_path) << summary << '\n';
    } else {
      log(c, err, summary);
    }
  } else if (c.subcommand == "compute-eoa") {
    if (c.input_path.empty()) throw ValidationError("--input is required");
    DensityMatrix rho = to_density(load_state(c.input_path));
    if (!c.keep.empty()) rho = partial_trace(rho, c.keep);
    const PureMeasure measure = parse_measure(c.measure);
    out << estimate_json(assisted_measure(rho, measure, optimizer_options(c)), measure)
               .dump(2)
        << '\n';
  }
}

std::string one_line(std::string s) {
  for (char& ch : s) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return s;
}

void apply_thread_cap() {
  const char* env = std::getenv("POLYGAMY_LAB_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    throw ValidationError("POLYGAMY_LAB_THREADS must be a positive integer");
  }
  set_worker_count(static_cast<int>(n));
}

}  // namespace

void validate(const RunConfig& c) {
  auto in_unit = [](double b) { return b >= 0.0 && b <= 1.0; };
  if (!in_unit(c.beta)) throw ValidationError("--beta must lie in [0, 1]");
  if (!in_unit(c.beta_start) || !in_unit(c.beta_stop) || c.beta_start > c.beta_stop) {
    throw ValidationError("beta grid must lie within [0, 1]");
  }
  if (c.beta_steps < 1) throw ValidationError("--steps must be >= 1");
  for (double b : c.betas) {
    if (!in_unit(b)) throw ValidationError("--betas must lie in [0, 1]");
  }
  if (c.k_override && !(*c.k_override > 0.0 && *c.k_override <= 1.0)) {
    throw ValidationError("--k must lie in (0, 1]");
  }
  if (c.trials < 0) throw ValidationError("--trials must be >= 0");
  if (c.restarts < 1) throw ValidationError("--restarts must be >= 1");
  if (c.iterations < 0) throw ValidationError("--iterations must be >= 0");
  if (c.resolution < 2) throw ValidationError("--resolution must be >= 2");
  if (c.lhs && !(*c.lhs >= 0.0)) throw ValidationError("--lhs must be >= 0");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig c;
  double k = 0.0;
  double lhs = 0.0;
  bool no_sort = false;

  CLI::App app{"Entanglement-of-assistance and weighted polygamy bound toolkit",
               "polygamy_lab"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
    sub->add_option("--out", c.output_path, "Output file (default: stdout)");
    sub->add_flag("--quiet", c.quiet, "Suppress informational output");
  };
  auto optimizer = [&](CLI::App* sub) {
    sub->add_option("--restarts", c.restarts, "Optimizer restarts")->capture_default_str();
    sub->add_option("--iterations", c.iterations, "Iterations per restart")
        ->capture_default_str();
    sub->add_option("--ensemble", c.ensemble_size, "Ensemble size (0: rank^2)")
        ->capture_default_str();
    sub->add_option("--ensemble-cap", c.ensemble_cap, "Cap on the automatic ensemble size")
        ->capture_default_str();
  };
  auto profile_flags = [&](CLI::App* sub) {
    sub->add_option("--profile", c.profile, "Pairwise E_a values E0,E1,...")
        ->delimiter(',');
    sub->add_option("--lhs", lhs, "E_a(A|B0...B_{N-1}) (default: sum of profile)");
    sub->add_option("--k", k, "Decay ratio k in (0, 1] (default: smallest feasible)");
    sub->add_flag("--no-sort", no_sort, "Keep the profile order as given");
    sub->add_flag("--estimated", c.estimated, "Treat the profile as lower-bound estimates");
  };

  auto* verify = app.add_subcommand("verify-wstate", "Bounds on the three-qubit W state");
  common(verify);
  verify->add_option("--beta", c.beta)->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Evaluate all bounds for an explicit profile");
  common(bounds);
  profile_flags(bounds);
  bounds->add_option("--beta", c.beta)->capture_default_str();

  auto* sweep = app.add_subcommand("sweep-beta", "Bound curves over a beta grid (CSV)");
  common(sweep);
  profile_flags(sweep);
  sweep->add_option("--source", c.source, "wstate | profile")->capture_default_str();
  sweep->add_option("--start", c.beta_start)->capture_default_str();
  sweep->add_option("--stop", c.beta_stop)->capture_default_str();
  sweep->add_option("--steps", c.beta_steps)->capture_default_str();

  auto* lemma = app.add_subcommand("lemma-check", "Scalar inequality over an (x, k, beta) grid");
  common(lemma);
  lemma->add_option("--resolution", c.resolution)->capture_default_str();

  auto* audit = app.add_subcommand("random-audit", "Audit Haar-random pure states (CSV)");
  common(audit);
  optimizer(audit);
  audit->add_option("--layout", c.layout, "Subsystem dims A,B0,B1,...")->delimiter(',');
  audit->add_option("--trials", c.trials, "Number of random states")->capture_default_str();
  audit->add_option("--betas", c.betas, "Exponents to check, comma separated")->delimiter(',');
  audit->add_option("--k", k, "Decay ratio k in (0, 1]");
  audit->add_option("--summary", c.summary_path, "Write the JSON summary here");

  auto* tangle = app.add_subcommand("tangle-audit", "Tangle polygamy on random 3-qubit states");
  common(tangle);
  optimizer(tangle);
  tangle->add_option("--trials", c.trials, "Number of random states")->capture_default_str();
  tangle->add_option("--summary", c.summary_path, "Write the JSON summary here");

  auto* eoa = app.add_subcommand("compute-eoa", "Assisted measure of a state file");
  common(eoa);
  optimizer(eoa);
  eoa->add_option("--input", c.input_path, "State file (JSON)");
  eoa->add_option("--measure", c.measure, "entropy | tangle")->capture_default_str();
  eoa->add_option("--keep", c.keep, "Reduce to these subsystems first")->delimiter(',');

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kUsageError;
  }

  c.subcommand = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  if (sub->get_option_no_throw("--k") && sub->count("--k") > 0) c.k_override = k;
  if (sub->get_option_no_throw("--lhs") && sub->count("--lhs") > 0) c.lhs = lhs;
  c.sort_profile = !no_sort;

  try {
    validate(c);
    apply_thread_cap();
    if (c.output_path.empty()) {
      run_subcommand(c, out, err);
    } else {
      std::ofstream file(c.output_path, std::ios::binary);
      if (!file) throw ValidationError("cannot open " + c.output_path);
      run_subcommand(c, file, err);
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.kind() << ": " << one_line(e.what()) << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << one_line(e.what()) << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace polygamy::cli
