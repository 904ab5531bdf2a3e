// Copyright 2026 The funbandit Authors
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

// Command-line front end. Subcommands:
//   run       sweep a config's budgets and write a CSV/JSON report
//   bound     evaluate one theoretical error bound from flags
//   schedule  show an elimination plan and its pull accounting
//
// Exit codes: 0 success; 1 internal error; 2 invalid config or flags;
// 3 budget below the schedule normalizer; 4 vacuous bound (bias dominates
// or a sample-size precondition fails).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "funbandit/funbandit.hpp"

namespace {

using namespace funbandit;

int exit_code_for(const Error& err) {
  if (dynamic_cast<const InsufficientBudget*>(&err)) return 3;
  if (dynamic_cast<const BiasDominates*>(&err) ||
      dynamic_cast<const SampleConditionUnmet*>(&err)) {
    return 4;
  }
  if (dynamic_cast<const ConfigError*>(&err) ||
      dynamic_cast<const DomainError*>(&err) ||
      dynamic_cast<const UnsupportedFunctional*>(&err) ||
      dynamic_cast<const UnsupportedDistribution*>(&err)) {
    return 2;
  }
  return 1;
}

int exit_code_for(RowErrorKind kind) {
  switch (kind) {
    case RowErrorKind::kNone:
      return 0;
    case RowErrorKind::kConfig:
      return 2;
    case RowErrorKind::kBudget:
      return 3;
    case RowErrorKind::kVacuousBound:
    case RowErrorKind::kSampleCondition:
      return 4;
    case RowErrorKind::kInternal:
      return 1;
  }
  return 1;
}

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct RunOptions {
  std::string config_path;
  std::string out_path;  // empty = stdout
  std::string format = "csv";
  std::optional<std::uint64_t> seed_override;
};

int cmd_run(const RunOptions& opts) {
  ExperimentConfig config = load_config_file(opts.config_path);
  if (opts.seed_override) config.master_seed = *opts.seed_override;

  int workers = default_workers();
  if (const std::optional<int> env = workers_from_env()) workers = *env;

  const TimingCallback timing = [](std::int64_t T, double ms) {
    std::fprintf(stderr, "# T=%lld wall_ms=%.3f\n",
                 static_cast<long long>(T), ms);
  };
  const ExperimentReport report = sweep_budgets(config, workers, timing);

  for (const ReportRow& row : report.rows) {
    if (row.error_kind != RowErrorKind::kNone) {
      std::fprintf(stderr, "error: T=%lld: %s\n",
                   static_cast<long long>(row.T), row.error.c_str());
      return exit_code_for(row.error_kind);
    }
  }

  const std::string body =
      opts.format == "json" ? to_json(report) : to_csv(report);
  if (opts.out_path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) {
      std::fprintf(stderr, "error: cannot write \"%s\"\n",
                   opts.out_path.c_str());
      return 1;
    }
  }
  return 0;
}

struct BoundOptions {
  std::string functional;
  int K = 0;
  std::int64_t T = 0;
  double d = 0.0;
  std::string schedule = "sr";
  std::optional<double> lambda;
  std::optional<double> A;
  std::optional<double> B;
  std::optional<double> M;
  std::optional<double> pdf;
  double pdf_deriv = 0.0;
  std::optional<std::int64_t> N;
  std::optional<int> k;
  int dim = 1;
  bounds::BoundConstants constants;
};

double require_flag(const std::optional<double>& value, const char* flag,
                    const std::string& functional) {
  if (!value) {
    throw ConfigError(std::string(flag) + ": required for functional " +
                      functional);
  }
  return *value;
}

int cmd_bound(const BoundOptions& opts) {
  const Schedule schedule = opts.schedule == "sh"
                                ? schedule_sequential_halving(opts.K)
                                : schedule_successive_rejects(opts.K);
  const int H = schedule.H();
  bounds::validate(opts.constants);
  const std::int64_t N_default = H > 0 ? opts.T / H : 0;
  const std::int64_t N = opts.N.value_or(N_default);

  double raw = 0.0;
  if (opts.functional == "mean") {
    raw = bounds::generic_error_bound(H, opts.K, opts.T, opts.d,
                                      bounds::q_mean_function());
  } else if (opts.functional == "mean_variance") {
    raw = bounds::mv_error_bound(
        H, opts.K, opts.T, opts.d,
        require_flag(opts.lambda, "--lambda", opts.functional),
        require_flag(opts.A, "--A", opts.functional),
        require_flag(opts.B, "--B", opts.functional));
  } else if (opts.functional == "var") {
    const double lambda =
        require_flag(opts.lambda, "--lambda", opts.functional);
    const double pdf = require_flag(opts.pdf, "--pdf", opts.functional);
    const bounds::BiasVariance bv = bounds::var_bias_variance(
        lambda, N, pdf, opts.pdf_deriv, opts.constants);
    raw = bounds::var_error_bound(H, opts.K, opts.T, opts.d, bv.V_abs, bv.W);
  } else if (opts.functional == "avar") {
    raw = bounds::avar_error_bound(
        H, opts.K, opts.T, opts.d,
        require_flag(opts.lambda, "--lambda", opts.functional),
        require_flag(opts.M, "--M", opts.functional), opts.constants);
  } else if (opts.functional == "entropy") {
    const int k = opts.k.value_or(
        default_knn_k(static_cast<std::size_t>(std::max<std::int64_t>(N, 1))));
    raw = bounds::entropy_error_bound(H, opts.K, opts.T, opts.d, N,
                                      opts.constants, k, opts.dim);
  } else {
    throw ConfigError("--functional: unknown functional \"" +
                      opts.functional +
                      "\" (expected mean, mean_variance, var, avar, or "
                      "entropy)");
  }

  std::printf("raw: %s\n", format_value(raw).c_str());
  std::printf("clamped: %s\n",
              format_value(std::clamp(raw, 0.0, 1.0)).c_str());
  return 0;
}

struct ScheduleOptions {
  int K = 0;
  std::string policy = "sr";
  std::optional<std::int64_t> T;
};

int cmd_schedule(const ScheduleOptions& opts) {
  Schedule schedule = [&] {
    if (opts.policy == "sr") return schedule_successive_rejects(opts.K);
    if (opts.policy == "sh") return schedule_sequential_halving(opts.K);
    throw ConfigError("--policy: expected \"sr\" or \"sh\", got \"" +
                      opts.policy + "\"");
  }();

  std::printf("K: %d\n", schedule.K());
  std::printf("policy: %s\n", opts.policy.c_str());
  std::printf("L: %d\n", schedule.L());
  std::string xs;
  for (std::size_t l = 0; l < schedule.x().size(); ++l) {
    if (l > 0) xs += ',';
    xs += std::to_string(schedule.x()[l]);
  }
  std::printf("x: %s\n", xs.c_str());
  std::printf("H: %d\n", schedule.H());

  if (opts.T) {
    const std::int64_t per_arm = *opts.T / schedule.H();
    if (per_arm < 1) {
      throw InsufficientBudget(
          "--T: budget " + std::to_string(*opts.T) +
          " below schedule normalizer H = " + std::to_string(schedule.H()));
    }
    std::printf("pulls_per_arm_per_round: %lld\n",
                static_cast<long long>(per_arm));
    std::string round_pulls;
    int survivors = schedule.K();
    std::int64_t total = 0;
    for (std::size_t l = 0; l < schedule.x().size(); ++l) {
      const std::int64_t pulls = survivors * per_arm;
      total += pulls;
      if (l > 0) round_pulls += ',';
      round_pulls += std::to_string(pulls);
      survivors -= schedule.x()[l];
    }
    std::printf("round_pulls: %s\n", round_pulls.c_str());
    std::printf("total_pulls: %lld\n", static_cast<long long>(total));
    std::printf("leftover: %lld\n", static_cast<long long>(*opts.T - total));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional best-arm identification: batch elimination over "
               "pluggable reward functionals"};
  app.require_subcommand(1);

  RunOptions run_opts;
  CLI::App* run = app.add_subcommand(
      "run", "Sweep a config's budgets and write a report");
  run->add_option("--config", run_opts.config_path, "Experiment config JSON")
      ->required();
  run->add_option("--out", run_opts.out_path,
                  "Output path (default: stdout)");
  run->add_option("--format", run_opts.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  run->add_option("--seed", run_opts.seed_override,
                  "Override the config's master seed");

  BoundOptions bound_opts;
  CLI::App* bound = app.add_subcommand(
      "bound", "Evaluate a theoretical recommendation-error bound");
  bound->add_option("--functional", bound_opts.functional,
                    "mean, mean_variance, var, avar, or entropy")
      ->required();
  bound->add_option("--K", bound_opts.K, "Number of arms")->required();
  bound->add_option("--T", bound_opts.T, "Total budget")->required();
  bound->add_option("--d", bound_opts.d, "Smallest gap to the best arm")
      ->required();
  bound->add_option("--schedule", bound_opts.schedule,
                    "Elimination plan: sr or sh")
      ->check(CLI::IsMember({"sr", "sh"}))
      ->capture_default_str();
  bound->add_option("--lambda", bound_opts.lambda,
                    "Functional level/trade-off parameter");
  bound->add_option("--A", bound_opts.A, "Reward support lower bound");
  bound->add_option("--B", bound_opts.B, "Reward support upper bound");
  bound->add_option("--M", bound_opts.M, "Reward magnitude bound");
  bound->add_option("--pdf", bound_opts.pdf,
                    "Density at the true quantile (var)");
  bound->add_option("--pdf-deriv", bound_opts.pdf_deriv,
                    "Density derivative at the true quantile (var)");
  bound->add_option("--N", bound_opts.N,
                    "Per-round sample count (default: floor(T/H))");
  bound->add_option("--k", bound_opts.k, "Neighbor order (entropy)");
  bound->add_option("--dim", bound_opts.dim, "Sample dimension (entropy)")
      ->capture_default_str();
  bound->add_option("--C1", bound_opts.constants.C1, "Quantile bias remainder");
  bound->add_option("--C2", bound_opts.constants.C2,
                    "Quantile variance remainder");
  bound->add_option("--c1", bound_opts.constants.c1, "Entropy bias constant");
  bound->add_option("--c2", bound_opts.constants.c2, "Entropy bias constant");
  bound->add_option("--c4", bound_opts.constants.c4,
                    "Entropy variance constant");
  bound->add_option("--c5", bound_opts.constants.c5,
                    "Entropy variance constant");
  bound->add_option("--M-knn", bound_opts.constants.M_knn,
                    "Entropy estimator population parameter");
  bound->add_option("--D", bound_opts.constants.D, "Density sup bound");
  bound->add_option("--D-prime", bound_opts.constants.D_prime,
                    "Density derivative sup bound");

  ScheduleOptions schedule_opts;
  CLI::App* schedule = app.add_subcommand(
      "schedule", "Show an elimination plan and its pull accounting");
  schedule->add_option("--K", schedule_opts.K, "Number of arms")->required();
  schedule->add_option("--policy", schedule_opts.policy, "sr or sh")
      ->capture_default_str();
  schedule->add_option("--T", schedule_opts.T,
                       "Budget for pull accounting (optional)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (bound->parsed()) return cmd_bound(bound_opts);
    if (schedule->parsed()) return cmd_schedule(schedule_opts);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
