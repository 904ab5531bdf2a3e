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

#ifndef FUNBANDIT_HARNESS_HPP
#define FUNBANDIT_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "funbandit/bounds.hpp"
#include "funbandit/distributions.hpp"
#include "funbandit/elimination.hpp"
#include "funbandit/errors.hpp"
#include "funbandit/rng.hpp"

namespace funbandit {

inline constexpr const char kVersion[] = "0.1.0";

enum class SchedulePolicy { kSuccessiveRejects, kSequentialHalving, kCustom };

/// One Monte Carlo experiment: an instance, an elimination plan, budgets
/// to sweep, and the trial count per budget. All randomness descends from
/// master_seed; nothing is ever seeded from the clock.
struct ExperimentConfig {
  BanditInstance instance;
  SchedulePolicy policy = SchedulePolicy::kSuccessiveRejects;
  std::vector<int> custom_x;  // kCustom only
  std::vector<std::int64_t> budgets;
  int trials = 1;
  std::uint64_t master_seed = 0;
  bounds::BoundConstants constants;
  std::string config_echo;  // canonical form of the source document
};

inline Schedule resolve_schedule(const ExperimentConfig& config) {
  const int K = static_cast<int>(config.instance.size());
  switch (config.policy) {
    case SchedulePolicy::kSuccessiveRejects:
      return schedule_successive_rejects(K);
    case SchedulePolicy::kSequentialHalving:
      return schedule_sequential_halving(K);
    case SchedulePolicy::kCustom:
      return Schedule(K, config.custom_x);
  }
  throw InternalError("resolve_schedule: unhandled policy");
}

/// Why a report row failed; drives the process exit code.
enum class RowErrorKind {
  kNone,
  kConfig,           // invalid parameters or unsupported combination
  kBudget,           // T below the schedule normalizer H
  kVacuousBound,     // estimator bias reaches half the gap
  kSampleCondition,  // bound precondition on per-round samples unmet
  kInternal,
};

struct ReportRow {
  std::int64_t T = 0;
  int trials = 0;
  double empirical_error = 0.0;
  double mean_regret = 0.0;
  double regret_stderr = 0.0;
  double bound_error = 0.0;   // raw, may exceed 1
  double bound_regret = 0.0;  // raw
  // Reserved schema slot: always 0 so reports are byte-stable. Measured
  // durations are surfaced through the timing callback instead.
  double wall_time_ms = 0.0;
  RowErrorKind error_kind = RowErrorKind::kNone;
  std::string error;  // empty when the row succeeded
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::uint64_t master_seed = 0;
  std::string version;
  std::string config_echo;
};

namespace detail {

/// Round to 12 significant digits (through the decimal form used by the
/// CSV writer) so CSV and JSON carry bit-identical values.
inline double round_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline RowErrorKind classify_error(const Error& err) {
  if (dynamic_cast<const InsufficientBudget*>(&err)) {
    return RowErrorKind::kBudget;
  }
  if (dynamic_cast<const BiasDominates*>(&err)) {
    return RowErrorKind::kVacuousBound;
  }
  if (dynamic_cast<const SampleConditionUnmet*>(&err)) {
    return RowErrorKind::kSampleCondition;
  }
  if (dynamic_cast<const ConfigError*>(&err) ||
      dynamic_cast<const DomainError*>(&err) ||
      dynamic_cast<const UnsupportedFunctional*>(&err) ||
      dynamic_cast<const UnsupportedDistribution*>(&err)) {
    return RowErrorKind::kConfig;
  }
  return RowErrorKind::kInternal;
}

}  // namespace detail

/// Theoretical recommendation-error bound matched to the functional, at
/// budget T under the given schedule. Raw value, not clamped.
inline double attach_error_bound(const BanditInstance& instance,
                                 const Schedule& schedule, std::int64_t T,
                                 const bounds::BoundConstants& consts) {
  const int H = schedule.H();
  const int K = schedule.K();
  const double d = instance.gap_min();
  if (!(d > 0.0)) {
    throw DomainError(
        "bound: gap d is zero; the best arm must be unique for bound "
        "computations");
  }
  const std::int64_t N = T / H;
  struct Visitor {
    const BanditInstance& instance;
    const Schedule& schedule;
    std::int64_t T;
    const bounds::BoundConstants& consts;
    int H;
    int K;
    double d;
    std::int64_t N;

    double operator()(const Mean&) const {
      return bounds::generic_error_bound(H, K, T, d,
                                         bounds::q_mean_function());
    }
    double operator()(const MeanVariance& f) const {
      double A = instance.arms().front().support_lo();
      double B = instance.arms().front().support_hi();
      for (const DistributionSpec& arm : instance.arms()) {
        A = std::min(A, arm.support_lo());
        B = std::max(B, arm.support_hi());
      }
      return bounds::mv_error_bound(H, K, T, d, f.lambda, A, B);
    }
    double operator()(const ValueAtRisk& f) const {
      // Worst estimator envelope over the suboptimal arms at the
      // per-round sample size.
      double V_abs = 0.0;
      double W = 0.0;
      for (std::size_t i = 0; i < instance.size(); ++i) {
        if (i == instance.best_index()) continue;
        const DistributionSpec& arm = instance.arms()[i];
        const double q = quantile(arm, f.lambda);
        const DensityInfo info = density_info(arm, q);
        const bounds::BiasVariance bv = bounds::var_bias_variance(
            f.lambda, N, info.pdf, info.pdf_derivative, consts);
        V_abs = std::max(V_abs, bv.V_abs);
        W = std::max(W, bv.W);
      }
      return bounds::var_error_bound(H, K, T, d, V_abs, W);
    }
    double operator()(const AverageValueAtRisk& f) const {
      double M = 0.0;
      for (const DistributionSpec& arm : instance.arms()) {
        M = std::max(M, std::max(std::abs(arm.support_lo()),
                                 std::abs(arm.support_hi())));
      }
      return bounds::avar_error_bound(H, K, T, d, f.lambda, M, consts);
    }
    double operator()(const ShannonEntropy& f) const {
      const int k = f.mode == EntropyEstimator::kNearestNeighbor
                        ? (f.k ? *f.k : default_knn_k(
                                            static_cast<std::size_t>(N)))
                        : 1;
      return bounds::entropy_error_bound(H, K, T, d, N, consts, k, 1);
    }
  };
  return std::visit(
      Visitor{instance, schedule, T, consts, H, K, d, N},
      instance.functional());
}

/// Worker-count override from the FUNBANDIT_WORKERS environment variable;
/// unset means "use the hardware default".
inline std::optional<int> workers_from_env() {
  const char* raw = std::getenv("FUNBANDIT_WORKERS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1) {
    throw ConfigError("FUNBANDIT_WORKERS must be a positive integer, got \"" +
                      std::string(raw) + "\"");
  }
  return static_cast<int>(value);
}

inline int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Measured row duration, reported out of band so rows stay deterministic.
using TimingCallback = std::function<void(std::int64_t T, double wall_ms)>;

/// Runs `trials` independent eliminations at budget T, trial i seeded by
/// mixing (master_seed, T, i). Trials spread across `workers` threads;
/// results are folded in ascending trial order, so the row is identical
/// for any worker count.
inline ReportRow run_trials(const ExperimentConfig& config,
                            const Schedule& schedule, std::int64_t T,
                            int workers) {
  ReportRow row;
  row.T = T;
  row.trials = config.trials;
  if (config.trials < 1) {
    row.error_kind = RowErrorKind::kConfig;
    row.error = "trials must be >= 1, got " + std::to_string(config.trials);
    return row;
  }

  const std::size_t n_trials = static_cast<std::size_t>(config.trials);
  std::vector<std::size_t> recommended(n_trials, 0);
  std::vector<std::string> trial_errors(n_trials);
  std::vector<RowErrorKind> trial_kinds(n_trials, RowErrorKind::kNone);

  const auto run_one = [&](std::size_t trial) {
    const Rng rng(trial_seed(config.master_seed, static_cast<std::uint64_t>(T),
                             static_cast<std::uint64_t>(trial)));
    try {
      const RunResult result = run_batch_elimination(
          config.instance.arms(), schedule, static_cast<std::uint64_t>(T),
          config.instance.functional(), rng);
      recommended[trial] = result.recommended;
    } catch (const Error& err) {
      trial_kinds[trial] = detail::classify_error(err);
      trial_errors[trial] =
          "trial " + std::to_string(trial) + ": " + err.what();
    } catch (const std::exception& err) {
      trial_kinds[trial] = RowErrorKind::kInternal;
      trial_errors[trial] =
          "trial " + std::to_string(trial) + ": " + err.what();
    }
  };

  const int effective_workers = std::clamp(
      workers, 1, static_cast<int>(std::min<std::size_t>(n_trials, 1 << 10)));
  if (effective_workers == 1) {
    for (std::size_t trial = 0; trial < n_trials; ++trial) run_one(trial);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(effective_workers));
    for (int w = 0; w < effective_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t trial = next.fetch_add(1); trial < n_trials;
             trial = next.fetch_add(1)) {
          run_one(trial);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // Deterministic fold in ascending trial order. A failed trial aborts
  // the row: partial counts would misstate the error frequency.
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    if (trial_kinds[trial] != RowErrorKind::kNone) {
      row.error_kind = trial_kinds[trial];
      row.error = trial_errors[trial];
      return row;
    }
  }

  const std::size_t best = config.instance.best_index();
  const std::vector<double>& gaps = config.instance.gaps();
  std::size_t wrong = 0;
  double regret_sum = 0.0;
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    if (recommended[trial] != best) ++wrong;
    regret_sum += gaps[recommended[trial]];
  }
  const double n = static_cast<double>(n_trials);
  const double mean_regret = regret_sum / n;
  double ss = 0.0;
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    const double delta = gaps[recommended[trial]] - mean_regret;
    ss += delta * delta;
  }
  const double stderr_regret =
      n_trials > 1 ? std::sqrt(ss / ((n - 1.0) * n)) : 0.0;

  row.empirical_error = detail::round_sig12(static_cast<double>(wrong) / n);
  row.mean_regret = detail::round_sig12(mean_regret);
  row.regret_stderr = detail::round_sig12(stderr_regret);
  try {
    const double bound =
        attach_error_bound(config.instance, schedule, T, config.constants);
    row.bound_error = detail::round_sig12(bound);
    row.bound_regret = detail::round_sig12(config.instance.gap_max() * bound);
  } catch (const Error& err) {
    row.error_kind = detail::classify_error(err);
    row.error = std::string("bound: ") + err.what();
  }
  return row;
}

/// One row per budget, in the given order; rows are independent because
/// seeding mixes in T, so the report does not depend on sweep order.
/// Per-row failures are recorded in the row and the sweep continues.
inline ExperimentReport sweep_budgets(const ExperimentConfig& config,
                                      int workers,
                                      const TimingCallback& timing = {}) {
  if (config.budgets.empty()) {
    throw ConfigError("budgets: must be non-empty");
  }
  Schedule schedule = resolve_schedule(config);
  ExperimentReport report;
  report.master_seed = config.master_seed;
  report.version = kVersion;
  report.config_echo = config.config_echo;
  report.rows.reserve(config.budgets.size());
  for (std::int64_t T : config.budgets) {
    const auto start = std::chrono::steady_clock::now();
    ReportRow row = run_trials(config, schedule, T, workers);
    const auto stop = std::chrono::steady_clock::now();
    if (timing) {
      timing(T, std::chrono::duration<double, std::milli>(stop - start)
                    .count());
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace funbandit

#endif  // FUNBANDIT_HARNESS_HPP
