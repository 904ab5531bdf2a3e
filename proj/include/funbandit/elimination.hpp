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

#ifndef FUNBANDIT_ELIMINATION_HPP
#define FUNBANDIT_ELIMINATION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "funbandit/distributions.hpp"
#include "funbandit/errors.hpp"
#include "funbandit/estimators.hpp"
#include "funbandit/functional.hpp"
#include "funbandit/rng.hpp"

namespace funbandit {

/// Elimination plan: L rounds over K arms, dropping x_l arms after round l.
/// The pull normalizer H = L*K - sum_l x_l*(L-l) spreads a budget T into
/// floor(T/H) pulls per surviving arm per round.
class Schedule {
 public:
  Schedule(int K, std::vector<int> x) : K_(K), x_(std::move(x)) {
    if (K_ < 2) {
      throw DomainError("schedule: needs at least 2 arms, got " +
                        std::to_string(K_));
    }
    if (x_.empty()) {
      throw DomainError("schedule: elimination counts must be non-empty");
    }
    int remaining = K_;
    int total = 0;
    for (std::size_t l = 0; l < x_.size(); ++l) {
      if (x_[l] < 0) {
        throw DomainError("schedule: x[" + std::to_string(l) +
                          "] is negative");
      }
      if (remaining - x_[l] < 1) {
        throw DomainError("schedule: round " + std::to_string(l + 1) +
                          " eliminates " + std::to_string(x_[l]) + " of " +
                          std::to_string(remaining) + " survivors");
      }
      remaining -= x_[l];
      total += x_[l];
    }
    if (total != K_ - 1) {
      throw DomainError("schedule: elimination counts sum to " +
                        std::to_string(total) + ", need K - 1 = " +
                        std::to_string(K_ - 1));
    }
    const auto L = static_cast<int>(x_.size());
    H_ = L * K_;
    for (std::size_t l = 0; l < x_.size(); ++l) {
      H_ -= x_[l] * (L - static_cast<int>(l) - 1);
    }
  }

  int K() const { return K_; }
  int L() const { return static_cast<int>(x_.size()); }
  const std::vector<int>& x() const { return x_; }
  int H() const { return H_; }

 private:
  int K_;
  std::vector<int> x_;
  int H_ = 0;
};

inline int compute_H(const Schedule& schedule) { return schedule.H(); }

/// One arm dropped per round: L = K - 1, x = (1, ..., 1).
inline Schedule schedule_successive_rejects(int K) {
  if (K < 2) {
    throw DomainError("successive_rejects: needs at least 2 arms, got " +
                      std::to_string(K));
  }
  return Schedule(K, std::vector<int>(static_cast<std::size_t>(K - 1), 1));
}

/// Half the survivors dropped per round: L = ceil(log2 K),
/// x_l = floor(survivors_l / 2).
inline Schedule schedule_sequential_halving(int K) {
  if (K < 2) {
    throw DomainError("sequential_halving: needs at least 2 arms, got " +
                      std::to_string(K));
  }
  int L = 0;
  while ((1 << L) < K) ++L;
  std::vector<int> x;
  x.reserve(static_cast<std::size_t>(L));
  int remaining = K;
  for (int l = 0; l < L; ++l) {
    const int drop = remaining / 2;
    x.push_back(drop);
    remaining -= drop;
  }
  if (std::accumulate(x.begin(), x.end(), 0) != K - 1 || remaining != 1) {
    throw InternalError("sequential_halving: halving plan failed to leave "
                        "exactly one survivor");
  }
  return Schedule(K, std::move(x));
}

/// Drops the x survivors with the lowest estimates; ties eliminate the
/// lowest arm index first. Both outputs come back sorted by arm index.
struct EliminationOutcome {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> eliminated;
};

inline EliminationOutcome eliminate_weakest(
    const std::vector<std::size_t>& survivors,
    const std::vector<double>& estimates, std::size_t x) {
  if (survivors.size() != estimates.size()) {
    throw InternalError("eliminate_weakest: estimate list does not match "
                        "survivor list");
  }
  if (x >= survivors.size()) {
    throw DomainError("eliminate_weakest: cannot drop " + std::to_string(x) +
                      " of " + std::to_string(survivors.size()) +
                      " survivors");
  }
  std::vector<std::size_t> order(survivors.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (estimates[i] != estimates[j]) return estimates[i] < estimates[j];
    return survivors[i] < survivors[j];
  });
  EliminationOutcome out;
  out.eliminated.reserve(x);
  out.kept.reserve(survivors.size() - x);
  for (std::size_t r = 0; r < order.size(); ++r) {
    (r < x ? out.eliminated : out.kept).push_back(survivors[order[r]]);
  }
  std::sort(out.eliminated.begin(), out.eliminated.end());
  std::sort(out.kept.begin(), out.kept.end());
  return out;
}

/// Arms plus the functional, with ground truth resolved once: true values
/// G_i, the best index i* (lowest index on ties), gaps gamma_i = G_{i*} -
/// G_i, the minimal positive gap d, and the maximal gap gamma_max.
class BanditInstance {
 public:
  BanditInstance(std::vector<DistributionSpec> arms, FunctionalSpec functional)
      : arms_(std::move(arms)), functional_(std::move(functional)) {
    if (arms_.size() < 2) {
      throw DomainError("bandit instance: needs at least 2 arms, got " +
                        std::to_string(arms_.size()));
    }
    validate(functional_);
    true_values_.reserve(arms_.size());
    for (const DistributionSpec& arm : arms_) {
      true_values_.push_back(true_functional(arm, functional_));
    }
    best_index_ = static_cast<std::size_t>(
        std::max_element(true_values_.begin(), true_values_.end()) -
        true_values_.begin());
    gaps_.reserve(arms_.size());
    gap_min_ = std::numeric_limits<double>::infinity();
    gap_max_ = 0.0;
    for (std::size_t i = 0; i < arms_.size(); ++i) {
      const double gap = true_values_[best_index_] - true_values_[i];
      gaps_.push_back(gap);
      if (i != best_index_) gap_min_ = std::min(gap_min_, gap);
      gap_max_ = std::max(gap_max_, gap);
    }
  }

  const std::vector<DistributionSpec>& arms() const { return arms_; }
  const FunctionalSpec& functional() const { return functional_; }
  std::size_t size() const { return arms_.size(); }
  const std::vector<double>& true_values() const { return true_values_; }
  std::size_t best_index() const { return best_index_; }
  const std::vector<double>& gaps() const { return gaps_; }
  double gap_min() const { return gap_min_; }
  double gap_max() const { return gap_max_; }

 private:
  std::vector<DistributionSpec> arms_;
  FunctionalSpec functional_;
  std::vector<double> true_values_;
  std::size_t best_index_ = 0;
  std::vector<double> gaps_;
  double gap_min_ = 0.0;
  double gap_max_ = 0.0;
};

struct RoundRecord {
  std::vector<std::size_t> survivors;   // set entering the round
  std::vector<double> estimates;        // parallel to survivors
  std::vector<std::size_t> eliminated;  // dropped after this round
};

struct RunResult {
  std::size_t recommended = 0;
  std::uint64_t pulls_used = 0;
  std::vector<RoundRecord> rounds;
  std::vector<std::uint64_t> per_arm_pulls;
};

namespace detail {

[[noreturn]] inline void rethrow_estimator_error(const Error& err, int round,
                                                 std::size_t arm) {
  const std::string ctx = "round " + std::to_string(round) + ", arm " +
                          std::to_string(arm) + ": " + err.what();
  if (dynamic_cast<const InsufficientSamples*>(&err)) {
    throw InsufficientSamples(ctx);
  }
  if (dynamic_cast<const DegenerateSample*>(&err)) {
    throw DegenerateSample(ctx);
  }
  if (dynamic_cast<const EmptySample*>(&err)) throw EmptySample(ctx);
  if (dynamic_cast<const DomainError*>(&err)) throw DomainError(ctx);
  throw InternalError(ctx);
}

}  // namespace detail

/// Batch Elimination: each round pulls every surviving arm floor(T/H)
/// fresh times, re-estimates on the arm's cumulative samples, and drops
/// the weakest x_l arms, leaving one recommendation after round L.
///
/// Each arm samples from its own rng substream keyed by arm index, so an
/// arm's reward sequence never depends on which other arms survive.
/// Leftover budget T - H * floor(T/H) is not spent.
inline RunResult run_batch_elimination(const std::vector<DistributionSpec>& arms,
                                       const Schedule& schedule,
                                       std::uint64_t T,
                                       const FunctionalSpec& functional,
                                       const Rng& rng) {
  if (arms.size() != static_cast<std::size_t>(schedule.K())) {
    throw DomainError("run: schedule is for " + std::to_string(schedule.K()) +
                      " arms, instance has " + std::to_string(arms.size()));
  }
  const auto H = static_cast<std::uint64_t>(schedule.H());
  const std::uint64_t pulls_per_round = T / H;
  if (pulls_per_round < 1) {
    throw InsufficientBudget("run: budget T = " + std::to_string(T) +
                             " below schedule normalizer H = " +
                             std::to_string(H));
  }

  std::vector<Rng> streams;
  std::vector<SampleBuffer> buffers(arms.size());
  streams.reserve(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    streams.push_back(rng.substream(static_cast<std::uint64_t>(i)));
  }

  RunResult result;
  result.per_arm_pulls.assign(arms.size(), 0);
  std::vector<std::size_t> survivors(arms.size());
  std::iota(survivors.begin(), survivors.end(), 0);

  for (int l = 1; l <= schedule.L(); ++l) {
    RoundRecord record;
    record.survivors = survivors;
    record.estimates.reserve(survivors.size());
    for (std::size_t arm : survivors) {
      buffers[arm].append(sample_n(arms[arm], streams[arm],
                                   static_cast<std::size_t>(pulls_per_round)));
      result.per_arm_pulls[arm] += pulls_per_round;
      result.pulls_used += pulls_per_round;
      try {
        record.estimates.push_back(estimate(buffers[arm], functional));
      } catch (const Error& err) {
        detail::rethrow_estimator_error(err, l, arm);
      }
    }
    const auto drop =
        static_cast<std::size_t>(schedule.x()[static_cast<std::size_t>(l - 1)]);
    EliminationOutcome outcome =
        eliminate_weakest(survivors, record.estimates, drop);
    record.eliminated = outcome.eliminated;
    survivors = std::move(outcome.kept);
    result.rounds.push_back(std::move(record));
  }

  if (survivors.size() != 1) {
    throw InternalError("run: " + std::to_string(survivors.size()) +
                        " survivors after the final round");
  }
  result.recommended = survivors.front();
  return result;
}

inline RunResult run_batch_elimination(const BanditInstance& instance,
                                       const Schedule& schedule,
                                       std::uint64_t T, const Rng& rng) {
  return run_batch_elimination(instance.arms(), schedule, T,
                               instance.functional(), rng);
}

}  // namespace funbandit

#endif  // FUNBANDIT_ELIMINATION_HPP
