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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "funbandit/funbandit.hpp"

namespace {

using funbandit::BanditInstance;
using funbandit::Bernoulli;
using funbandit::DistributionSpec;
using funbandit::FunctionalSpec;
using funbandit::Mean;
using funbandit::Rng;
using funbandit::RunResult;
using funbandit::Schedule;

std::vector<int> survivor_sizes(const Schedule& s) {
  std::vector<int> sizes{s.K()};
  int cur = s.K();
  for (int x : s.x()) {
    cur -= x;
    sizes.push_back(cur);
  }
  return sizes;
}

std::vector<DistributionSpec> bernoulli_arms(const std::vector<double>& ps) {
  std::vector<DistributionSpec> arms;
  arms.reserve(ps.size());
  for (double p : ps) arms.emplace_back(Bernoulli{p});
  return arms;
}

}  // namespace

TEST_CASE("successive rejects schedule examples", "[elimination]") {
  const Schedule k4 = funbandit::schedule_successive_rejects(4);
  REQUIRE(k4.L() == 3);
  REQUIRE(k4.x() == std::vector<int>{1, 1, 1});
  REQUIRE(k4.H() == 9);

  REQUIRE(funbandit::schedule_successive_rejects(2).H() == 2);
  REQUIRE(funbandit::schedule_successive_rejects(5).H() == 14);
  REQUIRE_THROWS_AS(funbandit::schedule_successive_rejects(1),
                    funbandit::DomainError);
}

TEST_CASE("sequential halving schedule examples", "[elimination]") {
  const Schedule k8 = funbandit::schedule_sequential_halving(8);
  REQUIRE(k8.L() == 3);
  REQUIRE(k8.x() == std::vector<int>{4, 2, 1});
  REQUIRE(k8.H() == 14);

  const Schedule k5 = funbandit::schedule_sequential_halving(5);
  REQUIRE(k5.x() == std::vector<int>{2, 1, 1});
  REQUIRE(k5.H() == 10);

  REQUIRE(funbandit::schedule_sequential_halving(2).H() == 2);
  REQUIRE_THROWS_AS(funbandit::schedule_sequential_halving(0),
                    funbandit::DomainError);
}

TEST_CASE("custom schedules validate the drop list", "[elimination]") {
  const Schedule two_rounds(4, {2, 1});
  REQUIRE(two_rounds.H() == 6);
  const Schedule one_round(4, {3});
  REQUIRE(one_round.H() == 4);

  REQUIRE_THROWS_AS(Schedule(4, {1, 1}), funbandit::DomainError);
  REQUIRE_THROWS_AS(Schedule(4, {4}), funbandit::DomainError);
  REQUIRE_THROWS_AS(Schedule(4, {1, -1, 3}), funbandit::DomainError);
  REQUIRE_THROWS_AS(Schedule(4, {}), funbandit::DomainError);
  REQUIRE_THROWS_AS(Schedule(1, {0}), funbandit::DomainError);
}

TEST_CASE("both policies leave one survivor for every K up to 64",
          "[elimination]") {
  for (int K = 2; K <= 64; ++K) {
    for (bool halving : {false, true}) {
      const Schedule s = halving ? funbandit::schedule_sequential_halving(K)
                                 : funbandit::schedule_successive_rejects(K);
      REQUIRE(std::accumulate(s.x().begin(), s.x().end(), 0) == K - 1);
      const std::vector<int> sizes = survivor_sizes(s);
      for (int size : sizes) REQUIRE(size >= 1);
      REQUIRE(sizes.back() == 1);
      REQUIRE(funbandit::compute_H(s) == s.H());

      // Survivor accounting identity behind the bound prefactor.
      int leaves = 0;
      for (int l = 0; l < s.L(); ++l) leaves += sizes[l] - s.x()[l];
      REQUIRE(leaves == s.H() - K + 1);

      // Round sizes sum to H, so spending floor(T/H) per survivor per
      // round can never exceed T.
      REQUIRE(std::accumulate(sizes.begin(), sizes.end() - 1, 0) == s.H());
    }
  }
}

TEST_CASE("weakest survivors are dropped with index tie-breaks",
          "[elimination]") {
  const std::vector<std::size_t> survivors{0, 1, 2, 3};
  const auto out =
      funbandit::eliminate_weakest(survivors, {0.3, 0.9, 0.3, 0.5}, 2);
  REQUIRE(out.eliminated == std::vector<std::size_t>{0, 2});
  REQUIRE(out.kept == std::vector<std::size_t>{1, 3});

  const auto ties =
      funbandit::eliminate_weakest(survivors, {0.5, 0.5, 0.5, 0.5}, 1);
  REQUIRE(ties.eliminated == std::vector<std::size_t>{0});

  const auto sparse =
      funbandit::eliminate_weakest({7, 9, 11}, {0.5, 0.2, 0.2}, 1);
  REQUIRE(sparse.eliminated == std::vector<std::size_t>{9});
  REQUIRE(sparse.kept == std::vector<std::size_t>{7, 11});

  const auto none =
      funbandit::eliminate_weakest(survivors, {0.1, 0.2, 0.3, 0.4}, 0);
  REQUIRE(none.eliminated.empty());
  REQUIRE(none.kept == survivors);

  REQUIRE_THROWS_AS(
      funbandit::eliminate_weakest(survivors, {0.1, 0.2, 0.3, 0.4}, 4),
      funbandit::DomainError);
  REQUIRE_THROWS_AS(funbandit::eliminate_weakest(survivors, {0.1, 0.2}, 1),
                    funbandit::InternalError);
}

TEST_CASE("point-mass instance resolves in one deterministic round",
          "[elimination]") {
  const std::vector<DistributionSpec> arms = bernoulli_arms({1.0, 0.0});
  const Schedule s = funbandit::schedule_successive_rejects(2);
  const RunResult result = funbandit::run_batch_elimination(
      arms, s, 20, FunctionalSpec{Mean{}}, Rng(1));
  REQUIRE(result.recommended == 0);
  REQUIRE(result.pulls_used == 20);
  REQUIRE(result.rounds.size() == 1);
  REQUIRE(result.rounds[0].estimates == std::vector<double>{1.0, 0.0});
  REQUIRE(result.per_arm_pulls == std::vector<std::uint64_t>{10, 10});
}

TEST_CASE("runs replay bit-identically for equal seeds", "[elimination]") {
  const std::vector<DistributionSpec> arms =
      bernoulli_arms({0.9, 0.6, 0.5, 0.4});
  const Schedule s = funbandit::schedule_successive_rejects(4);
  const RunResult a = funbandit::run_batch_elimination(
      arms, s, 100, FunctionalSpec{Mean{}}, Rng(77));
  const RunResult b = funbandit::run_batch_elimination(
      arms, s, 100, FunctionalSpec{Mean{}}, Rng(77));
  REQUIRE(a.recommended == b.recommended);
  REQUIRE(a.pulls_used == b.pulls_used);
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (std::size_t l = 0; l < a.rounds.size(); ++l) {
    REQUIRE(a.rounds[l].survivors == b.rounds[l].survivors);
    REQUIRE(a.rounds[l].estimates == b.rounds[l].estimates);
    REQUIRE(a.rounds[l].eliminated == b.rounds[l].eliminated);
  }
}

TEST_CASE("budget and bookkeeping invariants hold on real runs",
          "[elimination]") {
  for (int K : {2, 5, 12}) {
    std::vector<double> ps;
    for (int i = 0; i < K; ++i) ps.push_back(0.2 + 0.6 * i / K);
    const std::vector<DistributionSpec> arms = bernoulli_arms(ps);
    for (bool halving : {false, true}) {
      const Schedule s = halving ? funbandit::schedule_sequential_halving(K)
                                 : funbandit::schedule_successive_rejects(K);
      const auto H = static_cast<std::uint64_t>(s.H());
      for (std::uint64_t T : {H, H + 1, 2 * H + 3, 10 * H}) {
        const RunResult result = funbandit::run_batch_elimination(
            arms, s, T, FunctionalSpec{Mean{}}, Rng(T));
        REQUIRE(result.pulls_used == H * (T / H));
        REQUIRE(result.pulls_used <= T);
        REQUIRE(result.rounds.size() == static_cast<std::size_t>(s.L()));

        std::uint64_t per_arm_total = 0;
        for (std::uint64_t pulls : result.per_arm_pulls) {
          per_arm_total += pulls;
        }
        REQUIRE(per_arm_total == result.pulls_used);

        // Eliminations partition the arms, leaving the recommendation.
        std::vector<std::size_t> gone;
        for (const auto& round : result.rounds) {
          gone.insert(gone.end(), round.eliminated.begin(),
                      round.eliminated.end());
        }
        std::sort(gone.begin(), gone.end());
        REQUIRE(std::adjacent_find(gone.begin(), gone.end()) == gone.end());
        REQUIRE(gone.size() == static_cast<std::size_t>(K - 1));
        REQUIRE(std::find(gone.begin(), gone.end(), result.recommended) ==
                gone.end());
      }
    }
  }
}

TEST_CASE("budgets below the normalizer are rejected", "[elimination]") {
  const std::vector<DistributionSpec> arms =
      bernoulli_arms({0.9, 0.5, 0.5, 0.5});
  const Schedule s = funbandit::schedule_successive_rejects(4);
  REQUIRE_THROWS_AS(funbandit::run_batch_elimination(
                        arms, s, 8, FunctionalSpec{Mean{}}, Rng(1)),
                    funbandit::InsufficientBudget);
}

TEST_CASE("schedule and instance sizes must agree", "[elimination]") {
  const std::vector<DistributionSpec> arms = bernoulli_arms({0.9, 0.5, 0.5});
  const Schedule s = funbandit::schedule_successive_rejects(4);
  REQUIRE_THROWS_AS(funbandit::run_batch_elimination(
                        arms, s, 100, FunctionalSpec{Mean{}}, Rng(1)),
                    funbandit::DomainError);
}

TEST_CASE("estimator failures carry round and arm context", "[elimination]") {
  const std::vector<DistributionSpec> arms = bernoulli_arms({0.9, 0.5});
  const Schedule s = funbandit::schedule_successive_rejects(2);
  try {
    funbandit::run_batch_elimination(
        arms, s, 2, FunctionalSpec{funbandit::MeanVariance{1.0}}, Rng(1));
    FAIL("expected InsufficientSamples");
  } catch (const funbandit::InsufficientSamples& err) {
    REQUIRE(std::string(err.what()).find("round 1, arm 0") !=
            std::string::npos);
  }
}

TEST_CASE("ground truth metadata on the instance", "[elimination]") {
  const BanditInstance instance(bernoulli_arms({0.9, 0.5, 0.7}),
                                FunctionalSpec{Mean{}});
  REQUIRE(instance.best_index() == 0);
  REQUIRE(instance.true_values() == std::vector<double>{0.9, 0.5, 0.7});
  REQUIRE(std::abs(instance.gap_min() - 0.2) < 1e-12);
  REQUIRE(std::abs(instance.gap_max() - 0.4) < 1e-12);

  const BanditInstance tie(bernoulli_arms({0.9, 0.9, 0.5}),
                           FunctionalSpec{Mean{}});
  REQUIRE(tie.best_index() == 0);
  REQUIRE(tie.gap_min() == 0.0);

  REQUIRE_THROWS_AS(BanditInstance(bernoulli_arms({0.9}),
                                   FunctionalSpec{Mean{}}),
                    funbandit::DomainError);
  REQUIRE_THROWS_AS(BanditInstance(bernoulli_arms({0.9, 0.5}),
                                   FunctionalSpec{funbandit::ValueAtRisk{1.2}}),
                    funbandit::DomainError);
}

TEST_CASE("halving recovers a clearly best arm at large budgets",
          "[elimination]") {
  const std::vector<DistributionSpec> arms =
      bernoulli_arms({0.9, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  const Schedule s = funbandit::schedule_sequential_halving(8);
  const std::uint64_t T = 14000;
  const int runs = 2000;
  int wrong = 0;
  for (int i = 0; i < runs; ++i) {
    const Rng rng(funbandit::hash_combine(424242,
                                          static_cast<std::uint64_t>(i)));
    const RunResult result = funbandit::run_batch_elimination(
        arms, s, T, FunctionalSpec{Mean{}}, rng);
    if (result.recommended != 0) ++wrong;
  }
  const double error_rate = static_cast<double>(wrong) / runs;
  const double bound = funbandit::bounds::generic_error_bound(
      s.H(), s.K(), static_cast<double>(T), 0.4,
      funbandit::bounds::q_mean_function());
  REQUIRE(error_rate <= std::min(1.0, bound));
  REQUIRE(error_rate < 0.01);
}
