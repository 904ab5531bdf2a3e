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

#ifndef FUNBANDIT_CONFIG_HPP
#define FUNBANDIT_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "funbandit/errors.hpp"
#include "funbandit/harness.hpp"

namespace funbandit {
namespace config_detail {

using nlohmann::json;

// Schema errors always name the offending key path, e.g. "arms[2].p".

[[noreturn]] inline void fail(const std::string& path,
                              const std::string& what) {
  throw ConfigError(path + ": " + what);
}

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

inline void reject_unknown_keys(const json& j, const std::string& path,
                                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (allowed.find(key) == allowed.end()) {
      fail(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

inline const json& require_key(const json& j, const std::string& path,
                               const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    fail(path.empty() ? key : path + "." + key, "missing required key");
  }
  return *it;
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline std::int64_t as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    fail(path, "expected an integer");
  }
  return j.get<std::int64_t>();
}

inline std::uint64_t as_seed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const std::int64_t v = j.get<std::int64_t>();
    if (v < 0) fail(path, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }
  fail(path, "expected a non-negative integer");
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<double> as_number_list(const json& j,
                                          const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline DistributionSpec parse_arm(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string dist = as_string(require_key(j, path, "dist"),
                                     path + ".dist");
  try {
    if (dist == "bernoulli") {
      reject_unknown_keys(j, path, {"dist", "p"});
      return DistributionSpec(
          Bernoulli{as_number(require_key(j, path, "p"), path + ".p")});
    }
    if (dist == "categorical") {
      reject_unknown_keys(j, path, {"dist", "values", "probs"});
      Categorical c;
      c.values = as_number_list(require_key(j, path, "values"),
                                path + ".values");
      c.probs = as_number_list(require_key(j, path, "probs"),
                               path + ".probs");
      return DistributionSpec(std::move(c));
    }
    if (dist == "uniform") {
      reject_unknown_keys(j, path, {"dist", "a", "b"});
      return DistributionSpec(
          Uniform{as_number(require_key(j, path, "a"), path + ".a"),
                  as_number(require_key(j, path, "b"), path + ".b")});
    }
    if (dist == "truncated_gaussian") {
      reject_unknown_keys(j, path, {"dist", "mu", "sigma", "a", "b"});
      return DistributionSpec(TruncatedGaussian{
          as_number(require_key(j, path, "mu"), path + ".mu"),
          as_number(require_key(j, path, "sigma"), path + ".sigma"),
          as_number(require_key(j, path, "a"), path + ".a"),
          as_number(require_key(j, path, "b"), path + ".b")});
    }
    if (dist == "beta") {
      reject_unknown_keys(j, path, {"dist", "alpha", "beta"});
      return DistributionSpec(BetaDist{
          as_number(require_key(j, path, "alpha"), path + ".alpha"),
          as_number(require_key(j, path, "beta"), path + ".beta")});
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& err) {
    fail(path, err.what());
  }
  fail(path + ".dist",
       "unknown distribution \"" + dist +
           "\" (expected bernoulli, categorical, uniform, "
           "truncated_gaussian, or beta)");
}

inline void reject_key(const json& j, const std::string& path,
                       const std::string& key, const std::string& why) {
  if (j.find(key) != j.end()) fail(path + "." + key, why);
}

inline FunctionalSpec parse_functional(const json& j,
                                       const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"name", "lambda", "mode", "k"});
  const std::string name =
      as_string(require_key(j, path, "name"), path + ".name");
  if (name == "mean") {
    reject_key(j, path, "lambda", "not accepted for mean");
    reject_key(j, path, "mode", "not accepted for mean");
    reject_key(j, path, "k", "not accepted for mean");
    return Mean{};
  }
  if (name == "mean_variance" || name == "var" || name == "avar") {
    reject_key(j, path, "mode", "only accepted for entropy");
    reject_key(j, path, "k", "only accepted for entropy");
    const double lambda =
        as_number(require_key(j, path, "lambda"), path + ".lambda");
    FunctionalSpec spec = name == "mean_variance"
                              ? FunctionalSpec(MeanVariance{lambda})
                          : name == "var" ? FunctionalSpec(ValueAtRisk{lambda})
                                          : FunctionalSpec(
                                                AverageValueAtRisk{lambda});
    try {
      validate(spec);
    } catch (const DomainError& err) {
      fail(path + ".lambda", err.what());
    }
    return spec;
  }
  if (name == "entropy") {
    reject_key(j, path, "lambda", "not accepted for entropy");
    ShannonEntropy e;
    if (const auto it = j.find("mode"); it != j.end()) {
      const std::string mode = as_string(*it, path + ".mode");
      if (mode == "plugin") {
        e.mode = EntropyEstimator::kPlugin;
      } else if (mode == "knn") {
        e.mode = EntropyEstimator::kNearestNeighbor;
      } else {
        fail(path + ".mode", "expected \"plugin\" or \"knn\", got \"" + mode +
                                 "\"");
      }
    }
    if (const auto it = j.find("k"); it != j.end()) {
      if (e.mode != EntropyEstimator::kNearestNeighbor) {
        fail(path + ".k", "only accepted for knn mode");
      }
      const std::int64_t k = as_integer(*it, path + ".k");
      if (k < 1) fail(path + ".k", "must be >= 1");
      e.k = static_cast<int>(k);
    }
    return e;
  }
  fail(path + ".name",
       "unknown functional \"" + name +
           "\" (expected mean, mean_variance, var, avar, or entropy)");
}

inline bounds::BoundConstants parse_constants(const json& j,
                                              const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(
      j, path, {"C1", "C2", "c1", "c2", "c4", "c5", "M_knn", "D", "D_prime"});
  bounds::BoundConstants c;
  const auto read = [&](const char* key, double& slot) {
    if (const auto it = j.find(key); it != j.end()) {
      slot = as_number(*it, path + "." + key);
      if (!(slot >= 0.0)) fail(path + "." + key, "must be non-negative");
    }
  };
  read("C1", c.C1);
  read("C2", c.C2);
  read("c1", c.c1);
  read("c2", c.c2);
  read("c4", c.c4);
  read("c5", c.c5);
  read("M_knn", c.M_knn);
  read("D", c.D);
  read("D_prime", c.D_prime);
  return c;
}

}  // namespace config_detail

/// Parses and schema-validates an experiment document. Top-level keys:
/// arms, functional, schedule, budgets, trials, seed, constants
/// (optional). Unknown keys anywhere are rejected by key path.
inline ExperimentConfig parse_config(const std::string& text) {
  namespace cd = config_detail;
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config: not valid JSON: ") + err.what());
  }
  cd::require_object(j, "config");
  cd::reject_unknown_keys(j, "", {"arms", "functional", "schedule", "budgets",
                                  "trials", "seed", "constants"});

  const json& arms_json = cd::require_key(j, "", "arms");
  if (!arms_json.is_array() || arms_json.size() < 2) {
    cd::fail("arms", "expected an array of at least 2 arm objects");
  }
  std::vector<DistributionSpec> arms;
  arms.reserve(arms_json.size());
  for (std::size_t i = 0; i < arms_json.size(); ++i) {
    arms.push_back(cd::parse_arm(arms_json[i],
                                 "arms[" + std::to_string(i) + "]"));
  }

  FunctionalSpec functional = cd::parse_functional(
      cd::require_key(j, "", "functional"), "functional");

  const json& schedule_json = cd::require_key(j, "", "schedule");
  cd::require_object(schedule_json, "schedule");
  cd::reject_unknown_keys(schedule_json, "schedule", {"policy", "x"});
  const std::string policy = cd::as_string(
      cd::require_key(schedule_json, "schedule", "policy"),
      "schedule.policy");
  SchedulePolicy resolved_policy;
  std::vector<int> custom_x;
  if (policy == "sr") {
    resolved_policy = SchedulePolicy::kSuccessiveRejects;
    cd::reject_key(schedule_json, "schedule", "x",
                   "only accepted for the custom policy");
  } else if (policy == "sh") {
    resolved_policy = SchedulePolicy::kSequentialHalving;
    cd::reject_key(schedule_json, "schedule", "x",
                   "only accepted for the custom policy");
  } else if (policy == "custom") {
    resolved_policy = SchedulePolicy::kCustom;
    const json& x_json =
        cd::require_key(schedule_json, "schedule", "x");
    if (!x_json.is_array() || x_json.empty()) {
      cd::fail("schedule.x", "expected a non-empty array of integers");
    }
    for (std::size_t i = 0; i < x_json.size(); ++i) {
      custom_x.push_back(static_cast<int>(cd::as_integer(
          x_json[i], "schedule.x[" + std::to_string(i) + "]")));
    }
  } else {
    cd::fail("schedule.policy",
             "expected \"sr\", \"sh\", or \"custom\", got \"" + policy +
                 "\"");
  }

  const json& budgets_json = cd::require_key(j, "", "budgets");
  if (!budgets_json.is_array() || budgets_json.empty()) {
    cd::fail("budgets", "expected a non-empty array of integers");
  }
  std::vector<std::int64_t> budgets;
  budgets.reserve(budgets_json.size());
  for (std::size_t i = 0; i < budgets_json.size(); ++i) {
    const std::string path = "budgets[" + std::to_string(i) + "]";
    const std::int64_t T = cd::as_integer(budgets_json[i], path);
    if (T < 1) cd::fail(path, "must be >= 1");
    budgets.push_back(T);
  }

  const std::int64_t trials =
      cd::as_integer(cd::require_key(j, "", "trials"), "trials");
  if (trials < 1) cd::fail("trials", "must be >= 1");

  const std::uint64_t seed =
      cd::as_seed(cd::require_key(j, "", "seed"), "seed");

  bounds::BoundConstants constants;
  if (const auto it = j.find("constants"); it != j.end()) {
    constants = cd::parse_constants(*it, "constants");
  }

  std::optional<BanditInstance> instance;
  try {
    instance.emplace(std::move(arms), std::move(functional));
  } catch (const Error& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }

  ExperimentConfig config{std::move(*instance),
                          resolved_policy,
                          std::move(custom_x),
                          std::move(budgets),
                          static_cast<int>(trials),
                          seed,
                          constants,
                          j.dump()};
  if (config.policy == SchedulePolicy::kCustom) {
    try {
      const Schedule probe(static_cast<int>(config.instance.size()),
                           config.custom_x);
      (void)probe;
    } catch (const DomainError& err) {
      throw ConfigError(std::string("schedule.x: ") + err.what());
    }
  }
  return config;
}

inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config: cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace funbandit

#endif  // FUNBANDIT_CONFIG_HPP
