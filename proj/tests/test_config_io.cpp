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

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "funbandit/funbandit.hpp"

namespace {

using namespace funbandit;
using nlohmann::json;

json base_document() {
  return json::parse(R"({
    "arms": [
      {"dist": "bernoulli", "p": 0.9},
      {"dist": "bernoulli", "p": 0.5},
      {"dist": "bernoulli", "p": 0.4}
    ],
    "functional": {"name": "mean"},
    "schedule": {"policy": "sr"},
    "budgets": [50, 500],
    "trials": 10,
    "seed": 42
  })");
}

void require_config_error(const json& doc, const std::string& needle) {
  try {
    parse_config(doc.dump());
    FAIL("expected ConfigError mentioning \"" << needle << "\"");
  } catch (const ConfigError& err) {
    INFO("message: " << err.what());
    REQUIRE(std::string(err.what()).find(needle) != std::string::npos);
  }
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("a complete document parses into a runnable config", "[config]") {
  const ExperimentConfig config = parse_config(base_document().dump());
  REQUIRE(config.instance.size() == 3);
  REQUIRE(config.instance.best_index() == 0);
  REQUIRE(config.policy == SchedulePolicy::kSuccessiveRejects);
  REQUIRE(config.budgets == std::vector<std::int64_t>{50, 500});
  REQUIRE(config.trials == 10);
  REQUIRE(config.master_seed == 42);
  REQUIRE(config.constants.C1 == 0.0);
  REQUIRE(config.constants.c4 == 0.0);
  REQUIRE(resolve_schedule(config).H() == 5);
  REQUIRE(json::parse(config.config_echo).contains("arms"));
}

TEST_CASE("every distribution variant parses", "[config]") {
  json doc = base_document();
  doc["arms"] = json::parse(R"([
    {"dist": "bernoulli", "p": 0.3},
    {"dist": "categorical", "values": [-1.0, 2.0], "probs": [0.5, 0.5]},
    {"dist": "uniform", "a": -2.0, "b": 3.0},
    {"dist": "truncated_gaussian", "mu": 0.5, "sigma": 1.0, "a": 0.0, "b": 2.0},
    {"dist": "beta", "alpha": 2.0, "beta": 5.0}
  ])");
  doc["functional"] = json{{"name", "var"}, {"lambda", 0.5}};
  const ExperimentConfig config = parse_config(doc.dump());
  REQUIRE(config.instance.size() == 5);
  const auto& arms = config.instance.arms();
  REQUIRE(arms[0].support_lo() == 0.0);
  REQUIRE(arms[0].support_hi() == 1.0);
  REQUIRE(arms[1].support_lo() == -1.0);
  REQUIRE(arms[1].support_hi() == 2.0);
  REQUIRE(arms[2].support_lo() == -2.0);
  REQUIRE(arms[2].support_hi() == 3.0);
  REQUIRE(arms[3].support_lo() == 0.0);
  REQUIRE(arms[3].support_hi() == 2.0);
  REQUIRE(arms[4].support_lo() == 0.0);
  REQUIRE(arms[4].support_hi() == 1.0);
}

TEST_CASE("constants parse into bound inputs", "[config]") {
  json doc = base_document();
  doc["constants"] = json{{"C1", 1.5}, {"D", 2.0}, {"M_knn", 100.0}};
  const ExperimentConfig config = parse_config(doc.dump());
  REQUIRE(config.constants.C1 == 1.5);
  REQUIRE(config.constants.D == 2.0);
  REQUIRE(config.constants.M_knn == 100.0);
  REQUIRE(config.constants.C2 == 0.0);

  doc["constants"] = json{{"C1", -1.0}};
  require_config_error(doc, "constants.C1");
  doc["constants"] = json{{"bogus", 1.0}};
  require_config_error(doc, "constants.bogus: unknown key");
}

TEST_CASE("custom schedules parse and invalid ones name the path",
          "[config]") {
  json doc = base_document();
  doc["arms"].push_back(json{{"dist", "bernoulli"}, {"p", 0.2}});
  doc["schedule"] = json{{"policy", "custom"}, {"x", json::array({2, 1})}};
  const ExperimentConfig config = parse_config(doc.dump());
  REQUIRE(config.policy == SchedulePolicy::kCustom);
  REQUIRE(config.custom_x == std::vector<int>{2, 1});
  REQUIRE(resolve_schedule(config).H() == 6);

  doc["schedule"]["x"] = json::array({1, 1});
  require_config_error(doc, "schedule.x");
  doc["schedule"].erase("x");
  require_config_error(doc, "schedule.x: missing required key");
  doc["schedule"] = json{{"policy", "sr"}, {"x", json::array({1, 1, 1})}};
  require_config_error(doc, "schedule.x: only accepted for the custom policy");
  doc["schedule"] = json{{"policy", "fifty"}};
  require_config_error(doc, "schedule.policy");
}

TEST_CASE("unknown keys are rejected by path", "[config]") {
  json doc = base_document();
  doc["extra"] = 1;
  require_config_error(doc, "extra: unknown key");

  doc = base_document();
  doc["arms"][0]["q"] = 0.5;
  require_config_error(doc, "arms[0].q: unknown key");

  doc = base_document();
  doc["functional"]["gamma"] = 0.5;
  require_config_error(doc, "functional.gamma: unknown key");

  doc = base_document();
  doc["schedule"]["foo"] = "bar";
  require_config_error(doc, "schedule.foo: unknown key");
}

TEST_CASE("missing keys are rejected by path", "[config]") {
  json doc = base_document();
  doc.erase("budgets");
  require_config_error(doc, "budgets: missing required key");

  doc = base_document();
  doc["arms"][0].erase("p");
  require_config_error(doc, "arms[0].p: missing required key");

  doc = base_document();
  doc["functional"].erase("name");
  require_config_error(doc, "functional.name: missing required key");

  doc = base_document();
  doc.erase("seed");
  require_config_error(doc, "seed: missing required key");
}

TEST_CASE("type and range errors name the offending path", "[config]") {
  json doc = base_document();
  doc["trials"] = "ten";
  require_config_error(doc, "trials: expected an integer");

  doc = base_document();
  doc["trials"] = 0;
  require_config_error(doc, "trials: must be >= 1");

  doc = base_document();
  doc["budgets"] = json::array({10.5});
  require_config_error(doc, "budgets[0]: expected an integer");

  doc = base_document();
  doc["budgets"] = json::array({0});
  require_config_error(doc, "budgets[0]: must be >= 1");

  doc = base_document();
  doc["budgets"] = json::array();
  require_config_error(doc, "budgets");

  doc = base_document();
  doc["arms"][0]["p"] = "half";
  require_config_error(doc, "arms[0].p: expected a number");

  doc = base_document();
  doc["arms"][0]["p"] = 1.5;
  require_config_error(doc, "arms[0]");

  doc = base_document();
  doc["seed"] = -5;
  require_config_error(doc, "seed: expected a non-negative integer");

  doc = base_document();
  doc["arms"][1]["dist"] = "gaussian";
  require_config_error(doc, "arms[1].dist");

  require_config_error(json::parse("[1, 2]"), "config");
  REQUIRE_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("level parameters follow the functional", "[config]") {
  json doc = base_document();
  doc["functional"] = json{{"name", "mean"}, {"lambda", 0.5}};
  require_config_error(doc, "functional.lambda: not accepted for mean");

  doc["functional"] = json{{"name", "mean_variance"}};
  require_config_error(doc, "functional.lambda: missing required key");

  doc["functional"] = json{{"name", "mean_variance"}, {"lambda", -1.0}};
  require_config_error(doc, "functional.lambda");

  doc["functional"] = json{{"name", "var"}, {"lambda", 1.0}};
  require_config_error(doc, "functional.lambda");

  doc["functional"] = json{{"name", "avar"}, {"lambda", 0.0}};
  require_config_error(doc, "functional.lambda");

  doc["functional"] = json{{"name", "sharpe"}};
  require_config_error(doc, "functional.name");

  doc["functional"] = json{{"name", "entropy"}, {"lambda", 0.5}};
  require_config_error(doc, "functional.lambda: not accepted for entropy");

  doc["functional"] = json{{"name", "entropy"}, {"k", 5}};
  require_config_error(doc, "functional.k: only accepted for knn mode");

  doc["functional"] = json{{"name", "entropy"}, {"mode", "spacing"}};
  require_config_error(doc, "functional.mode");

  doc["functional"] =
      json{{"name", "entropy"}, {"mode", "knn"}, {"k", 0}};
  require_config_error(doc, "functional.k: must be >= 1");

  doc["functional"] = json{{"name", "entropy"}, {"mode", "knn"}, {"k", 7}};
  doc["arms"] = json::parse(R"([
    {"dist": "uniform", "a": 0.0, "b": 1.0},
    {"dist": "uniform", "a": 0.0, "b": 2.0}
  ])");
  const ExperimentConfig config = parse_config(doc.dump());
  const auto* entropy = std::get_if<ShannonEntropy>(&config.instance.functional());
  REQUIRE(entropy != nullptr);
  REQUIRE(entropy->mode == EntropyEstimator::kNearestNeighbor);
  REQUIRE(entropy->k.value() == 7);
}

TEST_CASE("instance construction failures become config errors", "[config]") {
  json doc = base_document();
  // Plug-in entropy has no ground truth over a continuous support.
  doc["arms"] = json::parse(R"([
    {"dist": "uniform", "a": 0.0, "b": 1.0},
    {"dist": "uniform", "a": 0.0, "b": 2.0}
  ])");
  doc["functional"] = json{{"name", "entropy"}, {"mode", "plugin"}};
  require_config_error(doc, "config: ");
}

TEST_CASE("budgets below the schedule normalizer parse fine", "[config]") {
  json doc = base_document();
  doc["budgets"] = json::array({1});
  const ExperimentConfig config = parse_config(doc.dump());
  REQUIRE(config.budgets == std::vector<std::int64_t>{1});
}

TEST_CASE("CSV output follows the fixed schema byte for byte", "[config]") {
  REQUIRE(std::string(kCsvHeader) ==
          "T,trials,empirical_error,mean_regret,regret_stderr,bound_error,"
          "bound_regret,wall_time_ms");

  json doc = base_document();
  doc["arms"] = json::parse(
      R"([{"dist": "bernoulli", "p": 1.0}, {"dist": "bernoulli", "p": 0.0}])");
  doc["budgets"] = json::array({20, 40});
  doc["trials"] = 5;
  const ExperimentConfig config = parse_config(doc.dump());
  const ExperimentReport report = sweep_budgets(config, 1);

  const std::string csv = to_csv(report);
  REQUIRE(csv == to_csv(sweep_budgets(config, 1)));

  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 3);
  REQUIRE(lines[0] == std::string(kCsvHeader));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 8);
    const ReportRow& row = report.rows[i - 1];
    REQUIRE(std::strtoll(fields[0].c_str(), nullptr, 10) == row.T);
    REQUIRE(std::strtol(fields[1].c_str(), nullptr, 10) == row.trials);
    // Values survive the decimal round trip bit for bit.
    REQUIRE(std::strtod(fields[2].c_str(), nullptr) == row.empirical_error);
    REQUIRE(std::strtod(fields[3].c_str(), nullptr) == row.mean_regret);
    REQUIRE(std::strtod(fields[4].c_str(), nullptr) == row.regret_stderr);
    REQUIRE(std::strtod(fields[5].c_str(), nullptr) == row.bound_error);
    REQUIRE(std::strtod(fields[6].c_str(), nullptr) == row.bound_regret);
    REQUIRE(std::strtod(fields[7].c_str(), nullptr) == row.wall_time_ms);
  }
}

TEST_CASE("failed rows refuse serialization", "[config]") {
  json doc = base_document();
  doc["budgets"] = json::array({1});
  const ExperimentConfig config = parse_config(doc.dump());
  const ExperimentReport report = sweep_budgets(config, 1);
  REQUIRE(report.rows[0].error_kind == RowErrorKind::kBudget);
  REQUIRE_THROWS_AS(to_csv(report), InternalError);
  REQUIRE_THROWS_AS(to_json(report), InternalError);
}

TEST_CASE("JSON output mirrors the CSV numbers exactly", "[config]") {
  json doc = base_document();
  doc["trials"] = 50;
  const ExperimentConfig config = parse_config(doc.dump());
  const ExperimentReport report = sweep_budgets(config, 1);

  const json parsed = json::parse(to_json(report));
  REQUIRE(parsed["version"] == std::string(kVersion));
  REQUIRE(parsed["seed"] == 42);
  REQUIRE(parsed["config"]["trials"] == 50);
  REQUIRE(parsed["rows"].size() == report.rows.size());

  const std::vector<std::string> lines = split_lines(to_csv(report));
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const json& r = parsed["rows"][i];
    const std::vector<std::string> fields = split_fields(lines[i + 1]);
    REQUIRE(r["T"].get<std::int64_t>() == report.rows[i].T);
    REQUIRE(r["trials"].get<int>() == report.rows[i].trials);
    REQUIRE(r["empirical_error"].get<double>() ==
            std::strtod(fields[2].c_str(), nullptr));
    REQUIRE(r["mean_regret"].get<double>() ==
            std::strtod(fields[3].c_str(), nullptr));
    REQUIRE(r["regret_stderr"].get<double>() ==
            std::strtod(fields[4].c_str(), nullptr));
    REQUIRE(r["bound_error"].get<double>() ==
            std::strtod(fields[5].c_str(), nullptr));
    REQUIRE(r["bound_regret"].get<double>() ==
            std::strtod(fields[6].c_str(), nullptr));
    REQUIRE(r["wall_time_ms"].get<double>() == 0.0);
  }
}

TEST_CASE("an empty config echo serializes as a null config", "[config]") {
  ExperimentConfig config{BanditInstance(
      {DistributionSpec{Bernoulli{1.0}}, DistributionSpec{Bernoulli{0.0}}},
      Mean{})};
  config.budgets = {20};
  config.trials = 3;
  const ExperimentReport report = sweep_budgets(config, 1);
  const json parsed = json::parse(to_json(report));
  REQUIRE(parsed["config"].is_null());
}

TEST_CASE("files load through the same parser", "[config]") {
  const std::string path = "/tmp/funbandit_config_io_test.json";
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    REQUIRE(f != nullptr);
    const std::string text = base_document().dump();
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  const ExperimentConfig config = load_config_file(path);
  REQUIRE(config.instance.size() == 3);
  std::remove(path.c_str());

  REQUIRE_THROWS_AS(load_config_file("/tmp/does_not_exist_funbandit.json"),
                    ConfigError);
}
