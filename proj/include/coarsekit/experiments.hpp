// Copyright 2026 The coarsekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coarsekit/group.hpp"

namespace coarsekit {

/// Malformed scenario configuration: unknown names or keys, bad values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where an expected value comes from: a closed form printed in the
/// source mathematics, a definitional identity, or an independent
/// computation.
enum class Tag { kPaper, kTrivial, kDerived };

std::string to_string(Tag tag);

struct Assertion {
  std::string description;
  std::string expected;
  std::string observed;
  Tag tag = Tag::kDerived;
  bool pass = false;
};

struct IndexRow {
  std::size_t index = 0;
  std::vector<std::pair<std::string, std::string>> values;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<IndexRow> rows;
  std::vector<Assertion> assertions;
  std::vector<std::string> truncations;
  std::optional<double> wall_time_seconds;

  /// Records an assertion; pass is exact text equality of the two values.
  void expect(std::string description, std::string expected, std::string observed, Tag tag);
  bool all_pass() const;
  std::size_t failures() const;
};

using ScenarioParams = std::map<std::string, Integer>;

struct ParamSpec {
  std::string name;
  Integer default_value;
  Integer minimum;
  std::string help;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::function<ScenarioReport(const ScenarioParams&)> run;
};

/// Built-in scenarios, sorted by name.
const std::vector<ScenarioInfo>& scenario_registry();
const ScenarioInfo* find_scenario(std::string_view name);

/// Validates overrides against the schema (ConfigError on unknown names,
/// unknown keys or values below the minimum), fills defaults and runs.
/// Records wall time.
ScenarioReport run_scenario(std::string_view name, const ScenarioParams& overrides);

// Scenarios.
ScenarioReport heisenberg_separation(std::size_t N);
ScenarioReport heisenberg_pseudometric(std::size_t N);
ScenarioReport z_quotient_metric(std::size_t k, std::size_t R);
ScenarioReport powers_of_ten(std::size_t depth, std::size_t N);
ScenarioReport aj_family(std::size_t J, std::size_t depth);
ScenarioReport smith_uniqueness_probe(std::size_t R);
ScenarioReport rho_plus_demo(std::size_t R);

/// Header row "record key value expected tag pass", then parameters,
/// truncations, index rows and assertions. Wall time only when asked.
std::string format_tsv(const ScenarioReport& report, bool include_timing = false);
/// One object mirroring the report fields in a fixed key order.
std::string format_json(const ScenarioReport& report, bool include_timing = false);

}  // namespace coarsekit
