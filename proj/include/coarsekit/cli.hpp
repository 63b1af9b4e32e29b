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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "coarsekit/bornology.hpp"
#include "coarsekit/metrics.hpp"

namespace coarsekit {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitAssertionFailed = 1,
  kExitConfigError = 2,
  kExitResourceBudget = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
///
///   list
///   run <scenario> [-p key=value]... [--config file.json]
///       [--format tsv|json] [--output path] [--timing]
///   distance --group G [--metric word|max-entry|first-entry|quotient]
///       [--generators {..}] [--lattice <(..),..>] g h
///   member --group G --basis B --set S --depth d
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Metric literal for `group`: "word", "max-entry", "first-entry", or
/// "quotient" with a lattice "<(..),(..)>". Throws GroupError.
MetricPtr parse_metric(const GroupSpec& group, std::string_view name, std::string_view lattice);

/// Bornology literal: "minimal", "full", "balls(<metric>)", or
/// "generated(<set>; <set>; cap=N)". Throws GroupError.
BornologyBasis parse_bornology(const GroupSpec& group, std::string_view text);

}  // namespace coarsekit
