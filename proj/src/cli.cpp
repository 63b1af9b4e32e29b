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

#include "coarsekit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "coarsekit/experiments.hpp"
#include "coarsekit/text.hpp"
#include "json.hpp"

namespace coarsekit {

MetricPtr parse_metric(const GroupSpec& group, std::string_view name, std::string_view lattice) {
  name = text::trim(name);
  if (name == "word") return std::make_shared<const WordMetric>(group);
  if (name == "max-entry" || name == "first-entry") {
    if (group.kind() != GroupKind::kHeisenberg) {
      throw GroupError(std::string(name) + " needs the Heisenberg group H");
    }
    if (name == "max-entry") return std::make_shared<const MaxEntryMetric>();
    return std::make_shared<const FirstEntryPseudometric>();
  }
  if (name == "quotient") {
    if (group.kind() != GroupKind::kFreeAbelian) {
      throw GroupError("the quotient metric lives on Z^n");
    }
    std::string_view l = text::trim(lattice);
    if (text::wrapped_in(l, '<', '>')) l = l.substr(1, l.size() - 2);
    std::vector<std::vector<Integer>> rows;
    for (auto part : text::split_top(l, ",")) {
      if (text::trim(part).empty()) continue;
      rows.push_back(parse_element(group, part).coords);
    }
    return std::make_shared<const QuotientWordMetric>(group.rank(), rows);
  }
  throw GroupError("unknown metric '" + std::string(name) + "'");
}

BornologyBasis parse_bornology(const GroupSpec& group, std::string_view src) {
  std::string_view s = text::trim(src);
  if (s == "minimal") return BornologyBasis::minimal(group);
  if (s == "full") return BornologyBasis::full(group);
  auto inner = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (s.substr(0, prefix.size()) != prefix) return std::nullopt;
    std::string_view rest = text::trim(s.substr(prefix.size()));
    if (!text::wrapped_in(rest, '(', ')')) return std::nullopt;
    return rest.substr(1, rest.size() - 2);
  };
  if (auto m = inner("balls")) return BornologyBasis::metric_balls(parse_metric(group, *m, ""));
  std::optional<std::string_view> gen = inner("generated");
  if (!gen && text::wrapped_in(s, '<', '>')) gen = s.substr(1, s.size() - 2);
  if (gen) {
    std::vector<SetDescriptor> seeds;
    std::size_t cap = 4;
    for (auto part : text::split_top(*gen, ";")) {
      part = text::trim(part);
      if (part.empty()) continue;
      if (part.substr(0, 4) == "cap=") {
        Integer c = text::parse_integer(part.substr(4));
        if (c < 1 || c > 64) throw GroupError("generated cap must be in 1..64");
        cap = static_cast<std::size_t>(c);
        continue;
      }
      seeds.push_back(parse_set_descriptor(group, part));
    }
    return BornologyBasis::generated(group, std::move(seeds), cap);
  }
  throw GroupError("unknown bornology '" + std::string(s) + "'");
}

namespace {

struct RunOptions {
  std::string scenario;
  std::vector<std::string> params;
  std::string config;
  std::string format;
  std::string output;
  bool timing = false;
};

int cmd_list(std::ostream& out) {
  for (const auto& s : scenario_registry()) {
    out << s.name << "\t" << s.summary << "\n";
    for (const auto& p : s.params) {
      out << "  " << p.name << "\tdefault " << p.default_value.str() << ", min "
          << p.minimum.str() << "\t" << p.help << "\n";
    }
  }
  return kExitOk;
}

Integer json_integer(const nlohmann::json& v, const std::string& key) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) return text::parse_integer(v.get<std::string>());
  throw ConfigError("parameter " + key + " must be an integer");
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  std::string scenario;
  ScenarioParams params;
  std::string format = "tsv";
  std::string output;
  bool timing = false;

  if (!opt.config.empty()) {
    std::ifstream in(opt.config);
    if (!in) throw ConfigError("cannot read config file " + opt.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file " + opt.config + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario" && value.is_string()) {
        scenario = value.get<std::string>();
      } else if (key == "parameters" && value.is_object()) {
        for (const auto& [pk, pv] : value.items()) params[pk] = json_integer(pv, pk);
      } else if (key == "format" && value.is_string()) {
        format = value.get<std::string>();
      } else if (key == "output" && value.is_string()) {
        output = value.get<std::string>();
      } else if (key == "timing" && value.is_boolean()) {
        timing = value.get<bool>();
      } else {
        throw ConfigError("unknown or malformed config key '" + key + "'");
      }
    }
  }
  if (!opt.scenario.empty()) scenario = opt.scenario;
  for (const auto& kv : opt.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("parameter '" + kv + "' is not key=value");
    params[kv.substr(0, eq)] = text::parse_integer(std::string_view(kv).substr(eq + 1));
  }
  if (!opt.format.empty()) format = opt.format;
  if (!opt.output.empty()) output = opt.output;
  timing = timing || opt.timing;
  if (scenario.empty()) throw ConfigError("no scenario given");
  if (format != "tsv" && format != "json") throw ConfigError("format must be tsv or json");
  if (!find_scenario(scenario)) throw ConfigError("unknown scenario '" + scenario + "'");

  const ScenarioReport report = run_scenario(scenario, params);
  const std::string text =
      format == "json" ? format_json(report, timing) : format_tsv(report, timing);
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + output);
    file << text;
  }
  if (!report.all_pass()) {
    for (const auto& a : report.assertions) {
      if (!a.pass) {
        err << "FAIL " << a.description << ": expected " << a.expected << ", observed "
            << a.observed << "\n";
      }
    }
    return kExitAssertionFailed;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coarse geometry toolkit for finitely generated groups", "coarsekit"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list scenarios and their parameters");

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "run a scenario and emit its report");
  run->add_option("scenario", run_opt.scenario, "scenario name");
  run->add_option("-p,--param", run_opt.params, "parameter override key=value");
  run->add_option("--config", run_opt.config, "JSON config file");
  run->add_option("--format", run_opt.format, "tsv or json");
  run->add_option("--output", run_opt.output, "write the report here");
  run->add_flag("--timing", run_opt.timing, "include wall time");

  std::string group_text, metric_name = "word", generators, lattice;
  auto* dist = app.add_subcommand("distance", "exact distance between two elements");
  dist->add_option("--group", group_text, "group, e.g. Z, Z^2, Z/5, H")->required();
  dist->add_option("--metric", metric_name, "word, max-entry, first-entry, quotient");
  dist->add_option("--generators", generators, "generating set literal {..}");
  dist->add_option("--lattice", lattice, "lattice for the quotient metric, e.g. <(5)>");
  std::vector<std::string> pair;
  dist->add_option("elements", pair, "the two elements g h")->required()->expected(2);

  std::string m_group, basis_text, set_text;
  std::size_t depth = 1;
  auto* mem = app.add_subcommand("member", "cover search for a finite set");
  mem->add_option("--group", m_group, "group")->required();
  mem->add_option("--basis", basis_text, "minimal, full, balls(metric), generated(..)")
      ->required();
  mem->add_option("--set", set_text, "set literal {..}, range(..), geometric(..)")->required();
  mem->add_option("--depth", depth, "cover depth")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (*list) return cmd_list(out);
    if (*run) return cmd_run(run_opt, out, err);
    if (*dist) {
      GroupSpec G = parse_group(group_text);
      if (!generators.empty()) {
        const ElementSet gens = parse_set_descriptor(G, generators).materialize(G);
        G = G.with_generators(std::vector<GroupElement>(gens.begin(), gens.end()));
      }
      const MetricPtr m = parse_metric(G, metric_name, lattice);
      out << m->distance(parse_element(G, pair[0]), parse_element(G, pair[1])).str() << "\n";
      return kExitOk;
    }
    if (*mem) {
      const GroupSpec G = parse_group(m_group);
      const BornologyBasis b = parse_bornology(G, basis_text);
      const ElementSet query = parse_set_descriptor(G, set_text).materialize(G);
      const MembershipVerdict v = member(b, query, depth);
      out << "status\t" << to_string(v.status) << "\n";
      std::string cover;
      for (std::size_t p : v.cover) cover += (cover.empty() ? "" : ",") + std::to_string(p);
      out << "cover\t" << cover << "\n";
      out << "depth\t" << v.depth_examined << "\n";
      out << "truncation\t" << v.truncation << "\n";
      return kExitOk;
    }
  } catch (const ResourceBudgetExceeded& e) {
    err << "resource budget exceeded: " << e.what() << "\n";
    return kExitResourceBudget;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const GroupError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace coarsekit
