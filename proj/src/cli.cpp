/*
 * Copyright (C) 2026 The ponplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "ponplan/cli.hpp"

#include "ponplan/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <ostream>
#include <tuple>

namespace ponplan::cli {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t              start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::filesystem::path default_out_dir() {
  if (const char *env = std::getenv(kOutDirEnv); env && *env) return env;
  return ".";
}

int split_from(int value) {
  if (value != 4 && value != 8 && value != 16) throw std::invalid_argument("split ratio must be 4, 8 or 16");
  return value;
}

struct Common {
  std::string mode        = "heuristic";
  std::uint64_t node_budget = 1'000'000;
  double        time_budget = 600.0;
  std::string   energy_path;

  SolverConfig config() const {
    SolverConfig c;
    c.mode          = parse_mode(mode);
    c.node_budget   = node_budget;
    c.time_budget_s = time_budget;
    return c;
  }

  std::optional<EnergyParams> energy() const {
    if (energy_path.empty()) return std::nullopt;
    return load_energy_params(energy_path);
  }
};

void add_solver_options(CLI::App &cmd, Common &c) {
  cmd.add_option("--mode", c.mode, "oracle, exact or heuristic")->capture_default_str();
  cmd.add_option("--node-budget", c.node_budget, "branch-and-bound node limit")->capture_default_str();
  cmd.add_option("--time-budget", c.time_budget, "wall-clock limit in seconds")->capture_default_str();
  cmd.add_option("--energy-params", c.energy_path, "EnergyParams JSON file");
}

std::string scenario_file_name(ScenarioLabel label, int split, std::uint64_t seed) {
  return "scenario_" + std::string(to_string(label)) + "_1-" + std::to_string(split) + "_seed" + std::to_string(seed) +
         ".json";
}

std::string describe(const Violation &v) {
  std::string s(to_string(v.id));
  if (v.site) s += " site=" + std::string(to_string(v.site->tier)) + "/" + std::to_string(v.site->index);
  if (v.onu) s += " onu=" + std::to_string(*v.onu);
  return s + ": " + v.detail;
}

struct SweepCell {
  ScenarioLabel label;
  int           split;
  double        d_qos;
  std::uint64_t seed;
};

} // namespace

double parse_duration(std::string_view text) {
  std::string s = trim(text);
  double      scale = 1.0;
  if (s.size() > 2 && s.ends_with("ms")) {
    scale = 1e-3;
    s.resize(s.size() - 2);
  } else if (s.size() > 2 && s.ends_with("us")) {
    scale = 1e-6;
    s.resize(s.size() - 2);
  } else if (s.size() > 1 && s.ends_with("s")) {
    s.resize(s.size() - 1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(value > 0.0))
    throw std::invalid_argument("invalid duration '" + std::string(text) + "'");
  return value * scale;
}

std::vector<double> parse_duration_list(std::string_view text) {
  std::vector<double> out;
  for (const auto &p : split_commas(text)) out.push_back(parse_duration(p));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  auto number = [&](const std::string &s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("invalid seed list '" + std::string(text) + "'");
    return v;
  };
  std::vector<std::uint64_t> out;
  for (const auto &p : split_commas(text)) {
    const auto dash = p.find('-');
    if (dash == std::string::npos) {
      out.push_back(number(p));
      continue;
    }
    const auto lo = number(trim(std::string_view(p).substr(0, dash)));
    const auto hi = number(trim(std::string_view(p).substr(dash + 1)));
    if (hi < lo) throw std::invalid_argument("invalid seed range '" + p + "'");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  }
  return out;
}

int exit_code(SolveStatus status) {
  switch (status) {
  case SolveStatus::Optimal:
  case SolveStatus::Feasible: return kExitOk;
  case SolveStatus::Infeasible: return kExitInfeasible;
  case SolveStatus::BudgetExhausted: return kExitBudget;
  }
  return kExitInvalidInput;
}

namespace {

int cmd_gen(const std::string &label_text, int split, std::uint64_t seed, const std::string &dqos, std::string out_path,
            std::ostream &out) {
  const auto label = parse_label(label_text);
  Scenario   s     = make_scenario(label, split_from(split), seed);
  if (!dqos.empty()) {
    auto p  = s.params();
    p.d_qos = parse_duration(dqos);
    s       = s.with_params(p);
  }
  if (out_path.empty()) out_path = (default_out_dir() / scenario_file_name(label, split, seed)).string();
  save_scenario(s, out_path);
  out << "wrote " << out_path << " (" << s.num_onu() << " ONUs, " << s.num_rn() << " RNs, " << s.num_field()
      << " field sites, " << s.num_co() << " COs)\n";
  return kExitOk;
}

struct PlanArgs {
  std::string   scenario_path;
  std::string   label;
  int           split = 0;
  std::uint64_t seed  = 0;
  bool          has_split = false, has_seed = false;
  std::string   dqos;
  std::string   out_dir;
  bool          record_timing = false;
  Common        common;
};

int cmd_plan(const PlanArgs &a, std::ostream &out) {
  const bool generate = !a.label.empty() || a.has_split || a.has_seed;
  if (generate == !a.scenario_path.empty())
    throw std::invalid_argument("give either --scenario or --label/--split/--seed, not both");
  Scenario scenario = generate ? [&] {
    if (a.label.empty() || !a.has_split || !a.has_seed)
      throw std::invalid_argument("generating a scenario needs --label, --split and --seed");
    return make_scenario(parse_label(a.label), split_from(a.split), a.seed);
  }()
                               : load_scenario(a.scenario_path);
  if (!a.dqos.empty()) {
    auto p  = scenario.params();
    p.d_qos = parse_duration(a.dqos);
    scenario = scenario.with_params(p);
  }
  const auto config = a.common.config();
  const auto energy = a.common.energy();

  const auto result = solve(scenario, config);
  const auto report = make_report(result, scenario, energy);

  const std::filesystem::path dir = a.out_dir.empty() ? default_out_dir() : std::filesystem::path(a.out_dir);
  write_text(dir / "solution.json", solution_to_json(result, scenario, a.record_timing).dump(2) + "\n");
  emit(report, ReportFormat::Json, dir / "report.json");

  out << scenario_ref(scenario) << " d_qos=" << scenario.params().d_qos << "s: " << to_string(result.status);
  if (result.decision) out << ", cost " << result.cost.total;
  else if (!result.detail.empty()) out << " (" << to_string(result.cause) << ": " << result.detail << ")";
  out << "\n";
  return exit_code(result.status);
}

int cmd_validate(const std::string &scenario_path, const std::string &solution_path, std::ostream &out,
                 std::ostream &err) {
  const Scenario scenario = load_scenario(scenario_path);
  const auto     solution = solution_from_json(read_json(solution_path), scenario);
  if (solution.scenario_ref != scenario_ref(scenario))
    err << "warning: solution was produced for " << solution.scenario_ref << ", validating against "
        << scenario_ref(scenario) << "\n";
  const auto violations = validate(solution.decision, scenario);
  for (const auto &v : violations) out << describe(v) << "\n";
  out << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << "\n";
  return violations.empty() ? kExitOk : kExitInfeasible;
}

struct SweepArgs {
  std::string labels = "urban,suburban,rural";
  std::string splits = "4,8,16";
  std::string dqos   = "1ms,10ms,100ms";
  std::string seeds  = "1";
  std::string out_dir;
  Common      common;
};

int cmd_sweep(const SweepArgs &a, std::ostream &out, std::ostream &err) {
  std::vector<ScenarioLabel> labels;
  for (const auto &l : split_commas(a.labels)) labels.push_back(parse_label(l));
  std::vector<int> splits;
  for (const auto &s : split_commas(a.splits)) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("invalid split '" + s + "'");
    splits.push_back(split_from(v));
  }
  const auto dqos  = parse_duration_list(a.dqos);
  const auto seeds = parse_seed_list(a.seeds);
  const auto config = a.common.config();
  const auto energy = a.common.energy();

  std::vector<SweepCell> cells;
  for (auto l : labels)
    for (int s : splits)
      for (double q : dqos)
        for (auto seed : seeds) cells.push_back({l, s, q, seed});
  std::sort(cells.begin(), cells.end(), [](const SweepCell &x, const SweepCell &y) {
    return std::tie(x.label, x.split, x.d_qos, x.seed) < std::tie(y.label, y.split, y.d_qos, y.seed);
  });

  // ONUs and field sites do not depend on the split ratio, so they are built once per (label, seed).
  std::vector<std::pair<ScenarioLabel, std::uint64_t>> base_keys;
  for (const auto &c : cells)
    if (std::find(base_keys.begin(), base_keys.end(), std::pair{c.label, c.seed}) == base_keys.end())
      base_keys.emplace_back(c.label, c.seed);
  std::vector<std::optional<ScenarioBase>> bases(base_keys.size());
  std::vector<std::string>                 errors(cells.size());
  std::string                              base_error;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < base_keys.size(); ++i) {
    try {
      bases[i] = make_base(base_keys[i].first, base_keys[i].second);
    } catch (const std::exception &e) {
#pragma omp critical
      base_error = e.what();
    }
  }
  if (!base_error.empty()) throw std::runtime_error(base_error);

  std::vector<PlanReport> reports(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto &c = cells[i];
    try {
      const auto  k    = std::find(base_keys.begin(), base_keys.end(), std::pair{c.label, c.seed}) - base_keys.begin();
      Scenario    s    = assemble_scenario(*bases[static_cast<std::size_t>(k)], c.split);
      auto        p    = s.params();
      p.d_qos          = c.d_qos;
      s                = s.with_params(p);
      reports[i]       = make_report(solve(s, config), s, energy);
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!errors[i].empty()) {
      err << "cell " << to_string(cells[i].label) << "/1:" << cells[i].split << "/" << cells[i].d_qos << "s/seed "
          << cells[i].seed << " failed: " << errors[i] << "\n";
      return kExitInvalidInput;
    }

  const std::filesystem::path dir  = a.out_dir.empty() ? default_out_dir() : std::filesystem::path(a.out_dir);
  const auto                  path = dir / "sweep.csv";
  emit(reports, ReportFormat::Csv, path);
  out << "wrote " << path.string() << " (" << reports.size() << " rows)\n";
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Cloudlet placement planning over TDM-PON access networks", "ponplan"};
  app.require_subcommand(1);

  auto       *gen = app.add_subcommand("gen", "generate a scenario file");
  std::string gen_label, gen_out, gen_dqos;
  int         gen_split = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--label", gen_label, "urban, suburban or rural")->required();
  gen->add_option("--split", gen_split, "PON split ratio 1:N, N in {4, 8, 16}")->required();
  gen->add_option("--seed", gen_seed, "random seed")->required();
  gen->add_option("--dqos", gen_dqos, "latency bound stored in the scenario, e.g. 10ms");
  gen->add_option("--out", gen_out, "output file");

  auto    *plan = app.add_subcommand("plan", "solve a scenario and write solution.json and report.json");
  PlanArgs pa;
  plan->add_option("--scenario", pa.scenario_path, "scenario file");
  plan->add_option("--label", pa.label, "generate: urban, suburban or rural");
  auto *split_opt = plan->add_option("--split", pa.split, "generate: split ratio");
  auto *seed_opt  = plan->add_option("--seed", pa.seed, "generate: random seed");
  plan->add_option("--dqos", pa.dqos, "latency bound, e.g. 10ms or 0.01s");
  plan->add_option("--out", pa.out_dir, "output directory");
  plan->add_flag("--record-timing", pa.record_timing, "write wall_time into the solution file");
  add_solver_options(*plan, pa.common);

  auto       *val = app.add_subcommand("validate", "check a solution against every constraint");
  std::string val_scenario, val_solution;
  val->add_option("--scenario", val_scenario, "scenario file")->required();
  val->add_option("--solution", val_solution, "solution file")->required();

  auto     *sweep = app.add_subcommand("sweep", "solve a grid of scenarios and write sweep.csv");
  SweepArgs sa;
  sweep->add_option("--label", sa.labels, "comma-separated labels")->capture_default_str();
  sweep->add_option("--split", sa.splits, "comma-separated split ratios")->capture_default_str();
  sweep->add_option("--dqos", sa.dqos, "comma-separated latency bounds")->capture_default_str();
  sweep->add_option("--seed", sa.seeds, "seeds, e.g. 1-5 or 1,2,3")->capture_default_str();
  sweep->add_option("--out", sa.out_dir, "output directory");
  add_solver_options(*sweep, sa.common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*gen) return cmd_gen(gen_label, gen_split, gen_seed, gen_dqos, gen_out, out);
    if (*plan) {
      pa.has_split = split_opt->count() > 0;
      pa.has_seed  = seed_opt->count() > 0;
      return cmd_plan(pa, out);
    }
    if (*val) return cmd_validate(val_scenario, val_solution, out, err);
    if (*sweep) return cmd_sweep(sa, out, err);
  } catch (const ScenarioError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInvalidInput;
}

} // namespace ponplan::cli
