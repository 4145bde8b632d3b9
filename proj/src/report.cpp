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


#include "ponplan/report.hpp"

#include "ponplan/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ponplan {

using nlohmann::json;

namespace {

const PlacementDecision &decision_of(const SolveResult &result, const char *what) {
  if (!result.decision) throw std::invalid_argument(std::string(what) + ": result has no placement");
  return *result.decision;
}

json optional_number(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json &j, const char *key) {
  const auto &v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string format_number(const std::optional<double> &v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", *v);
  return buf;
}

} // namespace

void EnergyParams::validate() const {
  auto check = [](double v, const std::string &name) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("energy parameter '" + name + "' must be non-negative");
  };
  check(p_olt, "p_olt_w");
  check(p_onu, "p_onu_w");
  check(p_rack, "p_rack_w");
  for (Tier t : kTiers) check(overhead[static_cast<std::size_t>(t)], "overhead_w." + std::string(to_string(t)));
}

json energy_params_to_json(const EnergyParams &e) {
  json overhead;
  for (Tier t : kTiers) overhead[std::string(to_string(t))] = e.overhead[static_cast<std::size_t>(t)];
  return json{{"p_olt_w", e.p_olt}, {"p_onu_w", e.p_onu}, {"p_rack_w", e.p_rack}, {"overhead_w", overhead}};
}

EnergyParams energy_params_from_json(const json &j) {
  EnergyParams e;
  try {
    e.p_olt  = j.at("p_olt_w").get<double>();
    e.p_onu  = j.at("p_onu_w").get<double>();
    e.p_rack = j.at("p_rack_w").get<double>();
    const auto &overhead = j.at("overhead_w");
    for (Tier t : kTiers) e.overhead[static_cast<std::size_t>(t)] = overhead.at(std::string(to_string(t))).get<double>();
  } catch (const json::exception &ex) {
    throw std::invalid_argument(std::string("energy parameters: ") + ex.what());
  }
  e.validate();
  return e;
}

EnergyParams load_energy_params(const std::filesystem::path &path) {
  try {
    return energy_params_from_json(read_json(path));
  } catch (const ScenarioError &ex) {
    throw std::invalid_argument(ex.what());
  }
}

CostBreakdown normalized_cost(const SolveResult &result, const Scenario &scenario) {
  if (scenario.num_onu() == 0) throw std::invalid_argument("normalized_cost: scenario has no ONUs");
  const double hundreds = static_cast<double>(scenario.num_onu() * kUsersPerOnu) / 100.0;
  CostBreakdown out;
  out.rack_cost  = result.cost.rack_cost / hundreds;
  out.fiber_cost = result.cost.fiber_cost / hundreds;
  out.infra_cost = result.cost.infra_cost / hundreds;
  out.total      = result.cost.total / hundreds;
  return out;
}

WorkloadShares workload_distribution(const SolveResult &result, const Scenario &scenario) {
  const auto &decision = decision_of(result, "workload_distribution");
  const auto  counts   = connected_counts(decision, scenario);
  const double rate    = scenario.params().lambda_d;

  double offered = 0.0;
  std::array<double, 3> local{};
  double cloud = 0.0;
  for (Tier t : kTiers) {
    const auto ti = static_cast<std::size_t>(t);
    for (std::size_t i = 0; i < counts[ti].size(); ++i) {
      const double lambda_z = static_cast<double>(counts[ti][i]) * rate;
      const double phi      = decision.tier(t)[i].phi;
      offered += lambda_z;
      local[ti] += phi * lambda_z;
      cloud += (1.0 - phi) * lambda_z;
    }
  }
  if (offered <= 0.0) throw std::invalid_argument("workload_distribution: no ONU is assigned");
  return {local[static_cast<std::size_t>(Tier::Field)] / offered, local[static_cast<std::size_t>(Tier::Rn)] / offered,
          local[static_cast<std::size_t>(Tier::Co)] / offered, cloud / offered};
}

double avg_racks(const SolveResult &result) {
  const auto &decision = decision_of(result, "avg_racks");
  double      racks    = 0.0;
  std::size_t open     = 0;
  for (const auto &tier : decision.sites)
    for (const auto &s : tier)
      if (s.open) {
        racks += s.racks;
        ++open;
      }
  if (open == 0) throw std::invalid_argument("avg_racks: no cloudlet is open");
  return racks / static_cast<double>(open);
}

double energy_increment(const SolveResult &result, const Scenario &scenario, const EnergyParams &energy) {
  const double base = static_cast<double>(scenario.num_co()) * energy.p_olt + static_cast<double>(scenario.num_onu()) * energy.p_onu;
  if (!(base > 0.0)) throw std::invalid_argument("energy_increment: base PON energy is zero");
  double added = 0.0;
  if (result.decision)
    for (Tier t : kTiers)
      for (const auto &s : result.decision->tier(t))
        if (s.open) added += s.racks * energy.p_rack + energy.overhead[static_cast<std::size_t>(t)];
  return 100.0 * added / base;
}

PlanReport make_report(const SolveResult &result, const Scenario &scenario, const std::optional<EnergyParams> &energy) {
  PlanReport r;
  r.label   = std::string(to_string(scenario.label()));
  r.split   = scenario.split_ratio();
  r.d_qos_s = scenario.params().d_qos;
  r.seed    = scenario.seed();
  r.status  = std::string(to_string(result.status));
  if (!result.decision) return r;

  const auto per100 = normalized_cost(result, scenario);
  r.cost_per_100    = per100.total;
  r.rack_per_100    = per100.rack_cost;
  r.fiber_per_100   = per100.fiber_cost;
  r.infra_per_100   = per100.infra_cost;
  r.shares          = workload_distribution(result, scenario);
  for (Tier t : kTiers)
    for (const auto &s : result.decision->tier(t))
      if (s.open) ++r.open_counts[static_cast<std::size_t>(t)];
  if (r.open_counts[0] + r.open_counts[1] + r.open_counts[2] > 0) r.avg_racks = avg_racks(result);
  if (energy) r.energy_pct = energy_increment(result, scenario, *energy);
  return r;
}

json report_to_json(const PlanReport &r) {
  json shares = nullptr;
  if (r.shares) shares = {{"field", r.shares->field}, {"rn", r.shares->rn}, {"co", r.shares->co}, {"cloud", r.shares->cloud}};
  json counts;
  for (Tier t : kTiers) counts[std::string(to_string(t))] = r.open_counts[static_cast<std::size_t>(t)];
  return json{{"label", r.label},
              {"split", r.split},
              {"d_qos_s", r.d_qos_s},
              {"seed", r.seed},
              {"status", r.status},
              {"cost_per_100_users",
               {{"total", optional_number(r.cost_per_100)},
                {"rack", optional_number(r.rack_per_100)},
                {"fiber", optional_number(r.fiber_per_100)},
                {"infra", optional_number(r.infra_per_100)}}},
              {"workload_share", shares},
              {"avg_racks_per_cloudlet", optional_number(r.avg_racks)},
              {"energy_increment_pct", optional_number(r.energy_pct)},
              {"open_cloudlets", counts}};
}

PlanReport report_from_json(const json &j) {
  PlanReport r;
  try {
    r.label   = j.at("label").get<std::string>();
    r.split   = j.at("split").get<int>();
    r.d_qos_s = j.at("d_qos_s").get<double>();
    r.seed    = j.at("seed").get<std::uint64_t>();
    r.status  = j.at("status").get<std::string>();
    const auto &c   = j.at("cost_per_100_users");
    r.cost_per_100  = number_or_null(c, "total");
    r.rack_per_100  = number_or_null(c, "rack");
    r.fiber_per_100 = number_or_null(c, "fiber");
    r.infra_per_100 = number_or_null(c, "infra");
    const auto &s   = j.at("workload_share");
    if (!s.is_null())
      r.shares = WorkloadShares{s.at("field").get<double>(), s.at("rn").get<double>(), s.at("co").get<double>(),
                                s.at("cloud").get<double>()};
    r.avg_racks  = number_or_null(j, "avg_racks_per_cloudlet");
    r.energy_pct = number_or_null(j, "energy_increment_pct");
    const auto &counts = j.at("open_cloudlets");
    for (Tier t : kTiers) r.open_counts[static_cast<std::size_t>(t)] = counts.at(std::string(to_string(t))).get<std::size_t>();
  } catch (const json::exception &ex) {
    throw std::invalid_argument(std::string("report: ") + ex.what());
  }
  return r;
}

std::string csv_row(const PlanReport &r) {
  std::string row = r.label + "," + std::to_string(r.split) + "," + format_number(r.d_qos_s) + ",";
  row += format_number(r.cost_per_100) + "," + format_number(r.rack_per_100) + "," + format_number(r.fiber_per_100) + "," +
         format_number(r.infra_per_100) + ",";
  if (r.shares)
    row += format_number(r.shares->field) + "," + format_number(r.shares->rn) + "," + format_number(r.shares->co) + "," +
           format_number(r.shares->cloud) + ",";
  else
    row += ",,,,";
  row += format_number(r.avg_racks) + "," + format_number(r.energy_pct) + "," + r.status;
  return row;
}

std::string reports_to_csv(const std::vector<PlanReport> &reports) {
  std::string out(kCsvHeader);
  out += "\n";
  for (const auto &r : reports) out += csv_row(r) + "\n";
  return out;
}

void emit(const PlanReport &report, ReportFormat format, const std::filesystem::path &path) {
  if (format == ReportFormat::Json)
    write_text(path, report_to_json(report).dump(2) + "\n");
  else
    write_text(path, reports_to_csv({report}));
}

void emit(const std::vector<PlanReport> &reports, ReportFormat format, const std::filesystem::path &path) {
  if (format == ReportFormat::Json) {
    json arr = json::array();
    for (const auto &r : reports) arr.push_back(report_to_json(r));
    write_text(path, arr.dump(2) + "\n");
  } else {
    write_text(path, reports_to_csv(reports));
  }
}

} // namespace ponplan
