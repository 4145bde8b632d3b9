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


#pragma once

#include "ponplan/solver.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ponplan {

/// Power draw of the network elements, watts. No values ship with the library.
struct EnergyParams {
  double                p_olt = 0.0;
  double                p_onu = 0.0;
  double                p_rack = 0.0;
  std::array<double, 3> overhead{}; ///< per open cloudlet, indexed by Tier

  /// Throws std::invalid_argument if any value is negative or not finite.
  void validate() const;

  friend bool operator==(const EnergyParams &, const EnergyParams &) = default;
};

nlohmann::json energy_params_to_json(const EnergyParams &energy);
EnergyParams   energy_params_from_json(const nlohmann::json &j);
EnergyParams   load_energy_params(const std::filesystem::path &path);

struct WorkloadShares {
  double field = 0.0;
  double rn    = 0.0;
  double co    = 0.0;
  double cloud = 0.0;

  friend bool operator==(const WorkloadShares &, const WorkloadShares &) = default;
};

struct PlanReport {
  std::string   label;
  int           split  = 0;
  double        d_qos_s = 0.0;
  std::uint64_t seed   = 0;
  std::string   status;

  // Per 100 users; empty when there is no placement.
  std::optional<double> cost_per_100;
  std::optional<double> rack_per_100;
  std::optional<double> fiber_per_100;
  std::optional<double> infra_per_100;

  std::optional<WorkloadShares> shares;
  std::optional<double>         avg_racks;
  std::optional<double>         energy_pct;
  std::array<std::size_t, 3>    open_counts{}; ///< indexed by Tier

  friend bool operator==(const PlanReport &, const PlanReport &) = default;
};

/// Total cost divided by hundreds of users, 1000 users per ONU. Throws on zero ONUs.
CostBreakdown normalized_cost(const SolveResult &result, const Scenario &scenario);

/// Fractions of the offered task rate handled per tier and by the remote cloud. Throws without a decision.
WorkloadShares workload_distribution(const SolveResult &result, const Scenario &scenario);

/// Mean rack count over open cloudlets. Throws if none is open.
double avg_racks(const SolveResult &result);

/// Cloudlet energy as a percentage of the OLT and ONU energy. Throws if that base is zero.
double energy_increment(const SolveResult &result, const Scenario &scenario, const EnergyParams &energy);

PlanReport make_report(const SolveResult &result, const Scenario &scenario, const std::optional<EnergyParams> &energy);

inline constexpr std::string_view kCsvHeader =
    "label,split,d_qos_s,cost_per_100,rack_cost,fiber_cost,infra_cost,share_field,share_rn,share_co,share_cloud,"
    "avg_racks,energy_pct,status";

nlohmann::json report_to_json(const PlanReport &report);
PlanReport     report_from_json(const nlohmann::json &j);

/// Header line plus one row per report, in the given order.
std::string reports_to_csv(const std::vector<PlanReport> &reports);
std::string csv_row(const PlanReport &report);

enum class ReportFormat { Json, Csv };

/// Json writes one object; Csv writes the header and one row.
void emit(const PlanReport &report, ReportFormat format, const std::filesystem::path &path);
/// Json writes an array; Csv writes the header and one row per report.
void emit(const std::vector<PlanReport> &reports, ReportFormat format, const std::filesystem::path &path);

} // namespace ponplan
