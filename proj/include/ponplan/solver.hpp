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

#include "ponplan/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ponplan {

enum class SolverMode { Oracle, Exact, Heuristic };
enum class SolveStatus { Optimal, Feasible, Infeasible, BudgetExhausted };
enum class InfeasibilityCause { None, NoStableQueue, LatencyBoundExceeded };

std::string_view to_string(SolverMode mode);
std::string_view to_string(SolveStatus status);
std::string_view to_string(InfeasibilityCause cause);
SolverMode       parse_mode(std::string_view text);
SolveStatus      parse_status(std::string_view text);

struct SolverConfig {
  std::uint64_t node_budget   = 1'000'000;
  double        time_budget_s = 600.0;
  SolverMode    mode          = SolverMode::Heuristic;
  /// Prune branch-and-bound nodes whose lower bound reaches the incumbent.
  bool use_bound = true;
  /// Exact mode: start branch-and-bound from the heuristic's solution.
  bool warm_start = true;
};

struct SolveResult {
  std::optional<PlacementDecision> decision; ///< present iff status is Optimal or Feasible
  CostBreakdown                    cost;
  SolveStatus                      status         = SolveStatus::Infeasible;
  std::uint64_t                    nodes_explored = 0;
  double                           wall_time_s    = 0.0;
  InfeasibilityCause               cause          = InfeasibilityCause::None;
  std::string                      detail;
};

struct RackChoice {
  int    racks = 0;
  double phi   = 0.0;
  double total = 0.0; ///< latency at the given distance with this phi
};

/// Smallest rack count in 1..k_max whose best phi meets D_QoS for an ONU at distance_km.
std::optional<RackChoice> min_feasible_racks(std::size_t onus, Tier tier, double distance_km, const Parameters &params);

/// Why even k_max racks cannot serve the load: too little capacity, or the bound is
/// unreachable with unlimited capacity.
InfeasibilityCause diagnose_rack_failure(std::size_t onus, Tier tier, double distance_km, const Parameters &params);

/// Exhaustive enumeration; only for |D| <= 8, |A|+|B|+|C| <= 5, k_max <= 3.
SolveResult brute_force(const Scenario &scenario, const SolverConfig &config = {});

/// Depth-first branch-and-bound over ONU -> cloudlet assignments.
SolveResult branch_and_bound(const Scenario &scenario, const SolverConfig &config = {});

/// Greedy CO-first construction followed by first-improvement local search.
SolveResult greedy_heuristic(const Scenario &scenario, const SolverConfig &config = {});

/// Dispatch on config.mode.
SolveResult solve(const Scenario &scenario, const SolverConfig &config);

/// Open flags, minimal racks and best phi for a complete assignment. Throws if some cloudlet cannot meet D_QoS.
PlacementDecision decision_from_assignment(const Scenario &scenario, const std::vector<SiteRef> &assignment);

} // namespace ponplan
