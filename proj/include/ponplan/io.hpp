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

#include "ponplan/scenario.hpp"
#include "ponplan/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace ponplan {

inline constexpr int kScenarioFormatVersion = 1;

// Scenario files: versioned JSON, units spelled out in the field names.
// Distances are not stored; they are derived when the scenario is rebuilt.

nlohmann::json parameters_to_json(const Parameters &params);
Parameters     parameters_from_json(const nlohmann::json &j, const std::string &where = "params");

nlohmann::json scenario_to_json(const Scenario &scenario);
Scenario       scenario_from_json(const nlohmann::json &j);

std::string serialize_scenario(const Scenario &scenario);
void        save_scenario(const Scenario &scenario, const std::filesystem::path &path);
/// Throws ScenarioError on malformed JSON, missing fields or broken invariants.
Scenario    load_scenario(const std::filesystem::path &path);

/// Short human-readable identity of a scenario, e.g. "urban/1:4/seed=42".
std::string scenario_ref(const Scenario &scenario);

// Solution files.

struct SolutionFile {
  PlacementDecision decision;
  SolveStatus       status = SolveStatus::Feasible;
  std::string       scenario_ref;
};

/// wall_time is written only when include_timing is set, so default output is reproducible.
nlohmann::json solution_to_json(const SolveResult &result, const Scenario &scenario, bool include_timing = false);
/// Rebuilds the decision; sites not listed under open_sites are closed.
SolutionFile   solution_from_json(const nlohmann::json &j, const Scenario &scenario);

nlohmann::json read_json(const std::filesystem::path &path);
void           write_text(const std::filesystem::path &path, const std::string &text);

} // namespace ponplan
