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

#include "ponplan/io.hpp"

#include <fstream>
#include <sstream>

namespace ponplan {

using nlohmann::json;

namespace {

const json &require(const json &j, const char *key, const std::string &where) {
  if (!j.is_object()) throw ScenarioError("'" + where + "' must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw ScenarioError("missing field '" + (where.empty() ? "" : where + ".") + key + "'");
  return *it;
}

template <class T>
T get(const json &j, const char *key, const std::string &where) {
  const json &v = require(j, key, where);
  try {
    return v.get<T>();
  } catch (const json::exception &) {
    throw ScenarioError("field '" + (where.empty() ? "" : where + ".") + key + "' has the wrong type");
  }
}

json points_to_json(const std::vector<Point2D> &pts) {
  json arr = json::array();
  for (const auto &p : pts) arr.push_back({{"x_km", p.x}, {"y_km", p.y}});
  return arr;
}

std::vector<Point2D> points_from_json(const json &root, const char *key) {
  const json &arr = require(root, key, "");
  if (!arr.is_array()) throw ScenarioError(std::string("field '") + key + "' must be an array");
  std::vector<Point2D> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    out.push_back({get<double>(arr[i], "x_km", where), get<double>(arr[i], "y_km", where)});
  }
  return out;
}

json matrix_to_json(const Matrix<std::uint8_t> &m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(static_cast<int>(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix<std::uint8_t> matrix_from_json(const json &root, const char *key, std::size_t rows, std::size_t cols) {
  const json &arr = require(root, key, "");
  if (!arr.is_array() || arr.size() != rows)
    throw ScenarioError(std::string("field '") + key + "' must have " + std::to_string(rows) + " rows");
  Matrix<std::uint8_t> m(rows, cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!arr[r].is_array() || arr[r].size() != cols)
      throw ScenarioError(std::string("field '") + key + "' row " + std::to_string(r) + " must have " +
                          std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!arr[r][c].is_number_integer()) throw ScenarioError(std::string("field '") + key + "' must hold 0/1 integers");
      const auto v = arr[r][c].get<long long>();
      if (v != 0 && v != 1) throw ScenarioError(std::string("field '") + key + "' must hold 0/1 integers");
      m(r, c) = static_cast<std::uint8_t>(v);
    }
  }
  return m;
}

} // namespace

json parameters_to_json(const Parameters &p) {
  // Keys are emitted in sorted order by nlohmann::json, which keeps the files stable.
  return json{
      {"alpha_cost_per_rack", p.alpha},
      {"xi_field_cost", p.xi_field},
      {"xi_rn_cost", p.xi_rn},
      {"xi_co_cost", p.xi_co},
      {"eta_cost_per_km", p.eta},
      {"l_max_km", p.l_max_km},
      {"bw_field_ul_bps", p.bw_field_ul},
      {"bw_field_dl_bps", p.bw_field_dl},
      {"bw_rn_bps", p.bw_rn},
      {"bw_co_bps", p.bw_co},
      {"n_lambda", p.n_lambda},
      {"beta_ul_bps", p.beta_ul},
      {"beta_dl_bps", p.beta_dl},
      {"sigma_ul_bits", p.sigma_ul},
      {"sigma_dl_bits", p.sigma_dl},
      {"mu_vms_per_s", p.mu},
      {"lambda_d_vms_per_s", p.lambda_d},
      {"capital_lambda_s", p.capital_lambda},
      {"d_qos_s", p.d_qos},
      {"k_max_racks", p.k_max},
      {"prop_delay_s_per_km", p.prop_delay},
  };
}

Parameters parameters_from_json(const json &j, const std::string &where) {
  Parameters p;
  p.alpha          = get<double>(j, "alpha_cost_per_rack", where);
  p.xi_field       = get<double>(j, "xi_field_cost", where);
  p.xi_rn          = get<double>(j, "xi_rn_cost", where);
  p.xi_co          = get<double>(j, "xi_co_cost", where);
  p.eta            = get<double>(j, "eta_cost_per_km", where);
  p.l_max_km       = get<double>(j, "l_max_km", where);
  p.bw_field_ul    = get<double>(j, "bw_field_ul_bps", where);
  p.bw_field_dl    = get<double>(j, "bw_field_dl_bps", where);
  p.bw_rn          = get<double>(j, "bw_rn_bps", where);
  p.bw_co          = get<double>(j, "bw_co_bps", where);
  p.n_lambda       = get<int>(j, "n_lambda", where);
  p.beta_ul        = get<double>(j, "beta_ul_bps", where);
  p.beta_dl        = get<double>(j, "beta_dl_bps", where);
  p.sigma_ul       = get<double>(j, "sigma_ul_bits", where);
  p.sigma_dl       = get<double>(j, "sigma_dl_bits", where);
  p.mu             = get<double>(j, "mu_vms_per_s", where);
  p.lambda_d       = get<double>(j, "lambda_d_vms_per_s", where);
  p.capital_lambda = get<double>(j, "capital_lambda_s", where);
  p.d_qos          = get<double>(j, "d_qos_s", where);
  p.k_max          = get<int>(j, "k_max_racks", where);
  p.prop_delay     = get<double>(j, "prop_delay_s_per_km", where);
  return p;
}

json scenario_to_json(const Scenario &s) {
  const auto &parts = s.parts();
  return json{
      {"version", kScenarioFormatVersion},
      {"label", std::string(to_string(parts.label))},
      {"seed", parts.seed},
      {"split_ratio", parts.split_ratio},
      {"side_km", parts.side_km},
      {"params", parameters_to_json(parts.params)},
      {"field_sites", points_to_json(parts.field_sites)},
      {"rn_sites", points_to_json(parts.rn_sites)},
      {"co_sites", points_to_json(parts.co_sites)},
      {"onu_sites", points_to_json(parts.onu_sites)},
      {"rn_adjacency", matrix_to_json(parts.rn_adjacency)},
      {"co_adjacency", matrix_to_json(parts.co_adjacency)},
  };
}

Scenario scenario_from_json(const json &j) {
  if (!j.is_object()) throw ScenarioError("scenario file must hold a JSON object");
  const int version = get<int>(j, "version", "");
  if (version != kScenarioFormatVersion)
    throw ScenarioError("unsupported scenario version " + std::to_string(version));

  ScenarioParts parts;
  try {
    parts.label = parse_label(get<std::string>(j, "label", ""));
  } catch (const std::invalid_argument &e) {
    throw ScenarioError(e.what());
  }
  parts.seed        = get<std::uint64_t>(j, "seed", "");
  parts.split_ratio = get<int>(j, "split_ratio", "");
  parts.side_km     = get<double>(j, "side_km", "");
  parts.params      = parameters_from_json(require(j, "params", ""), "params");
  parts.field_sites = points_from_json(j, "field_sites");
  parts.rn_sites    = points_from_json(j, "rn_sites");
  parts.co_sites    = points_from_json(j, "co_sites");
  parts.onu_sites   = points_from_json(j, "onu_sites");
  parts.rn_adjacency = matrix_from_json(j, "rn_adjacency", parts.rn_sites.size(), parts.onu_sites.size());
  parts.co_adjacency = matrix_from_json(j, "co_adjacency", parts.co_sites.size(), parts.onu_sites.size());
  return Scenario(std::move(parts));
}

std::string serialize_scenario(const Scenario &scenario) { return scenario_to_json(scenario).dump(2) + "\n"; }

void save_scenario(const Scenario &scenario, const std::filesystem::path &path) {
  write_text(path, serialize_scenario(scenario));
}

Scenario load_scenario(const std::filesystem::path &path) { return scenario_from_json(read_json(path)); }

std::string scenario_ref(const Scenario &s) {
  return std::string(to_string(s.label())) + "/1:" + std::to_string(s.split_ratio()) + "/seed=" +
         std::to_string(s.seed());
}

json solution_to_json(const SolveResult &result, const Scenario &scenario, bool include_timing) {
  json out;
  out["scenario_ref"] = scenario_ref(scenario);
  out["status"]       = std::string(to_string(result.status));
  out["nodes_explored"] = result.nodes_explored;
  if (include_timing) out["wall_time"] = result.wall_time_s;

  json open = json::array(), assignments = json::array(), latency = json::array();
  if (result.decision) {
    const auto &dec = *result.decision;
    for (Tier t : kTiers) {
      const auto &sites = dec.tier(t);
      for (std::size_t i = 0; i < sites.size(); ++i) {
        if (!sites[i].open) continue;
        open.push_back({{"tier", std::string(to_string(t))}, {"index", i}, {"racks", sites[i].racks}, {"phi", sites[i].phi}});
      }
    }
    for (std::size_t d = 0; d < dec.assign.size(); ++d) {
      if (!dec.assign[d]) continue;
      assignments.push_back(
          {{"onu", d}, {"tier", std::string(to_string(dec.assign[d]->tier))}, {"index", dec.assign[d]->index}});
      const auto lat = onu_latency(dec, d, scenario);
      latency.push_back({{"onu", d},
                         {"processing_s", lat.processing},
                         {"propagation_s", lat.propagation},
                         {"upload_s", lat.upload},
                         {"download_s", lat.download},
                         {"cloud_branch_s", lat.cloud_branch},
                         {"phi", lat.phi},
                         {"total_s", lat.total}});
    }
    out["cost"] = {{"rack", result.cost.rack_cost},
                   {"fiber", result.cost.fiber_cost},
                   {"infra", result.cost.infra_cost},
                   {"total", result.cost.total}};
  } else {
    out["cost"]          = nullptr;
    out["infeasibility"] = {{"cause", std::string(to_string(result.cause))}, {"detail", result.detail}};
  }
  out["open_sites"]      = std::move(open);
  out["assignments"]     = std::move(assignments);
  out["per_onu_latency"] = std::move(latency);
  return out;
}

SolutionFile solution_from_json(const json &j, const Scenario &scenario) {
  SolutionFile out;
  out.decision     = PlacementDecision::empty_for(scenario);
  out.scenario_ref = get<std::string>(j, "scenario_ref", "");
  try {
    out.status = parse_status(get<std::string>(j, "status", ""));
    const json &open = require(j, "open_sites", "");
    if (!open.is_array()) throw ScenarioError("field 'open_sites' must be an array");
    for (std::size_t k = 0; k < open.size(); ++k) {
      const std::string where = "open_sites[" + std::to_string(k) + "]";
      const Tier        t     = parse_tier(get<std::string>(open[k], "tier", where));
      const auto        index = get<std::size_t>(open[k], "index", where);
      if (index >= out.decision.tier(t).size()) throw ScenarioError(where + ".index is out of range");
      out.decision.at({t, index}) = {true, get<int>(open[k], "racks", where), get<double>(open[k], "phi", where)};
    }
    const json &assignments = require(j, "assignments", "");
    if (!assignments.is_array()) throw ScenarioError("field 'assignments' must be an array");
    for (std::size_t k = 0; k < assignments.size(); ++k) {
      const std::string where = "assignments[" + std::to_string(k) + "]";
      const auto        onu   = get<std::size_t>(assignments[k], "onu", where);
      if (onu >= out.decision.assign.size()) throw ScenarioError(where + ".onu is out of range");
      out.decision.assign[onu] =
          SiteRef{parse_tier(get<std::string>(assignments[k], "tier", where)), get<std::size_t>(assignments[k], "index", where)};
    }
  } catch (const std::invalid_argument &e) {
    throw ScenarioError(e.what());
  }
  return out;
}

json read_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ScenarioError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace ponplan
