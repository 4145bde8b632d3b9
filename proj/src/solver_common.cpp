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

#include "solver_internal.hpp"

#include <algorithm>
#include <stdexcept>

namespace ponplan {

std::string_view to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::Oracle: return "oracle";
    case SolverMode::Exact: return "exact";
    case SolverMode::Heuristic: return "heuristic";
  }
  return "heuristic";
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "infeasible";
}

std::string_view to_string(InfeasibilityCause cause) {
  switch (cause) {
    case InfeasibilityCause::None: return "none";
    case InfeasibilityCause::NoStableQueue: return "no-stable-queue";
    case InfeasibilityCause::LatencyBoundExceeded: return "latency-bound-exceeded";
  }
  return "none";
}

SolverMode parse_mode(std::string_view text) {
  if (text == "oracle") return SolverMode::Oracle;
  if (text == "exact") return SolverMode::Exact;
  if (text == "heuristic") return SolverMode::Heuristic;
  throw std::invalid_argument("unknown solver mode '" + std::string(text) + "'");
}

SolveStatus parse_status(std::string_view text) {
  if (text == "optimal") return SolveStatus::Optimal;
  if (text == "feasible") return SolveStatus::Feasible;
  if (text == "infeasible") return SolveStatus::Infeasible;
  if (text == "budget-exhausted") return SolveStatus::BudgetExhausted;
  throw std::invalid_argument("unknown solve status '" + std::string(text) + "'");
}

std::optional<RackChoice> min_feasible_racks(std::size_t onus, Tier tier, double distance_km,
                                             const Parameters &params) {
  if (onus == 0) throw std::invalid_argument("min_feasible_racks: needs at least one ONU");
  for (int m = 1; m <= params.k_max; ++m) {
    const auto load   = CloudletLoad::make(tier, 0, m, onus, params);
    const auto choice = best_phi(load, distance_km, params);
    if (choice.total <= params.d_qos) return RackChoice{m, choice.phi, choice.total};
  }
  return std::nullopt;
}

InfeasibilityCause diagnose_rack_failure(std::size_t onus, Tier tier, double distance_km, const Parameters &params) {
  if (min_feasible_racks(onus, tier, distance_km, params)) return InfeasibilityCause::None;
  // With unlimited capacity the processing term vanishes and the best phi is an endpoint.
  const auto   tx    = transmission_time(tier, onus, params);
  const double fixed = propagation_delay(distance_km, params) + tx.upload + tx.download;
  const double floor = std::min(fixed, cloud_latency(params.capital_lambda, params.mu));
  return floor > params.d_qos ? InfeasibilityCause::LatencyBoundExceeded : InfeasibilityCause::NoStableQueue;
}

PlacementDecision decision_from_assignment(const Scenario &scenario, const std::vector<SiteRef> &assignment) {
  if (assignment.size() != scenario.num_onu())
    throw std::invalid_argument("decision_from_assignment: assignment size mismatch");
  const auto       &p        = scenario.params();
  PlacementDecision decision = PlacementDecision::empty_for(scenario);

  std::array<std::vector<double>, 3> worst;
  for (Tier t : kTiers) worst[static_cast<std::size_t>(t)].assign(site_count(scenario, t), 0.0);
  for (std::size_t d = 0; d < assignment.size(); ++d) {
    decision.assign[d] = assignment[d];
    auto &w            = worst[static_cast<std::size_t>(assignment[d].tier)][assignment[d].index];
    w                  = std::max(w, onu_distance(scenario, assignment[d], d));
  }
  const auto counts = connected_counts(decision, scenario);
  for (Tier t : kTiers) {
    auto &sites = decision.tier(t);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const auto n = counts[static_cast<std::size_t>(t)][i];
      if (n == 0) continue;
      const auto choice = min_feasible_racks(n, t, worst[static_cast<std::size_t>(t)][i], p);
      if (!choice)
        throw std::logic_error("decision_from_assignment: cloudlet " + std::string(to_string(t)) + "[" +
                               std::to_string(i) + "] cannot meet D_QoS");
      sites[i] = {true, choice->racks, choice->phi};
    }
  }
  return decision;
}

namespace detail {

int rack_search(std::size_t n, Tier tier, double dist, const Parameters &params, int start) {
  for (int m = std::max(start, 1); m <= params.k_max; ++m) {
    const auto load = CloudletLoad::make(tier, 0, m, n, params);
    if (best_phi(load, dist, params).total <= params.d_qos) return m;
  }
  return 0;
}

CandidateTable::CandidateTable(const Scenario &scenario) : sites(scenario) {
  const auto &p = scenario.params();
  per_onu.resize(scenario.num_onu());
  onus_of_site.resize(sites.size());
  for (std::size_t d = 0; d < scenario.num_onu(); ++d) {
    bool any_capacity_failure = false;
    for (Tier t : kTiers) {
      for (std::size_t i = 0; i < site_count(scenario, t); ++i) {
        const SiteRef s{t, i};
        if (!admissible(scenario, s, d)) continue;
        const double dist = onu_distance(scenario, s, d);
        if (rack_search(1, t, dist, p) == 0) {
          if (diagnose_rack_failure(1, t, dist, p) == InfeasibilityCause::NoStableQueue) any_capacity_failure = true;
          continue;
        }
        const std::size_t f = sites.flat(s);
        per_onu[d].push_back({s, f, dist, t == Tier::Field ? dist : 0.0});
        onus_of_site[f].push_back(d);
      }
    }
    if (per_onu[d].empty() && !hopeless_onu) {
      hopeless_onu = d;
      cause = any_capacity_failure ? InfeasibilityCause::NoStableQueue : InfeasibilityCause::LatencyBoundExceeded;
    }
  }
}

namespace {

class BMatching {
 public:
  BMatching(const CandidateTable &table, std::vector<std::size_t> capacity)
      : table_(table), capacity_(std::move(capacity)), members_(capacity_.size()), seen_(capacity_.size(), 0) {}

  bool augment(std::size_t d) {
    ++stamp_;
    return visit(d);
  }

 private:
  bool visit(std::size_t d) {
    for (const auto &c : table_.per_onu[d]) {
      if (seen_[c.flat] == stamp_) continue;
      seen_[c.flat] = stamp_;
      auto &m       = members_[c.flat];
      if (m.size() < capacity_[c.flat]) {
        m.push_back(d);
        return true;
      }
      for (auto &other : m) {
        if (visit(other)) {
          other = d;
          return true;
        }
      }
    }
    return false;
  }

  const CandidateTable                 &table_;
  std::vector<std::size_t>              capacity_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t>              seen_;
  std::size_t                           stamp_ = 0;
};

} // namespace

std::size_t servable_onus(const Scenario &scenario, const CandidateTable &table) {
  const auto             &p = scenario.params();
  std::vector<std::size_t> capacity(table.sites.size(), 0);
  for (std::size_t f = 0; f < table.sites.size(); ++f) {
    const SiteRef       site = table.sites.ref(f);
    std::vector<double> dist;
    for (std::size_t d : table.onus_of_site[f]) dist.push_back(onu_distance(scenario, site, d));
    std::sort(dist.begin(), dist.end());
    std::size_t n = 0;
    while (n < dist.size() && rack_search(n + 1, site.tier, dist[n], p) != 0) ++n;
    capacity[f] = n;
  }
  BMatching   matching(table, std::move(capacity));
  std::size_t served = 0;
  for (std::size_t d = 0; d < scenario.num_onu(); ++d)
    if (matching.augment(d)) ++served;
  return served;
}

SolveResult infeasible_result(InfeasibilityCause cause, std::string detail) {
  SolveResult r;
  r.status = SolveStatus::Infeasible;
  r.cause  = cause;
  r.detail = std::move(detail);
  return r;
}

SolveResult finish(const Scenario &scenario, const std::vector<SiteRef> &assignment, SolveStatus status) {
  SolveResult r;
  r.decision = decision_from_assignment(scenario, assignment);
  r.cost     = objective_cost(*r.decision, scenario);
  r.status   = status;
  return r;
}

} // namespace detail

SolveResult solve(const Scenario &scenario, const SolverConfig &config) {
  switch (config.mode) {
    case SolverMode::Oracle: return brute_force(scenario, config);
    case SolverMode::Exact: return branch_and_bound(scenario, config);
    case SolverMode::Heuristic: return greedy_heuristic(scenario, config);
  }
  throw std::invalid_argument("solve: unknown mode");
}

} // namespace ponplan
