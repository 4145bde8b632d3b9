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

#include <chrono>
#include <limits>
#include <vector>

namespace ponplan::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Flat numbering of all candidate sites: COs, then RNs, then field sites.
class SiteIndex {
 public:
  explicit SiteIndex(const Scenario &scenario)
      : offsets_{0, scenario.num_co(), scenario.num_co() + scenario.num_rn()},
        size_(scenario.num_co() + scenario.num_rn() + scenario.num_field()) {}

  std::size_t size() const { return size_; }
  std::size_t flat(SiteRef s) const { return offsets_[static_cast<std::size_t>(s.tier)] + s.index; }
  SiteRef     ref(std::size_t flat) const {
    if (flat >= offsets_[2]) return {Tier::Field, flat - offsets_[2]};
    if (flat >= offsets_[1]) return {Tier::Rn, flat - offsets_[1]};
    return {Tier::Co, flat};
  }

 private:
  std::size_t offsets_[3];
  std::size_t size_;
};

struct Candidate {
  SiteRef     site;
  std::size_t flat        = 0;
  double      distance_km = 0.0;
  double      fiber_km    = 0.0; ///< new fiber paid for this connection (field tier only)
};

/// Per-ONU connection options that can be served on their own, in tie-break order.
struct CandidateTable {
  explicit CandidateTable(const Scenario &scenario);

  SiteIndex                             sites;
  std::vector<std::vector<Candidate>>   per_onu;
  std::vector<std::vector<std::size_t>> onus_of_site; ///< ascending ONU indices
  /// First ONU without any option, and why.
  std::optional<std::size_t> hopeless_onu;
  InfeasibilityCause         cause = InfeasibilityCause::None;
};

/// Smallest m in [start, k_max] meeting D_QoS for n ONUs with worst distance dist; 0 if none.
int rack_search(std::size_t n, Tier tier, double dist, const Parameters &params, int start = 1);

inline double site_cost(const Parameters &p, Tier tier, int racks, double fiber_km) {
  return infra_cost(p, tier) + p.alpha * racks + p.eta * fiber_km;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/*
 * Upper bound on how many ONUs can be served at once. Each site may take at
 * most as many ONUs as fit when they are its nearest candidates, and a
 * bipartite b-matching of ONUs to sites under those capacities is maximized.
 * A result below |D| proves the instance infeasible.
 */
std::size_t servable_onus(const Scenario &scenario, const CandidateTable &table);

SolveResult infeasible_result(InfeasibilityCause cause, std::string detail);

/// Fill decision, cost and status from a complete assignment.
SolveResult finish(const Scenario &scenario, const std::vector<SiteRef> &assignment, SolveStatus status);

/// Local search on a feasible assignment; defined with the heuristic.
std::vector<SiteRef> improve(const Scenario &scenario, const CandidateTable &table, std::vector<SiteRef> assignment);

/// Branch-and-bound with an optional starting incumbent.
SolveResult branch_and_bound_from(const Scenario &scenario, const SolverConfig &config, const CandidateTable &table,
                                  const std::vector<SiteRef> *incumbent);

} // namespace ponplan::detail
