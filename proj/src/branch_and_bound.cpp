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

namespace ponplan {

namespace detail {

namespace {

struct SiteState {
  std::size_t n        = 0;
  double      worst_km = 0.0;
  double      fiber_km = 0.0;
  int         racks    = 0;
};

/*
 * Depth-first search over ONUs in index order, each ONU trying its candidates
 * in tie-break order (CO, RN, field, then site index).
 *
 * Racks and phi are not branched on: for a fixed assignment the cheapest rack
 * count of each cloudlet is the smallest feasible one, and that count only
 * grows as ONUs are added, so the committed cost of a partial assignment is a
 * valid lower bound on every completion.
 */
class Search {
 public:
  Search(const Scenario &scenario, const SolverConfig &config, const CandidateTable &table)
      : scenario_(scenario), p_(scenario.params()), config_(config), table_(table),
        state_(table.sites.size()), current_(scenario.num_onu()) {
    // Fiber any completion must still pay: zero if an RN/CO option exists.
    const std::size_t nd = scenario.num_onu();
    suffix_fiber_.assign(nd + 1, 0.0);
    for (std::size_t d = nd; d-- > 0;) {
      double cheapest = kInf;
      for (const auto &c : table.per_onu[d]) cheapest = std::min(cheapest, c.fiber_km);
      suffix_fiber_[d] = suffix_fiber_[d + 1] + (cheapest < kInf ? p_.eta * cheapest : 0.0);
    }
  }

  void set_incumbent(const std::vector<SiteRef> &assignment, double cost) {
    best_      = assignment;
    best_cost_ = cost;
  }

  void run() { dfs(0); }

  bool                         stopped() const { return stopped_; }
  std::uint64_t                nodes() const { return nodes_; }
  const std::vector<SiteRef>  &best() const { return best_; }
  double                       best_cost() const { return best_cost_; }

 private:
  double cost_of(Tier tier, const SiteState &s) const {
    return s.n == 0 ? 0.0 : site_cost(p_, tier, s.racks, s.fiber_km);
  }

  bool budget_left() {
    if (nodes_ >= config_.node_budget) return false;
    if ((nodes_ & 1023u) == 0 && clock_.seconds() >= config_.time_budget_s) return false;
    return true;
  }

  /// Whether ONU j could still join site f given the current loads.
  bool fits(const Candidate &c) const {
    const SiteState &s = state_[c.flat];
    return rack_search(s.n + 1, c.site.tier, std::max(s.worst_km, c.distance_km), p_, std::max(s.racks, 1)) != 0;
  }

  /// Every later ONU that could use site f still has somewhere to go.
  bool forward_check(std::size_t f, std::size_t after) const {
    for (std::size_t j : table_.onus_of_site[f]) {
      if (j <= after) continue;
      bool any = false;
      for (const auto &c : table_.per_onu[j]) {
        if (fits(c)) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  void dfs(std::size_t d) {
    if (stopped_) return;
    if (d == current_.size()) {
      if (committed_ < best_cost_ - kCostTolerance) {
        best_cost_ = committed_;
        best_      = current_;
      }
      return;
    }
    for (const auto &c : table_.per_onu[d]) {
      if (!budget_left()) {
        stopped_ = true;
        return;
      }
      ++nodes_;
      SiteState      &s   = state_[c.flat];
      const SiteState old = s;
      SiteState       next{s.n + 1, std::max(s.worst_km, c.distance_km), s.fiber_km + c.fiber_km, 0};
      next.racks = rack_search(next.n, c.site.tier, next.worst_km, p_, std::max(old.racks, 1));
      if (next.racks == 0) continue;

      const double delta = cost_of(c.site.tier, next) - cost_of(c.site.tier, old);
      if (config_.use_bound && committed_ + delta + suffix_fiber_[d + 1] >= best_cost_ - kCostTolerance) continue;

      s = next;
      committed_ += delta;
      if (forward_check(c.flat, d)) {
        current_[d] = c.site;
        dfs(d + 1);
      }
      committed_ -= delta;
      s = old;
      if (stopped_) return;
    }
  }

  const Scenario        &scenario_;
  const Parameters      &p_;
  const SolverConfig    &config_;
  const CandidateTable  &table_;
  std::vector<SiteState> state_;
  std::vector<SiteRef>   current_;
  std::vector<double>    suffix_fiber_;
  std::vector<SiteRef>   best_;
  double                 best_cost_ = kInf;
  double                 committed_ = 0.0;
  std::uint64_t          nodes_     = 0;
  bool                   stopped_   = false;
  Stopwatch              clock_;
};

} // namespace

SolveResult branch_and_bound_from(const Scenario &scenario, const SolverConfig &config, const CandidateTable &table,
                                  const std::vector<SiteRef> *incumbent) {
  Stopwatch clock;
  if (table.hopeless_onu) {
    auto r = infeasible_result(table.cause, "ONU " + std::to_string(*table.hopeless_onu) +
                                                " cannot meet D_QoS at any admissible cloudlet with k_max racks");
    r.wall_time_s = clock.seconds();
    return r;
  }

  if (const auto served = servable_onus(scenario, table); served < scenario.num_onu()) {
    auto r = infeasible_result(InfeasibilityCause::LatencyBoundExceeded,
                               "at most " + std::to_string(served) + " of " + std::to_string(scenario.num_onu()) +
                                   " ONUs can meet D_QoS at the same time");
    r.wall_time_s = clock.seconds();
    return r;
  }

  Search search(scenario, config, table);
  if (incumbent) search.set_incumbent(*incumbent, objective_cost(decision_from_assignment(scenario, *incumbent), scenario).total);
  search.run();

  SolveResult r;
  const bool  found = search.best_cost() < kInf;
  if (found) {
    r = finish(scenario, search.best(), search.stopped() ? SolveStatus::Feasible : SolveStatus::Optimal);
  } else if (search.stopped()) {
    r.status = SolveStatus::BudgetExhausted;
    r.detail = "search budget exhausted before any feasible placement was found";
  } else {
    r = infeasible_result(InfeasibilityCause::LatencyBoundExceeded,
                          "no joint assignment of ONUs to cloudlets meets D_QoS");
  }
  r.nodes_explored = search.nodes();
  r.wall_time_s    = clock.seconds();
  return r;
}

} // namespace detail

SolveResult branch_and_bound(const Scenario &scenario, const SolverConfig &config) {
  detail::Stopwatch      clock;
  detail::CandidateTable table(scenario);

  std::vector<SiteRef> start;
  if (config.warm_start && !table.hopeless_onu) {
    SolverConfig quick = config;
    quick.warm_start   = false;
    auto warm          = greedy_heuristic(scenario, quick);
    if (warm.decision) {
      start.reserve(scenario.num_onu());
      for (const auto &a : warm.decision->assign) start.push_back(*a);
    }
  }
  auto r        = detail::branch_and_bound_from(scenario, config, table, start.empty() && scenario.num_onu() > 0 ? nullptr : &start);
  r.wall_time_s = clock.seconds();
  return r;
}

} // namespace ponplan
