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

// Exhaustive verification oracle. Shares nothing with the branch-and-bound
// path beyond the latency formulas: admissibility comes straight from the
// scenario and every rack count is tried for every site.

#include "solver_internal.hpp"

#include <algorithm>
#include <stdexcept>

namespace ponplan {

namespace {

constexpr std::size_t kMaxOnus  = 8;
constexpr std::size_t kMaxSites = 5;
constexpr int         kMaxRacks = 3;

struct SiteOption {
  double cost  = detail::kInf;
  int    racks = 0;
  double phi   = 0.0;
};

class Enumerator {
 public:
  Enumerator(const Scenario &scenario) : scenario_(scenario), sites_(scenario), p_(scenario.params()) {
    const std::size_t nd = scenario.num_onu();
    options_.resize(nd);
    for (std::size_t d = 0; d < nd; ++d)
      for (std::size_t f = 0; f < sites_.size(); ++f)
        if (admissible(scenario, sites_.ref(f), d)) options_[d].push_back(f);
    memo_.assign(sites_.size(), std::vector<SiteOption>(std::size_t{1} << nd));
    known_.assign(sites_.size(), std::vector<bool>(std::size_t{1} << nd, false));
    masks_.assign(sites_.size(), 0);
    current_.assign(nd, 0);
  }

  void run() { recurse(0); }

  std::uint64_t               leaves() const { return leaves_; }
  double                      best_cost() const { return best_cost_; }
  const std::vector<std::size_t> &best() const { return best_; }
  const SiteOption &option(std::size_t f, unsigned mask) { return evaluate(f, mask); }
  const detail::SiteIndex &sites() const { return sites_; }

 private:
  void recurse(std::size_t d) {
    if (d == current_.size()) {
      ++leaves_;
      double total = 0.0;
      for (std::size_t f = 0; f < sites_.size() && total < detail::kInf; ++f)
        if (masks_[f]) total += evaluate(f, masks_[f]).cost;
      if (total < best_cost_) {
        best_cost_ = total;
        best_      = current_;
      }
      return;
    }
    for (std::size_t f : options_[d]) {
      current_[d] = f;
      masks_[f] |= 1u << d;
      recurse(d + 1);
      masks_[f] &= ~(1u << d);
    }
  }

  /// Cheapest rack count for the ONU subset `mask` at site f, checking every member's latency.
  const SiteOption &evaluate(std::size_t f, unsigned mask) {
    if (known_[f][mask]) return memo_[f][mask];
    known_[f][mask] = true;
    SiteOption   &out  = memo_[f][mask];
    const SiteRef site = sites_.ref(f);

    std::size_t n = 0;
    double      worst = 0.0, fiber = 0.0;
    for (std::size_t d = 0; d < current_.size(); ++d) {
      if (!(mask & (1u << d))) continue;
      ++n;
      const double dist = onu_distance(scenario_, site, d);
      worst             = std::max(worst, dist);
      if (site.tier == Tier::Field) fiber += dist;
    }
    for (int m = 1; m <= p_.k_max; ++m) {
      const auto load = CloudletLoad::make(site.tier, site.index, m, n, p_);
      const auto phi  = best_phi(load, worst, p_).phi;
      bool       ok   = true;
      for (std::size_t d = 0; d < current_.size() && ok; ++d) {
        if (!(mask & (1u << d))) continue;
        try {
          ok = tier_latency(load, onu_distance(scenario_, site, d), phi, p_).total <= p_.d_qos;
        } catch (const UnstableQueueError &) {
          ok = false;
        }
      }
      const double cost = infra_cost(p_, site.tier) + p_.alpha * m + p_.eta * fiber;
      if (ok && cost < out.cost) out = {cost, m, phi};
    }
    return out;
  }

  const Scenario                        &scenario_;
  detail::SiteIndex                      sites_;
  const Parameters                      &p_;
  std::vector<std::vector<std::size_t>>  options_;
  std::vector<std::vector<SiteOption>>   memo_;
  std::vector<std::vector<bool>>         known_;
  std::vector<unsigned>                  masks_;
  std::vector<std::size_t>               current_;
  std::vector<std::size_t>               best_;
  double                                 best_cost_ = detail::kInf;
  std::uint64_t                          leaves_    = 0;
};

} // namespace

SolveResult brute_force(const Scenario &scenario, const SolverConfig &) {
  const std::size_t num_sites = scenario.num_field() + scenario.num_rn() + scenario.num_co();
  if (scenario.num_onu() > kMaxOnus || num_sites > kMaxSites || scenario.params().k_max > kMaxRacks)
    throw std::invalid_argument("brute_force: instance exceeds the guard (|D| <= 8, |A|+|B|+|C| <= 5, k_max <= 3)");

  detail::Stopwatch clock;
  Enumerator        e(scenario);
  e.run();

  SolveResult r;
  r.nodes_explored = e.leaves();
  if (!(e.best_cost() < detail::kInf)) {
    r        = detail::infeasible_result(InfeasibilityCause::LatencyBoundExceeded,
                                         "no assignment meets D_QoS at any rack count");
    r.nodes_explored = e.leaves();
    // Refine the cause when a single ONU is already hopeless.
    detail::CandidateTable table(scenario);
    if (table.hopeless_onu) r.cause = table.cause;
    r.wall_time_s = clock.seconds();
    return r;
  }

  PlacementDecision decision = PlacementDecision::empty_for(scenario);
  std::vector<unsigned> masks(e.sites().size(), 0);
  for (std::size_t d = 0; d < e.best().size(); ++d) {
    masks[e.best()[d]] |= 1u << d;
    decision.assign[d] = e.sites().ref(e.best()[d]);
  }
  for (std::size_t f = 0; f < masks.size(); ++f) {
    if (!masks[f]) continue;
    const auto &opt       = e.option(f, masks[f]);
    decision.at(e.sites().ref(f)) = {true, opt.racks, opt.phi};
  }
  r.decision    = std::move(decision);
  r.cost        = objective_cost(*r.decision, scenario);
  r.status      = SolveStatus::Optimal;
  r.wall_time_s = clock.seconds();
  return r;
}

} // namespace ponplan
