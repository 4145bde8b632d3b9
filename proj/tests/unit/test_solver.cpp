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


#include "fixtures.hpp"
#include "ponplan/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace ponplan;
using ponplan::testing::random_tiny;
using ponplan::testing::two_onu_instance;

namespace {

SolverConfig mode(SolverMode m) {
  SolverConfig c;
  c.mode = m;
  return c;
}

bool has_decision(const SolveResult &r) {
  return r.status == SolveStatus::Optimal || r.status == SolveStatus::Feasible;
}

} // namespace

TEST_CASE("brute force on the two-ONU instance") {
  const auto s = two_onu_instance(0.1);
  const auto r = brute_force(s);
  REQUIRE(r.status == SolveStatus::Optimal);
  REQUIRE(r.decision);
  CHECK(r.cost.total == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.decision->at({Tier::Co, 0}).open);
  CHECK(r.decision->at({Tier::Co, 0}).racks == 1);
  CHECK(r.decision->at({Tier::Co, 0}).phi == 1.0);
  for (std::size_t d = 0; d < 2; ++d) {
    CHECK(*r.decision->assign[d] == SiteRef{Tier::Co, 0});
    const auto lat = onu_latency(*r.decision, d, s);
    CHECK(lat.total == doctest::Approx(5.2e-3).epsilon(0.01));
    // Hand evaluation: queue, shared upload and download, fiber through the RN.
    const double hand = 1.0 / (2500.0 - 2000.0) + 2 * 8e6 / 5e9 + 2 * 8e3 / 3e9 + 5e-6 * s.co_distance(0, d);
    CHECK(std::abs(lat.total - hand) <= 1e-12);
  }
  CHECK(validate(*r.decision, s).empty());
}

TEST_CASE("brute force reports infeasibility and handles the empty instance") {
  const auto r = brute_force(two_onu_instance(1e-6));
  CHECK(r.status == SolveStatus::Infeasible);
  CHECK_FALSE(r.decision);
  CHECK(r.cause != InfeasibilityCause::None);

  ScenarioParts p;
  p.params.k_max = 3;
  const Scenario empty(std::move(p));
  const auto     e = brute_force(empty);
  CHECK(e.status == SolveStatus::Optimal);
  REQUIRE(e.decision);
  CHECK(e.cost.total == 0.0);
  for (const auto &tier : e.decision->sites)
    for (const auto &site : tier) CHECK_FALSE(site.open);
}

TEST_CASE("brute force guard") {
  const auto big = make_scenario(ScenarioLabel::Rural, 16, 1);
  CHECK_THROWS_AS(brute_force(big), std::invalid_argument);
  ScenarioParts p  = two_onu_instance().parts();
  p.params.k_max   = 4;
  CHECK_THROWS_AS(brute_force(Scenario(p)), std::invalid_argument);
}

TEST_CASE("min feasible racks") {
  const Parameters p = [] {
    Parameters q;
    q.d_qos = 0.01;
    return q;
  }();
  SUBCASE("rn, four ONUs, 10 ms") {
    const auto r = min_feasible_racks(4, Tier::Rn, 0.0, p);
    REQUIRE(r);
    CHECK(r->racks == 2);
    CHECK(r->total == doctest::Approx(4.2e-3).epsilon(0.01));
    // Independent scan.
    int first = 0;
    for (int m = 1; m <= p.k_max && first == 0; ++m) {
      const auto load = CloudletLoad::make(Tier::Rn, 0, m, 4, p);
      if (best_phi(load, 0.0, p).total <= p.d_qos) first = m;
    }
    CHECK(first == 2);
  }
  SUBCASE("one second bound") {
    Parameters loose = p;
    loose.d_qos      = 1.0;
    for (std::size_t n : {1u, 4u, 16u, 40u}) {
      const auto r = min_feasible_racks(n, Tier::Co, 1.0, loose);
      REQUIRE(r);
      CHECK(r->racks == 1);
    }
  }
  SUBCASE("overloaded with a bound below the cloud branch") {
    const std::size_t n = static_cast<std::size_t>(p.k_max * p.mu / p.lambda_d) + 1; // lambda_z > k_max mu
    CHECK_FALSE(min_feasible_racks(n, Tier::Field, 1.0, p));
    CHECK(diagnose_rack_failure(n, Tier::Field, 1.0, p) == InfeasibilityCause::NoStableQueue);
  }
  SUBCASE("overloaded but the bound admits partial offload") {
    Parameters half = p;
    half.d_qos      = 0.5;
    const std::size_t n = static_cast<std::size_t>(p.k_max * p.mu / p.lambda_d) + 1;
    const auto        r = min_feasible_racks(n, Tier::Field, 1.0, half);
    REQUIRE(r);
    CHECK(r->phi < 1.0);
  }
  SUBCASE("field upload alone exceeds the bound") {
    Parameters tight = p;
    tight.d_qos      = 1e-3;
    CHECK_FALSE(min_feasible_racks(1, Tier::Field, 0.0, tight));
    CHECK(diagnose_rack_failure(1, Tier::Field, 0.0, tight) == InfeasibilityCause::LatencyBoundExceeded);
  }
  SUBCASE("monotone in the number of ONUs") {
    int prev = 0;
    for (std::size_t n = 1; n <= 20; ++n) {
      const auto r = min_feasible_racks(n, Tier::Co, 2.0, p);
      if (!r) break;
      CHECK(r->racks >= prev);
      prev = r->racks;
    }
  }
}

TEST_CASE("branch and bound matches brute force on random tiny instances") {
  int feasible = 0;
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const auto s  = random_tiny(seed);
    const auto bf = brute_force(s);
    const auto bb = branch_and_bound(s);
    CAPTURE(seed);
    REQUIRE(bb.status != SolveStatus::BudgetExhausted);
    CHECK(has_decision(bf) == has_decision(bb));
    if (!has_decision(bf)) continue;
    ++feasible;
    CHECK(bb.status == SolveStatus::Optimal);
    CHECK(std::abs(bb.cost.total - bf.cost.total) <= 1e-9 * std::max(1.0, std::abs(bf.cost.total)));
    CHECK(validate(*bb.decision, s).empty());
    CHECK(validate(*bf.decision, s).empty());
  }
  CHECK(feasible >= 20);
}

TEST_CASE("pruning changes the work but not the answer") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const auto   s = random_tiny(seed);
    SolverConfig with, without;
    with.warm_start = without.warm_start = false;
    without.use_bound                    = false;
    const auto a = branch_and_bound(s, with);
    const auto b = branch_and_bound(s, without);
    CAPTURE(seed);
    CHECK(a.status == b.status);
    if (has_decision(a)) CHECK(a.cost.total == doctest::Approx(b.cost.total).epsilon(1e-12));
    CHECK(a.nodes_explored <= b.nodes_explored);
  }
}

TEST_CASE("a forced assignment explores a single path") {
  // Every ONU has exactly one admissible cloudlet: no field sites, and only the CO is feasible.
  ScenarioParts p = two_onu_instance(0.1).parts();
  p.params.k_max  = 3;
  p.params.bw_rn  = 1e6; // RN uploads take seconds
  const Scenario s(p);
  SolverConfig   c;
  c.warm_start = false;
  const auto r = branch_and_bound(s, c);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.nodes_explored == s.num_onu());
}

TEST_CASE("heuristic is sound and never beats the optimum") {
  int gaps = 0;
  for (std::uint64_t seed = 300; seed < 360; ++seed) {
    const auto s  = random_tiny(seed);
    const auto bf = brute_force(s);
    const auto h  = greedy_heuristic(s);
    CAPTURE(seed);
    CHECK(has_decision(bf) == has_decision(h));
    if (!has_decision(h)) continue;
    CHECK(validate(*h.decision, s).empty());
    CHECK(h.cost.total >= bf.cost.total - 1e-9);
    if (h.cost.total > bf.cost.total + 1e-9) ++gaps;
  }
  MESSAGE("heuristic above optimum on " << gaps << " of 60 tiny instances");
}

TEST_CASE("heuristic builds a pure-CO plan when the CO suffices") {
  const auto s = two_onu_instance(0.1);
  const auto h = greedy_heuristic(s);
  REQUIRE(h.decision);
  CHECK(*h.decision->assign[0] == SiteRef{Tier::Co, 0});
  CHECK(*h.decision->assign[1] == SiteRef{Tier::Co, 0});
  CHECK(h.cost.total == doctest::Approx(1.0 * s.params().alpha + s.params().xi_co));
}

TEST_CASE("heuristic reports infeasibility below the propagation delay") {
  const auto s = two_onu_instance(1e-7);
  const auto h = greedy_heuristic(s);
  CHECK(h.status == SolveStatus::Infeasible);
  CHECK_FALSE(h.decision);
}

TEST_CASE("solvers are deterministic") {
  const auto s = make_scenario(ScenarioLabel::Rural, 8, 2);
  for (SolverMode m : {SolverMode::Heuristic, SolverMode::Exact}) {
    SolverConfig c = mode(m);
    c.node_budget  = 20000;
    const auto a   = solve(s, c);
    const auto b   = solve(s, c);
    CHECK(a.status == b.status);
    CHECK(a.decision == b.decision);
    CHECK(a.nodes_explored == b.nodes_explored);
  }
}

TEST_CASE("full-scale heuristic solutions validate") {
  for (auto label : {ScenarioLabel::Urban, ScenarioLabel::Rural}) {
    auto       s = make_scenario(label, 4, 42);
    for (double q : {1e-3, 1e-2, 1e-1}) {
      auto p  = s.params();
      p.d_qos = q;
      const auto sq = s.with_params(p);
      const auto r  = solve(sq, mode(SolverMode::Heuristic));
      CAPTURE(q);
      if (has_decision(r)) CHECK(validate(*r.decision, sq).empty());
      else CHECK(r.status == SolveStatus::Infeasible);
    }
  }
}

TEST_CASE("urban 1:4 seed 42 at 1 ms with megabit payloads") {
  auto s = make_scenario(ScenarioLabel::Urban, 4, 42);
  auto p = s.params();
  p.d_qos    = 1e-3;
  p.sigma_ul = 1e6;
  p.sigma_dl = 1e3;
  s          = s.with_params(p);
  const auto r = solve(s, mode(SolverMode::Exact));
  CHECK((r.status == SolveStatus::Optimal || r.status == SolveStatus::Feasible));
  REQUIRE(r.decision);
  CHECK(validate(*r.decision, s).empty());
}

TEST_CASE("budgets downgrade the status") {
  const auto   s = make_scenario(ScenarioLabel::Rural, 4, 3);
  SolverConfig c = mode(SolverMode::Exact);
  c.node_budget  = 10;
  const auto r   = solve(s, c);
  CHECK((r.status == SolveStatus::Feasible || r.status == SolveStatus::BudgetExhausted));
  c.warm_start = false;
  const auto cold = solve(s, c);
  CHECK(cold.nodes_explored <= 10);
  CHECK(cold.status != SolveStatus::Optimal);
}

TEST_CASE("string conversions") {
  for (auto m : {SolverMode::Oracle, SolverMode::Exact, SolverMode::Heuristic}) CHECK(parse_mode(to_string(m)) == m);
  for (auto st : {SolveStatus::Optimal, SolveStatus::Feasible, SolveStatus::Infeasible, SolveStatus::BudgetExhausted})
    CHECK(parse_status(to_string(st)) == st);
  CHECK_THROWS_AS(parse_mode("magic"), std::invalid_argument);
}

TEST_CASE("counting argument proves infeasibility without search") {
  // At 1 ms an RN cloudlet serves at most 9 ONUs and a CO at most 4, so 16-ONU trees cannot all be served.
  auto s = make_scenario(ScenarioLabel::Rural, 16, 1);
  auto p = s.params();
  p.d_qos    = 1e-3;
  p.sigma_ul = 1e6;
  p.sigma_dl = 1e3;
  s          = s.with_params(p);
  for (SolverMode m : {SolverMode::Exact, SolverMode::Heuristic}) {
    const auto r = solve(s, mode(m));
    CHECK(r.status == SolveStatus::Infeasible);
    CHECK(r.cause == InfeasibilityCause::LatencyBoundExceeded);
    CHECK(r.detail.find("at the same time") != std::string::npos);
  }
}

TEST_CASE("infeasibility verdicts agree with the oracle on crowded tiny instances") {
  // Many ONUs behind few sites, so capacity rather than a single hopeless ONU decides.
  int infeasible = 0;
  for (std::uint64_t seed = 500; seed < 600; ++seed) {
    ScenarioParts parts = random_tiny(seed).parts();
    if (parts.onu_sites.size() < 5) continue;
    parts.field_sites.clear();
    parts.params.sigma_ul = 1e6;
    parts.params.sigma_dl = 1e3;
    parts.params.d_qos    = 1.2e-3;
    const Scenario s(parts);
    const auto     bf = brute_force(s);
    const auto     bb = branch_and_bound(s);
    CAPTURE(seed);
    CHECK(has_decision(bf) == has_decision(bb));
    if (!has_decision(bf)) ++infeasible;
    else CHECK(bb.cost.total == doctest::Approx(bf.cost.total).epsilon(1e-12));
  }
  MESSAGE(infeasible << " crowded instances were infeasible");
  CHECK(infeasible > 0);
}
