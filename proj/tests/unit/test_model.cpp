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
#include "ponplan/model.hpp"

#include <doctest.h>

#include <set>

using namespace ponplan;
using ponplan::testing::validator_instance;

namespace {

std::set<ConstraintId> ids(const std::vector<Violation> &vs) {
  std::set<ConstraintId> out;
  for (const auto &v : vs) out.insert(v.id);
  return out;
}

/// Both ONUs on CO0 with one rack: feasible at 0.1 s.
PlacementDecision baseline(const Scenario &s) {
  auto d                  = PlacementDecision::empty_for(s);
  d.at({Tier::Co, 0})     = {true, 1, 1.0};
  d.assign                = {SiteRef{Tier::Co, 0}, SiteRef{Tier::Co, 0}};
  return d;
}

Scenario field_cost_instance() {
  ScenarioParts p;
  p.params.eta  = 50.0;
  p.co_sites    = {{0.0, 0.0}};
  p.rn_sites    = {{0.5, 0.5}};
  p.field_sites = {{2.0, 2.0}};
  p.onu_sites   = {{3.0, 2.0}, {2.0, 4.0}};
  ponplan::testing::wire(p, {0, 0}, {0});
  return Scenario(std::move(p));
}

} // namespace

TEST_CASE("objective cost examples") {
  const auto s = validator_instance();
  SUBCASE("one CO cloudlet with three racks") {
    auto d              = baseline(s);
    d.at({Tier::Co, 0}) = {true, 3, 1.0};
    const auto c        = objective_cost(d, s);
    CHECK(c.rack_cost == 3.0);
    CHECK(c.infra_cost == 2.0);
    CHECK(c.fiber_cost == 0.0);
    CHECK(c.total == 5.0);
  }
  SUBCASE("field cloudlet with fiber") {
    const auto fs        = field_cost_instance();
    auto       d         = PlacementDecision::empty_for(fs);
    d.at({Tier::Field, 0}) = {true, 2, 1.0};
    d.assign             = {SiteRef{Tier::Field, 0}, SiteRef{Tier::Field, 0}};
    const auto c         = objective_cost(d, fs);
    CHECK(c.total == doctest::Approx(156.0).epsilon(1e-12));
    CHECK(c.fiber_cost == doctest::Approx(150.0).epsilon(1e-12));
    CHECK(c.rack_cost + c.fiber_cost + c.infra_cost == doctest::Approx(c.total));
  }
  SUBCASE("empty decision") {
    ScenarioParts p;
    const Scenario empty(std::move(p));
    CHECK(objective_cost(PlacementDecision::empty_for(empty), empty).total == 0.0);
  }
}

TEST_CASE("objective cost scales with the prices and ignores site order") {
  const auto s = field_cost_instance();
  auto       d = PlacementDecision::empty_for(s);
  d.at({Tier::Field, 0}) = {true, 2, 1.0};
  d.at({Tier::Co, 0})    = {true, 1, 1.0};
  d.assign               = {SiteRef{Tier::Field, 0}, SiteRef{Tier::Co, 0}};
  const auto base        = objective_cost(d, s);

  auto p = s.params();
  p.alpha *= 3.0;
  p.eta *= 3.0;
  p.xi_field *= 3.0;
  p.xi_rn *= 3.0;
  p.xi_co *= 3.0;
  const auto scaled = s.with_params(p);
  CHECK(objective_cost(d, scaled).total == doctest::Approx(3.0 * base.total).epsilon(1e-12));
  CHECK(validate(d, scaled).size() == validate(d, s).size());

  // Swap two field sites and the decision's entries with them.
  ScenarioParts parts = s.parts();
  parts.field_sites.insert(parts.field_sites.begin(), Point2D{4.0, 4.0});
  const Scenario shifted(parts);
  auto           e = PlacementDecision::empty_for(shifted);
  e.at({Tier::Field, 1}) = {true, 2, 1.0};
  e.at({Tier::Co, 0})    = {true, 1, 1.0};
  e.assign               = {SiteRef{Tier::Field, 1}, SiteRef{Tier::Co, 0}};
  CHECK(objective_cost(e, shifted).total == doctest::Approx(base.total).epsilon(1e-12));
}

TEST_CASE("linearized product") {
  for (int x : {0, 1})
    for (int n : {0, 1}) {
      const auto r = linearized_product(x, n);
      CHECK(r.value == x * n);
      REQUIRE(r.admissible.size() == 1);
      CHECK(r.admissible[0] == x * n);
      // Independent enumeration of the three inequalities.
      int count = 0;
      for (int xbar : {0, 1})
        if (xbar <= n && xbar <= x && xbar >= n + x - 1) ++count;
      CHECK(count == 1);
    }
  CHECK_THROWS_AS(linearized_product(2, 0), std::invalid_argument);
}

TEST_CASE("aggregate loads") {
  const auto s = validator_instance();
  auto       d = PlacementDecision::empty_for(s);
  d.at({Tier::Rn, 0}) = {true, 2, 1.0};
  d.assign            = {SiteRef{Tier::Rn, 0}, SiteRef{Tier::Rn, 0}};
  const auto loads    = aggregate_loads(d, s);
  REQUIRE(loads.size() == 1);
  CHECK(loads[0].lambda_z == 2000.0);
  CHECK(loads[0].mu_z == 5000.0);
  CHECK(loads[0].connected_onus == 2);

  // Four ONUs on one RN.
  ScenarioParts p;
  p.co_sites  = {{0.0, 0.0}};
  p.rn_sites  = {{1.0, 1.0}};
  p.onu_sites = {{1.0, 1.5}, {1.5, 1.0}, {0.5, 1.0}, {1.0, 0.5}};
  ponplan::testing::wire(p, {0, 0, 0, 0}, {0});
  const Scenario four(std::move(p));
  auto           e  = PlacementDecision::empty_for(four);
  e.at({Tier::Rn, 0}) = {true, 2, 1.0};
  e.assign.assign(4, SiteRef{Tier::Rn, 0});
  CHECK(aggregate_loads(e, four).at(0).lambda_z == 4000.0);
  CHECK(aggregate_loads(PlacementDecision::empty_for(four), four).empty());
}

TEST_CASE("onu latency") {
  const auto s   = validator_instance();
  auto       d   = baseline(s);
  const auto lat = onu_latency(d, 0, s);
  const auto p   = s.params();
  const auto tx  = transmission_time(Tier::Co, 2, p);
  CHECK(lat.processing == doctest::Approx(processing_time(2500.0, 2000.0)));
  CHECK(lat.upload == tx.upload);
  CHECK(lat.download == tx.download);
  CHECK(lat.propagation == doctest::Approx(propagation_delay(s.co_distance(0, 0), p)));
  CHECK(lat.total == doctest::Approx(processing_time(2500.0, 2000.0) + tx.upload + tx.download +
                                     propagation_delay(s.co_distance(0, 0), p)));
  d.at({Tier::Co, 0}).phi = 0.0;
  CHECK(onu_latency(d, 0, s).total == doctest::Approx(0.8004).epsilon(1e-14));
  d.assign[1].reset();
  CHECK_THROWS_AS(onu_latency(d, 1, s), std::invalid_argument);
}

TEST_CASE("validator accepts the baseline") {
  const auto s = validator_instance();
  CHECK(validate(baseline(s), s).empty());
}

TEST_CASE("validator flags exactly the broken constraint") {
  const auto s = validator_instance();
  auto       d = baseline(s);
  std::set<ConstraintId> expected;

  SUBCASE("field-racks: field site open without racks") {
    d.at({Tier::Field, 0}) = {true, 0, 1.0};
    d.assign[0]            = SiteRef{Tier::Field, 0};
    expected               = {ConstraintId::FieldRacks};
  }
  SUBCASE("field-racks: field site above k_max") {
    d.at({Tier::Field, 0}) = {true, 4, 1.0};
    d.assign[0]            = SiteRef{Tier::Field, 0};
    expected               = {ConstraintId::FieldRacks};
  }
  SUBCASE("rn-racks: RN open without racks") {
    d.at({Tier::Rn, 0}) = {true, 0, 1.0};
    d.assign[0]         = SiteRef{Tier::Rn, 0};
    expected            = {ConstraintId::RnRacks};
  }
  SUBCASE("co-racks: CO open without racks") {
    d.at({Tier::Co, 0}).racks = 0;
    expected                  = {ConstraintId::CoRacks};
  }
  SUBCASE("co-racks: closed CO holding racks") {
    d.at({Tier::Co, 1}) = {false, 2, 0.0};
    expected            = {ConstraintId::CoRacks};
  }
  SUBCASE("field-reach: field fiber beyond L_max") {
    d.at({Tier::Field, 1}) = {true, 1, 1.0};
    d.assign[0]            = SiteRef{Tier::Field, 1};
    REQUIRE(s.field_distance(1, 0) > s.params().l_max_km);
    expected = {ConstraintId::FieldReach};
  }
  SUBCASE("field-activation: open field site without ONUs") {
    d.at({Tier::Field, 0}) = {true, 1, 1.0};
    expected               = {ConstraintId::FieldActivation};
  }
  SUBCASE("rn-adjacency: ONU on an RN it is not fibered to") {
    d.at({Tier::Rn, 1}) = {true, 1, 1.0};
    d.assign[0]         = SiteRef{Tier::Rn, 1};
    expected            = {ConstraintId::RnAdjacency};
  }
  SUBCASE("co-adjacency: ONU on a CO it is not fibered to") {
    d.at({Tier::Co, 1}) = {true, 1, 1.0};
    d.assign[0]         = SiteRef{Tier::Co, 1};
    expected            = {ConstraintId::CoAdjacency};
  }
  SUBCASE("rn-activation: open RN without ONUs") {
    d.at({Tier::Rn, 1}) = {true, 1, 1.0};
    expected            = {ConstraintId::RnActivation};
  }
  SUBCASE("co-activation: open CO without ONUs") {
    d.at({Tier::Co, 1}) = {true, 1, 1.0};
    expected            = {ConstraintId::CoActivation};
  }
  SUBCASE("single-assignment: unassigned ONU") {
    d.assign[1].reset();
    expected = {ConstraintId::SingleAssignment};
  }
  SUBCASE("latency-bound: latency above D_QoS") {
    const auto tight = validator_instance(4e-3);
    const auto v     = validate(d, tight);
    CHECK(ids(v) == std::set{ConstraintId::LatencyBound});
    CHECK(v.size() == 2);
    return;
  }
  SUBCASE("latency-bound: unstable queue") {
    d.at({Tier::Co, 0}).phi = 1.0;
    ScenarioParts parts     = s.parts();
    parts.params.lambda_d   = 1500.0;
    const Scenario busy(parts);
    CHECK(ids(validate(d, busy)) == std::set{ConstraintId::LatencyBound});
    return;
  }
  SUBCASE("structural: phi above one") {
    d.at({Tier::Co, 0}).phi = 2.0;
    expected                = {ConstraintId::Structural};
  }
  SUBCASE("structural: missing site index") {
    d.assign[0] = SiteRef{Tier::Rn, 7};
    expected    = {ConstraintId::Structural};
  }
  CHECK(ids(validate(d, s)) == expected);
}

TEST_CASE("validator and onu latency agree") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = ponplan::testing::random_tiny(seed);
    auto       d = PlacementDecision::empty_for(s);
    // Everyone on their CO with k_max racks and phi = 1.
    for (std::size_t o = 0; o < s.num_onu(); ++o) {
      d.assign[o]                = SiteRef{Tier::Co, s.co_of(o)};
      d.at({Tier::Co, s.co_of(o)}) = {true, s.params().k_max, 1.0};
    }
    const auto v = validate(d, s);
    for (std::size_t o = 0; o < s.num_onu(); ++o) {
      bool flagged = false;
      for (const auto &x : v) flagged |= x.onu == o && x.id == ConstraintId::LatencyBound;
      bool late = false;
      try {
        late = onu_latency(d, o, s).total > s.params().d_qos + kLatencyTolerance;
      } catch (const UnstableQueueError &) {
        late = true;
      }
      CHECK(flagged == late);
    }
  }
}
