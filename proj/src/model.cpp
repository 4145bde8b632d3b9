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

#include "ponplan/model.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace ponplan {

namespace {

std::size_t tier_index(Tier t) { return static_cast<std::size_t>(t); }

ConstraintId rack_constraint(Tier t) {
  switch (t) {
    case Tier::Field: return ConstraintId::FieldRacks;
    case Tier::Rn: return ConstraintId::RnRacks;
    case Tier::Co: return ConstraintId::CoRacks;
  }
  return ConstraintId::Structural;
}

ConstraintId activation_constraint(Tier t) {
  switch (t) {
    case Tier::Field: return ConstraintId::FieldActivation;
    case Tier::Rn: return ConstraintId::RnActivation;
    case Tier::Co: return ConstraintId::CoActivation;
  }
  return ConstraintId::Structural;
}

std::string site_name(SiteRef s) { return std::string(to_string(s.tier)) + "[" + std::to_string(s.index) + "]"; }

template <class... Args>
std::string format(Args &&...args) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << args);
  return os.str();
}

} // namespace

std::string_view to_string(ConstraintId id) {
  switch (id) {
    case ConstraintId::FieldRacks: return "field-racks";
    case ConstraintId::RnRacks: return "rn-racks";
    case ConstraintId::CoRacks: return "co-racks";
    case ConstraintId::FieldReach: return "field-reach";
    case ConstraintId::FieldActivation: return "field-activation";
    case ConstraintId::RnAdjacency: return "rn-adjacency";
    case ConstraintId::CoAdjacency: return "co-adjacency";
    case ConstraintId::RnActivation: return "rn-activation";
    case ConstraintId::CoActivation: return "co-activation";
    case ConstraintId::SingleAssignment: return "single-assignment";
    case ConstraintId::LatencyBound: return "latency-bound";
    case ConstraintId::Structural: return "structural";
  }
  return "structural";
}

PlacementDecision PlacementDecision::empty_for(const Scenario &scenario) {
  PlacementDecision d;
  for (Tier t : kTiers) d.tier(t).assign(site_count(scenario, t), SiteDecision{});
  d.assign.assign(scenario.num_onu(), std::nullopt);
  return d;
}

std::size_t site_count(const Scenario &scenario, Tier tier) {
  switch (tier) {
    case Tier::Field: return scenario.num_field();
    case Tier::Rn: return scenario.num_rn();
    case Tier::Co: return scenario.num_co();
  }
  return 0;
}

double onu_distance(const Scenario &scenario, SiteRef site, std::size_t onu) {
  switch (site.tier) {
    case Tier::Field: return scenario.field_distance(site.index, onu);
    case Tier::Rn: return scenario.rn_distance(site.index, onu);
    case Tier::Co: return scenario.co_distance(site.index, onu);
  }
  return 0.0;
}

bool admissible(const Scenario &scenario, SiteRef site, std::size_t onu) {
  switch (site.tier) {
    case Tier::Field: return scenario.field_distance(site.index, onu) <= scenario.params().l_max_km;
    case Tier::Rn: return scenario.rn_adjacent(site.index, onu);
    case Tier::Co: return scenario.co_adjacent(site.index, onu);
  }
  return false;
}

double infra_cost(const Parameters &params, Tier tier) {
  switch (tier) {
    case Tier::Field: return params.xi_field;
    case Tier::Rn: return params.xi_rn;
    case Tier::Co: return params.xi_co;
  }
  return 0.0;
}

CostBreakdown objective_cost(const PlacementDecision &decision, const Scenario &scenario) {
  const auto   &p = scenario.params();
  CostBreakdown c;
  for (Tier t : kTiers) {
    for (const auto &site : decision.tier(t)) {
      if (!site.open) continue;
      c.rack_cost += p.alpha * site.racks;
      c.infra_cost += infra_cost(p, t);
    }
  }
  double fiber_km = 0.0;
  for (std::size_t d = 0; d < decision.assign.size(); ++d) {
    const auto &a = decision.assign[d];
    if (a && a->tier == Tier::Field) fiber_km += scenario.field_distance(a->index, d);
  }
  c.fiber_cost = p.eta * fiber_km;
  c.total      = c.rack_cost + c.fiber_cost + c.infra_cost;
  return c;
}

LinearizedProduct linearized_product(int x, int n) {
  if ((x != 0 && x != 1) || (n != 0 && n != 1)) throw std::invalid_argument("linearized_product: inputs must be binary");
  LinearizedProduct out;
  for (int xbar : {0, 1}) {
    if (xbar <= n && xbar <= x && xbar >= n + x - 1) out.admissible.push_back(xbar);
  }
  if (out.admissible.size() != 1) throw std::logic_error("linearization does not pin the product");
  out.value = out.admissible.front();
  return out;
}

std::array<std::vector<std::size_t>, 3> connected_counts(const PlacementDecision &decision, const Scenario &scenario) {
  std::array<std::vector<std::size_t>, 3> counts;
  for (Tier t : kTiers) counts[tier_index(t)].assign(site_count(scenario, t), 0);
  for (const auto &a : decision.assign) {
    if (!a) continue;
    auto &v = counts[tier_index(a->tier)];
    if (a->index < v.size()) ++v[a->index];
  }
  return counts;
}

std::vector<CloudletLoad> aggregate_loads(const PlacementDecision &decision, const Scenario &scenario) {
  const auto                counts = connected_counts(decision, scenario);
  std::vector<CloudletLoad> loads;
  for (Tier t : kTiers) {
    const auto &sites = decision.tier(t);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (!sites[i].open) continue;
      loads.push_back(CloudletLoad::make(t, i, sites[i].racks, counts[tier_index(t)][i], scenario.params()));
    }
  }
  return loads;
}

LatencyBreakdown onu_latency(const PlacementDecision &decision, std::size_t onu, const Scenario &scenario) {
  if (onu >= decision.assign.size() || !decision.assign[onu])
    throw std::invalid_argument("onu_latency: ONU " + std::to_string(onu) + " is not assigned to a cloudlet");
  const SiteRef s = *decision.assign[onu];
  if (s.index >= decision.tier(s.tier).size()) throw std::invalid_argument("onu_latency: site index out of range");
  const auto &site = decision.at(s);
  if (!site.open) throw std::invalid_argument("onu_latency: ONU " + std::to_string(onu) + " is assigned to a closed site");

  std::size_t connected = 0;
  for (const auto &a : decision.assign)
    if (a && *a == s) ++connected;
  const auto load = CloudletLoad::make(s.tier, s.index, site.racks, connected, scenario.params());
  return tier_latency(load, onu_distance(scenario, s, onu), site.phi, scenario.params());
}

std::vector<Violation> validate(const PlacementDecision &decision, const Scenario &scenario) {
  const auto            &p = scenario.params();
  std::vector<Violation> out;

  // Shape first: nothing else is meaningful if the vectors do not match the scenario.
  for (Tier t : kTiers) {
    if (decision.tier(t).size() != site_count(scenario, t)) {
      out.push_back({ConstraintId::Structural, std::nullopt, std::nullopt,
                     format(to_string(t), " site vector has ", decision.tier(t).size(), " entries, scenario has ",
                            site_count(scenario, t))});
    }
  }
  if (decision.assign.size() != scenario.num_onu()) {
    out.push_back({ConstraintId::Structural, std::nullopt, std::nullopt,
                   format("assignment covers ", decision.assign.size(), " ONUs, scenario has ", scenario.num_onu())});
  }
  for (std::size_t d = 0; d < decision.assign.size(); ++d) {
    const auto &a = decision.assign[d];
    if (a && a->index >= decision.tier(a->tier).size()) {
      out.push_back({ConstraintId::Structural, std::nullopt, d,
                     format("assigned to ", site_name(*a), " which does not exist")});
    }
  }
  if (!out.empty()) return out;

  for (Tier t : kTiers) {
    const auto &sites = decision.tier(t);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (!(sites[i].phi >= 0.0 && sites[i].phi <= 1.0)) {
        out.push_back({ConstraintId::Structural, SiteRef{t, i}, std::nullopt,
                       format("phi = ", sites[i].phi, " outside [0, 1]")});
      }
    }
  }

  const auto counts = connected_counts(decision, scenario);

  // Capacity: an open site holds 1..k_max racks, a closed one none; open sites serve someone.
  for (Tier t : kTiers) {
    const auto &sites = decision.tier(t);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const SiteRef s{t, i};
      const auto   &site = sites[i];
      if (site.racks < 0 || site.racks > p.k_max) {
        out.push_back({rack_constraint(t), s, std::nullopt,
                       format("racks = ", site.racks, " outside 0..", p.k_max)});
      } else if (site.open && site.racks == 0) {
        out.push_back({rack_constraint(t), s, std::nullopt, "open site without racks"});
      } else if (!site.open && site.racks > 0) {
        out.push_back({rack_constraint(t), s, std::nullopt, format("closed site holds ", site.racks, " racks")});
      }
      if (site.open && counts[tier_index(t)][i] == 0) {
        out.push_back({activation_constraint(t), s, std::nullopt, "open site without connected ONUs"});
      }
    }
  }

  // Per-ONU connectivity and latency. Each ONU only reads shared state, so the loop runs in parallel.
  const auto                          nd = static_cast<std::int64_t>(scenario.num_onu());
  std::vector<std::vector<Violation>> per_onu(scenario.num_onu());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t di = 0; di < nd; ++di) {
    const auto d    = static_cast<std::size_t>(di);
    auto      &mine = per_onu[d];
    const auto &a   = decision.assign[d];
    if (!a) {
      mine.push_back({ConstraintId::SingleAssignment, std::nullopt, d, "ONU is not connected to any cloudlet"});
      continue;
    }
    const SiteRef s    = *a;
    const auto   &site = decision.at(s);
    switch (s.tier) {
      case Tier::Field: {
        const double len = scenario.field_distance(s.index, d);
        if (len > p.l_max_km + kCostTolerance)
          mine.push_back({ConstraintId::FieldReach, s, d, format("fiber length ", len, " km exceeds L_max ", p.l_max_km)});
        break;
      }
      case Tier::Rn:
        if (!scenario.rn_adjacent(s.index, d)) mine.push_back({ConstraintId::RnAdjacency, s, d, "ONU is not fibered to this RN"});
        break;
      case Tier::Co:
        if (!scenario.co_adjacent(s.index, d)) mine.push_back({ConstraintId::CoAdjacency, s, d, "ONU is not fibered to this CO"});
        break;
    }
    if (!site.open) {
      mine.push_back({activation_constraint(s.tier), s, d, "ONU connected to a closed site"});
      continue;
    }
    if (site.racks < 1 || site.racks > p.k_max || !(site.phi >= 0.0 && site.phi <= 1.0)) continue;

    const auto load = CloudletLoad::make(s.tier, s.index, site.racks, counts[tier_index(s.tier)][s.index], p);
    try {
      const auto lat = tier_latency(load, onu_distance(scenario, s, d), site.phi, p);
      if (lat.total > p.d_qos + kLatencyTolerance)
        mine.push_back({ConstraintId::LatencyBound, s, d, format("latency ", lat.total, " s exceeds D_QoS ", p.d_qos, " s")});
    } catch (const UnstableQueueError &) {
      mine.push_back({ConstraintId::LatencyBound, s, d,
                      format("unstable queue: mu_z = ", load.mu_z, " <= phi * lambda_z = ", site.phi * load.lambda_z)});
    }
  }
  for (auto &v : per_onu) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return out;
}

} // namespace ponplan
