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

#include "ponplan/latency.hpp"
#include "ponplan/scenario.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ponplan {

inline constexpr double kLatencyTolerance = 1e-12; ///< seconds
inline constexpr double kCostTolerance    = 1e-9;

/// A candidate cloudlet location.
struct SiteRef {
  Tier        tier  = Tier::Co;
  std::size_t index = 0;

  friend auto operator<=>(const SiteRef &, const SiteRef &) = default;
};

/// Decision for one candidate site: open flag, rack count (0..k_max) and kept fraction phi.
struct SiteDecision {
  bool   open  = false;
  int    racks = 0;
  double phi   = 0.0;

  friend bool operator==(const SiteDecision &, const SiteDecision &) = default;
};

/**
 * The placement decision variables.
 *
 * The one-hot rack selectors of the model are folded into a single integer per
 * site, and the product of "open" and "m racks" is implied by open && racks == m.
 */
struct PlacementDecision {
  std::array<std::vector<SiteDecision>, 3> sites;  ///< indexed by Tier
  std::vector<std::optional<SiteRef>>      assign; ///< per ONU

  /// All sites closed, no ONU assigned, sized for the scenario.
  static PlacementDecision empty_for(const Scenario &scenario);

  std::vector<SiteDecision>       &tier(Tier t) { return sites[static_cast<std::size_t>(t)]; }
  const std::vector<SiteDecision> &tier(Tier t) const { return sites[static_cast<std::size_t>(t)]; }
  SiteDecision                    &at(SiteRef s) { return tier(s.tier)[s.index]; }
  const SiteDecision              &at(SiteRef s) const { return tier(s.tier)[s.index]; }

  friend bool operator==(const PlacementDecision &, const PlacementDecision &) = default;
};

struct CostBreakdown {
  double rack_cost  = 0.0;
  double fiber_cost = 0.0;
  double infra_cost = 0.0;
  double total      = 0.0;
};

enum class ConstraintId {
  FieldRacks,       ///< rack count of a field site: 1..k_max when open, 0 when closed
  RnRacks,
  CoRacks,
  FieldReach,       ///< new fiber to a field site no longer than L_max
  FieldActivation,  ///< an open field site serves at least one ONU, a closed one none
  RnAdjacency,      ///< an ONU may only use the RN it is fibered to
  CoAdjacency,
  RnActivation,
  CoActivation,
  SingleAssignment, ///< every ONU is served by exactly one cloudlet
  LatencyBound,     ///< per-ONU latency within D_QoS
  Structural,       ///< malformed decision: sizes, indices, phi outside [0, 1]
};

std::string_view to_string(ConstraintId id);

struct Violation {
  ConstraintId               id = ConstraintId::Structural;
  std::optional<SiteRef>     site;
  std::optional<std::size_t> onu;
  std::string                detail;
};

// ---- scenario helpers shared by the model and the solvers --------------------

std::size_t site_count(const Scenario &scenario, Tier tier);
/// Fiber length between a cloudlet site and an ONU, used for the propagation term.
double      onu_distance(const Scenario &scenario, SiteRef site, std::size_t onu);
/// Whether the ONU may connect to the site at all: fiber reach for field, PON adjacency otherwise.
bool        admissible(const Scenario &scenario, SiteRef site, std::size_t onu);
double      infra_cost(const Parameters &params, Tier tier);

// ---- objective and constraints ------------------------------------------------

/// Installation cost: racks of open sites, new fiber to field cloudlets, site infrastructure.
CostBreakdown objective_cost(const PlacementDecision &decision, const Scenario &scenario);

/// Result of pinning xbar = x * n with xbar <= n, xbar <= x, xbar >= n + x - 1.
struct LinearizedProduct {
  int              value = 0;
  std::vector<int> admissible; ///< every binary xbar the three inequalities allow
};

LinearizedProduct linearized_product(int x, int n);

/// Number of ONUs assigned to each site, per tier.
std::array<std::vector<std::size_t>, 3> connected_counts(const PlacementDecision &decision, const Scenario &scenario);

/// One load per open site, in tier then index order. Arrival rates are recounted from the assignment.
std::vector<CloudletLoad> aggregate_loads(const PlacementDecision &decision, const Scenario &scenario);

/// Latency seen by one ONU at the cloudlet it is assigned to, with that cloudlet's phi.
LatencyBreakdown onu_latency(const PlacementDecision &decision, std::size_t onu, const Scenario &scenario);

/// Every constraint the decision breaks. Empty iff the decision is feasible.
std::vector<Violation> validate(const PlacementDecision &decision, const Scenario &scenario);

} // namespace ponplan
