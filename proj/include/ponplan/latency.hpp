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

#include "ponplan/parameters.hpp"

#include <cstddef>
#include <stdexcept>
#include <string_view>

namespace ponplan {

/// Cloudlet tiers. The enumerator order is the solver tie-break order.
enum class Tier { Co = 0, Rn = 1, Field = 2 };

inline constexpr Tier kTiers[] = {Tier::Co, Tier::Rn, Tier::Field};

std::string_view to_string(Tier tier);
Tier             parse_tier(std::string_view text);

/// A cloudlet queue with mu_z <= effective arrival rate.
class UnstableQueueError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Per-ONU latency of one cloudlet, all in seconds.
struct LatencyBreakdown {
  double processing   = 0.0;
  double propagation  = 0.0;
  double upload       = 0.0;
  double download     = 0.0;
  double cloud_branch = 0.0;
  double phi          = 0.0;
  double total        = 0.0;
};

/// Aggregate load offered to one open cloudlet.
struct CloudletLoad {
  Tier        tier           = Tier::Co;
  std::size_t site_index     = 0;
  int         racks          = 0;
  std::size_t connected_onus = 0;
  double      lambda_z       = 0.0; ///< VMs/s arriving from the connected ONUs
  double      mu_z           = 0.0; ///< racks * mu

  static CloudletLoad make(Tier tier, std::size_t site, int racks, std::size_t onus, const Parameters &params);
};

/// M/M/1 sojourn time 1 / (mu_z - lambda). Throws UnstableQueueError unless mu_z > lambda >= 0.
double processing_time(double mu_z, double effective_lambda);

/// Latency of a task offloaded to the remote cloud: Lambda + 1/mu.
double cloud_latency(double capital_lambda, double mu);

struct TransmissionTime {
  double upload   = 0.0;
  double download = 0.0;
};

/// Upload / download time of one task at a cloudlet of the given tier shared by connected_onus ONUs.
TransmissionTime transmission_time(Tier tier, std::size_t connected_onus, const Parameters &params);

double propagation_delay(double distance_km, const Parameters &params);

/// Weighted latency of an ONU at the cloudlet when the cloudlet keeps a fraction phi of its tasks.
LatencyBreakdown tier_latency(const CloudletLoad &load, double distance_km, double phi, const Parameters &params);

struct PhiChoice {
  double phi   = 0.0;
  double total = 0.0;
};

/**
 * The phi in [0, min(1, (mu_z - eps) / lambda_z)] minimizing tier_latency().total,
 * with eps = 1e-6 * mu_z.
 *
 * The objective phi / (mu_z - lambda_z phi) + phi (c - K) + K is convex, so the
 * stationary point mu_z / (mu_z - lambda_z phi)^2 = K - c is solved in closed form
 * and clamped to the interval.
 */
PhiChoice best_phi(const CloudletLoad &load, double distance_km, const Parameters &params);

/// Upper end of the admissible phi interval.
double phi_upper_bound(const CloudletLoad &load);

} // namespace ponplan
