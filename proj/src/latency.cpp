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

#include "ponplan/latency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ponplan {

namespace {

constexpr double kStabilityMargin = 1e-6;

} // namespace

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::Co: return "co";
    case Tier::Rn: return "rn";
    case Tier::Field: return "field";
  }
  return "co";
}

Tier parse_tier(std::string_view text) {
  if (text == "co") return Tier::Co;
  if (text == "rn") return Tier::Rn;
  if (text == "field") return Tier::Field;
  throw std::invalid_argument("unknown tier '" + std::string(text) + "'");
}

CloudletLoad CloudletLoad::make(Tier tier, std::size_t site, int racks, std::size_t onus, const Parameters &params) {
  CloudletLoad load;
  load.tier           = tier;
  load.site_index     = site;
  load.racks          = racks;
  load.connected_onus = onus;
  load.lambda_z       = static_cast<double>(onus) * params.lambda_d;
  load.mu_z           = static_cast<double>(racks) * params.mu;
  return load;
}

double processing_time(double mu_z, double effective_lambda) {
  if (!(effective_lambda >= 0.0)) throw std::invalid_argument("processing_time: arrival rate must be >= 0");
  if (!(mu_z > effective_lambda))
    throw UnstableQueueError("unstable cloudlet queue: service rate " + std::to_string(mu_z) +
                             " does not exceed arrival rate " + std::to_string(effective_lambda));
  return 1.0 / (mu_z - effective_lambda);
}

double cloud_latency(double capital_lambda, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("cloud_latency: mu must be > 0");
  return capital_lambda + 1.0 / mu;
}

TransmissionTime transmission_time(Tier tier, std::size_t connected_onus, const Parameters &params) {
  if (connected_onus == 0) throw std::invalid_argument("transmission_time: a cloudlet needs at least one ONU");
  const double n = static_cast<double>(connected_onus);
  switch (tier) {
    case Tier::Field:
      // Dedicated point-to-point fiber per ONU: independent of the cloudlet's fan-in.
      return {params.sigma_ul / params.bw_field_ul, params.sigma_dl / params.bw_field_dl};
    case Tier::Rn: {
      const double shared = params.n_lambda * params.bw_rn;
      return {params.sigma_ul * n / shared, params.sigma_dl * n / shared};
    }
    case Tier::Co: {
      const double spare_ul = params.bw_co - params.beta_ul;
      const double spare_dl = params.bw_co - params.beta_dl;
      if (!(spare_ul > 0.0) || !(spare_dl > 0.0))
        throw std::invalid_argument("transmission_time: background load saturates the CO channel");
      return {params.sigma_ul * n / spare_ul, params.sigma_dl * n / spare_dl};
    }
  }
  throw std::invalid_argument("transmission_time: unknown tier");
}

double propagation_delay(double distance_km, const Parameters &params) {
  if (!(distance_km >= 0.0)) throw std::invalid_argument("propagation_delay: distance must be >= 0");
  return distance_km * params.prop_delay;
}

LatencyBreakdown tier_latency(const CloudletLoad &load, double distance_km, double phi, const Parameters &params) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("tier_latency: phi must lie in [0, 1]");
  LatencyBreakdown out;
  const auto       tx = transmission_time(load.tier, load.connected_onus, params);
  out.processing      = processing_time(load.mu_z, load.lambda_z * phi);
  out.propagation     = propagation_delay(distance_km, params);
  out.upload          = tx.upload;
  out.download        = tx.download;
  out.cloud_branch    = cloud_latency(params.capital_lambda, params.mu);
  out.phi             = phi;
  out.total = phi * (out.processing + out.propagation + out.upload + out.download) + (1.0 - phi) * out.cloud_branch;
  return out;
}

double phi_upper_bound(const CloudletLoad &load) {
  if (load.lambda_z <= 0.0) return 1.0;
  return std::clamp((load.mu_z - kStabilityMargin * load.mu_z) / load.lambda_z, 0.0, 1.0);
}

PhiChoice best_phi(const CloudletLoad &load, double distance_km, const Parameters &params) {
  if (!(load.mu_z > 0.0)) throw std::invalid_argument("best_phi: mu_z must be > 0");
  const auto   tx    = transmission_time(load.tier, load.connected_onus, params);
  const double fixed = propagation_delay(distance_km, params) + tx.upload + tx.download;
  const double cloud = cloud_latency(params.capital_lambda, params.mu);
  const double hi    = phi_upper_bound(load);

  // d/dphi total = mu_z / (mu_z - lambda phi)^2 + fixed - cloud, increasing in phi.
  double candidate;
  const double gain = cloud - fixed;
  if (gain <= 1.0 / load.mu_z) {
    candidate = 0.0;
  } else if (load.lambda_z <= 0.0) {
    candidate = hi;
  } else {
    candidate = (load.mu_z - std::sqrt(load.mu_z / gain)) / load.lambda_z;
  }
  candidate = std::clamp(candidate, 0.0, hi);

  // The closed form can land a rounding step away from a boundary optimum.
  PhiChoice best{0.0, tier_latency(load, distance_km, 0.0, params).total};
  for (double phi : {candidate, hi}) {
    const double t = tier_latency(load, distance_km, phi, params).total;
    if (t < best.total) best = {phi, t};
  }
  return best;
}

} // namespace ponplan
