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

#include "ponplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ponplan::testing {

/// Adjacency matrices from "ONU d hangs off RN rn_of[d]" and "RN b is fed by CO co_of_rn[b]".
inline void wire(ScenarioParts &parts, const std::vector<std::size_t> &rn_of, const std::vector<std::size_t> &co_of_rn) {
  parts.rn_adjacency = Matrix<std::uint8_t>(parts.rn_sites.size(), parts.onu_sites.size(), 0);
  parts.co_adjacency = Matrix<std::uint8_t>(parts.co_sites.size(), parts.onu_sites.size(), 0);
  for (std::size_t d = 0; d < rn_of.size(); ++d) {
    parts.rn_adjacency(rn_of[d], d)             = 1;
    parts.co_adjacency(co_of_rn[rn_of[d]], d)   = 1;
  }
}

/// Two ONUs behind one RN and one CO, no field sites, D_QoS 0.1 s, k_max 3.
inline Scenario two_onu_instance(double d_qos = 0.1) {
  ScenarioParts p;
  p.params.d_qos = d_qos;
  p.params.k_max = 3;
  p.co_sites     = {{0.0, 0.0}};
  p.rn_sites     = {{1.0, 0.0}};
  p.onu_sites    = {{1.0, 0.5}, {1.5, 0.0}};
  wire(p, {0, 0}, {0});
  return Scenario(std::move(p));
}

/*
 * Validator fixture:
 *   CO0 feeds RN0 which serves both ONUs; CO1 and RN1 serve nobody.
 *   field0 is 1 km from ONU0, field1 is more than L_max from both ONUs.
 */
inline Scenario validator_instance(double d_qos = 0.1) {
  ScenarioParts p;
  p.params.d_qos = d_qos;
  p.params.k_max = 3;
  p.co_sites     = {{0.0, 0.0}, {5.0, 0.0}};
  p.rn_sites     = {{1.0, 1.0}, {4.0, 1.0}};
  p.field_sites  = {{1.0, 2.0}, {5.0, 5.0}};
  p.onu_sites    = {{1.0, 1.0}, {0.5, 0.5}};
  wire(p, {0, 0}, {0, 1});
  return Scenario(std::move(p));
}

/// A random instance inside the brute-force guard: at most 8 ONUs, 5 sites, 3 racks.
inline Scenario random_tiny(std::uint64_t seed) {
  std::mt19937_64                        rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 5.0);
  auto                                   pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  ScenarioParts p;
  p.seed        = seed;
  p.split_ratio = 8;
  const int nd  = pick(1, 8);
  const int nco = pick(1, 2);
  const int nrn = pick(1, 2);
  const int nfield = pick(0, 5 - nco - nrn);
  for (int i = 0; i < nco; ++i) p.co_sites.push_back({coord(rng), coord(rng)});
  for (int i = 0; i < nrn; ++i) p.rn_sites.push_back({coord(rng), coord(rng)});
  for (int i = 0; i < nfield; ++i) p.field_sites.push_back({coord(rng), coord(rng)});
  for (int i = 0; i < nd; ++i) p.onu_sites.push_back({coord(rng), coord(rng)});

  std::vector<std::size_t> rn_of(nd), co_of_rn(nrn);
  for (auto &r : rn_of) r = static_cast<std::size_t>(pick(0, nrn - 1));
  for (auto &c : co_of_rn) c = static_cast<std::size_t>(pick(0, nco - 1));
  wire(p, rn_of, co_of_rn);

  auto &q = p.params;
  q.k_max = pick(1, 3);
  q.alpha = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
  q.xi_field = std::uniform_real_distribution<double>(1.0, 6.0)(rng);
  q.xi_rn    = std::uniform_real_distribution<double>(1.0, 6.0)(rng);
  q.xi_co    = std::uniform_real_distribution<double>(1.0, 6.0)(rng);
  q.eta      = std::uniform_real_distribution<double>(0.5, 50.0)(rng);
  if (pick(0, 1)) {
    q.sigma_ul = 1e6;
    q.sigma_dl = 1e3;
  }
  // Mostly tight bounds, where the placement matters, with an occasional loose one.
  const double log_lo = std::log(5e-4), log_hi = std::log(0.05);
  q.d_qos = pick(0, 9) == 0 ? 1.0 : std::exp(std::uniform_real_distribution<double>(log_lo, log_hi)(rng));
  return Scenario(std::move(p));
}

} // namespace ponplan::testing
