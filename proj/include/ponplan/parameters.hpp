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

#include <string>
#include <string_view>

namespace ponplan {

enum class ScenarioLabel { Urban, Suburban, Rural, Custom };

std::string_view to_string(ScenarioLabel label);
ScenarioLabel    parse_label(std::string_view text);

/// Population density of the generated 5 km x 5 km blocks, people per km^2.
double label_density(ScenarioLabel label);

/**
 * Every scalar of the planning model.
 *
 * Costs are normalized units, bandwidths bits/s, payloads bits, rates VMs/s,
 * latencies seconds and lengths kilometers.
 */
struct Parameters {
  double alpha    = 1.0; ///< cost per rack
  double xi_field = 4.0; ///< infrastructure cost of a field site
  double xi_rn    = 4.0; ///< infrastructure cost of a remote-node site
  double xi_co    = 2.0; ///< infrastructure cost of a central-office site
  double eta      = 50.0; ///< new point-to-point fiber, cost per km
  double l_max_km = 4.0;  ///< longest admissible field fiber

  double bw_field_ul = 1e9;
  double bw_field_dl = 1e9;
  double bw_rn       = 1e10;
  double bw_co       = 1e10;
  int    n_lambda    = 1; ///< wavelengths shared by the ONUs of an RN cloudlet
  double beta_ul     = 5e9; ///< PON background load, uplink
  double beta_dl     = 7e9; ///< PON background load, downlink

  double sigma_ul = 8e6; ///< request payload per task
  double sigma_dl = 8e3; ///< response payload per task

  double mu             = 2500.0; ///< service rate of one rack
  double lambda_d       = 1000.0; ///< task rate of one ONU
  double capital_lambda = 0.8;    ///< transfer latency to the remote cloud
  double d_qos          = 0.01;   ///< per-ONU latency budget
  int    k_max          = 10;     ///< racks per cloudlet are drawn from 1..k_max
  double prop_delay     = 5e-6;   ///< fiber propagation, s/km

  /// Throws std::invalid_argument naming the first field that breaks an invariant.
  void validate() const;

  friend bool operator==(const Parameters &, const Parameters &) = default;
};

/// Defaults for a generated scenario; only the fiber price depends on the label.
Parameters default_parameters(ScenarioLabel label);

} // namespace ponplan
