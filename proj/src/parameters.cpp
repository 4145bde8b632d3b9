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

#include "ponplan/parameters.hpp"

#include <cmath>
#include <stdexcept>

namespace ponplan {

std::string_view to_string(ScenarioLabel label) {
  switch (label) {
    case ScenarioLabel::Urban: return "urban";
    case ScenarioLabel::Suburban: return "suburban";
    case ScenarioLabel::Rural: return "rural";
    case ScenarioLabel::Custom: return "custom";
  }
  return "custom";
}

ScenarioLabel parse_label(std::string_view text) {
  if (text == "urban") return ScenarioLabel::Urban;
  if (text == "suburban") return ScenarioLabel::Suburban;
  if (text == "rural") return ScenarioLabel::Rural;
  if (text == "custom") return ScenarioLabel::Custom;
  throw std::invalid_argument("unknown scenario label '" + std::string(text) + "'");
}

double label_density(ScenarioLabel label) {
  switch (label) {
    case ScenarioLabel::Urban: return 4000.0;
    case ScenarioLabel::Suburban: return 2500.0;
    case ScenarioLabel::Rural: return 1500.0;
    case ScenarioLabel::Custom: break;
  }
  throw std::invalid_argument("custom scenarios have no reference density");
}

Parameters default_parameters(ScenarioLabel label) {
  Parameters p;
  switch (label) {
    case ScenarioLabel::Urban: p.eta = 50.0; break;
    case ScenarioLabel::Suburban: p.eta = 35.0; break;
    case ScenarioLabel::Rural: p.eta = 20.0; break;
    case ScenarioLabel::Custom: break;
  }
  return p;
}

namespace {

void require_positive(double value, const char *name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string("parameter '") + name + "' must be finite and > 0");
}

} // namespace

void Parameters::validate() const {
  require_positive(alpha, "alpha");
  require_positive(xi_field, "xi_field");
  require_positive(xi_rn, "xi_rn");
  require_positive(xi_co, "xi_co");
  require_positive(eta, "eta");
  require_positive(l_max_km, "l_max_km");
  require_positive(bw_field_ul, "bw_field_ul");
  require_positive(bw_field_dl, "bw_field_dl");
  require_positive(bw_rn, "bw_rn");
  require_positive(bw_co, "bw_co");
  if (n_lambda < 1) throw std::invalid_argument("parameter 'n_lambda' must be >= 1");
  require_positive(beta_ul, "beta_ul");
  require_positive(beta_dl, "beta_dl");
  require_positive(sigma_ul, "sigma_ul");
  require_positive(sigma_dl, "sigma_dl");
  require_positive(mu, "mu");
  require_positive(lambda_d, "lambda_d");
  require_positive(capital_lambda, "capital_lambda");
  require_positive(d_qos, "d_qos");
  if (k_max < 1) throw std::invalid_argument("parameter 'k_max' must be >= 1");
  require_positive(prop_delay, "prop_delay");
  if (!(beta_ul < bw_co)) throw std::invalid_argument("parameter 'beta_ul' must be below bw_co");
  if (!(beta_dl < bw_co)) throw std::invalid_argument("parameter 'beta_dl' must be below bw_co");
}

} // namespace ponplan
