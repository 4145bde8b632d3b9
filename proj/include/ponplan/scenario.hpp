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

#include "ponplan/geometry.hpp"
#include "ponplan/parameters.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ponplan {

/// Raised when a scenario breaks one of its structural invariants or a file is malformed.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The raw content of a deployment instance, before validation.
struct ScenarioParts {
  ScenarioLabel        label       = ScenarioLabel::Custom;
  std::uint64_t        seed        = 0;
  int                  split_ratio = 4;
  double               side_km     = 5.0;
  Parameters           params;
  std::vector<Point2D> field_sites; ///< candidate field cloudlets (A)
  std::vector<Point2D> rn_sites;    ///< remote nodes (B)
  std::vector<Point2D> co_sites;    ///< central offices (C)
  std::vector<Point2D> onu_sites;   ///< ONUs (D)
  Matrix<std::uint8_t> rn_adjacency; ///< |B| x |D|
  Matrix<std::uint8_t> co_adjacency; ///< |C| x |D|

  friend bool operator==(const ScenarioParts &, const ScenarioParts &) = default;
};

/**
 * An immutable, validated deployment instance.
 *
 * Construction checks the tree-and-branch PON invariants (one RN and one CO
 * per ONU, the CO of an ONU is the CO of its RN, at most split_ratio ONUs per
 * RN, every site inside the square) and derives the distance tables.
 */
class Scenario {
 public:
  explicit Scenario(ScenarioParts parts);

  const ScenarioParts &parts() const { return parts_; }
  const Parameters    &params() const { return parts_.params; }
  ScenarioLabel        label() const { return parts_.label; }
  std::uint64_t        seed() const { return parts_.seed; }
  int                  split_ratio() const { return parts_.split_ratio; }
  double               side_km() const { return parts_.side_km; }

  const std::vector<Point2D> &field_sites() const { return parts_.field_sites; }
  const std::vector<Point2D> &rn_sites() const { return parts_.rn_sites; }
  const std::vector<Point2D> &co_sites() const { return parts_.co_sites; }
  const std::vector<Point2D> &onu_sites() const { return parts_.onu_sites; }

  std::size_t num_field() const { return parts_.field_sites.size(); }
  std::size_t num_rn() const { return parts_.rn_sites.size(); }
  std::size_t num_co() const { return parts_.co_sites.size(); }
  std::size_t num_onu() const { return parts_.onu_sites.size(); }

  bool rn_adjacent(std::size_t rn, std::size_t onu) const { return parts_.rn_adjacency(rn, onu) != 0; }
  bool co_adjacent(std::size_t co, std::size_t onu) const { return parts_.co_adjacency(co, onu) != 0; }

  /// The RN / CO an ONU is fibered to.
  std::size_t rn_of(std::size_t onu) const { return rn_of_[onu]; }
  std::size_t co_of(std::size_t onu) const { return co_of_[onu]; }

  /// Straight-line length between field site and ONU (L_ad).
  double field_distance(std::size_t field, std::size_t onu) const { return field_distance_(field, onu); }
  const Matrix<double> &field_distance() const { return field_distance_; }

  /// Fiber length from RN b to ONU d.
  double rn_distance(std::size_t rn, std::size_t onu) const;
  /// Fiber length from CO c to ONU d, routed through the ONU's RN.
  double co_distance(std::size_t co, std::size_t onu) const;

  /// Same topology with replaced parameters (validated).
  Scenario with_params(const Parameters &params) const;

  friend bool operator==(const Scenario &a, const Scenario &b) { return a.parts_ == b.parts_; }

 private:
  ScenarioParts            parts_;
  std::vector<std::size_t> rn_of_;
  std::vector<std::size_t> co_of_;
  Matrix<double>           field_distance_;
};

// ---- generation ------------------------------------------------------------

/// Poisson point process over [0, side]^2 with the given intensity (points/km^2).
std::vector<Point2D> generate_population(double side_km, double density, std::uint64_t seed);

struct KMeansOptions {
  double tolerance_km   = 1e-6;
  int    max_iterations = 100;
};

struct KMeansResult {
  std::vector<Point2D>       centroids;
  std::vector<std::uint32_t> labels;
  std::vector<double>        inertia_history; ///< sum of squared distances after each assignment step
  int                        iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding. Empty clusters keep their centroid.
KMeansResult kmeans(const std::vector<Point2D> &points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions &options = {});

/// Centroids of kmeans(points, k, seed). Throws std::invalid_argument if points.size() < k.
std::vector<Point2D> kmeans_sites(const std::vector<Point2D> &points, std::size_t k, std::uint64_t seed);

/// ceil(|population| / users_per_onu) ONUs at k-means centroids of the population.
std::vector<Point2D> derive_onus(const std::vector<Point2D> &population, std::size_t users_per_onu,
                                 std::uint64_t seed);

struct PonTopology {
  std::vector<Point2D> rn_sites;
  Matrix<std::uint8_t> rn_adjacency;
  Matrix<std::uint8_t> co_adjacency;
};

/// Groups ONUs into RN clusters of at most split_ratio members, places each RN
/// at its group centroid and feeds it from the nearest CO.
PonTopology build_pon(const std::vector<Point2D> &onus, int split_ratio, const std::vector<Point2D> &co_sites,
                      std::uint64_t seed);

std::vector<Point2D> corner_sites(double side_km);

inline constexpr double      kSideKm      = 5.0;
inline constexpr std::size_t kUsersPerOnu = 1000;
inline constexpr std::size_t kFieldSites  = 20;

/// The split-independent part of a generated scenario: ONUs and field sites.
struct ScenarioBase {
  ScenarioLabel        label;
  std::uint64_t        seed;
  std::size_t          population;
  std::vector<Point2D> onus;
  std::vector<Point2D> field_sites;
};

ScenarioBase make_base(ScenarioLabel label, std::uint64_t seed);
Scenario     assemble_scenario(const ScenarioBase &base, int split_ratio);

/// Full pipeline: population -> ONUs -> field sites -> PON, with default parameters.
Scenario make_scenario(ScenarioLabel label, int split_ratio, std::uint64_t seed);

/// Seed of an independent random stream derived from a scenario seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace ponplan
