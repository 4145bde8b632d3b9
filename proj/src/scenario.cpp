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

#include "ponplan/scenario.hpp"

#include "ponplan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace ponplan {

namespace {

constexpr double kBoxSlack = 1e-9;

bool inside_box(const Point2D &p, double side) {
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= -kBoxSlack && p.y >= -kBoxSlack &&
         p.x <= side + kBoxSlack && p.y <= side + kBoxSlack;
}

void check_sites(const std::vector<Point2D> &sites, double side, const char *name) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!inside_box(sites[i], side))
      throw ScenarioError(std::string(name) + " " + std::to_string(i) + " lies outside the [0, side_km] square");
  }
}

/// k-means++ seeding: first centre uniform, the rest with probability proportional to D^2.
std::vector<Point2D> plus_plus_seeds(const std::vector<Point2D> &points, std::size_t k, std::mt19937_64 &rng) {
  std::vector<Point2D> centres;
  centres.reserve(k);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  centres.push_back(points[pick(rng)]);

  std::vector<double> d2(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) d2[i] = squared_distance(points[i], centres.front());

  while (centres.size() < k) {
    const double total = kernels::ordered_sum(d2);
    std::size_t  chosen;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double                           target = u(rng);
      double                                 acc    = 0.0;
      chosen                                        = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centres.push_back(points[chosen]);
    for (std::size_t i = 0; i < points.size(); ++i) d2[i] = std::min(d2[i], squared_distance(points[i], centres.back()));
  }
  return centres;
}

} // namespace

// ---- Scenario ----------------------------------------------------------------

Scenario::Scenario(ScenarioParts parts) : parts_(std::move(parts)) {
  try {
    parts_.params.validate();
  } catch (const std::invalid_argument &e) {
    throw ScenarioError(e.what());
  }
  if (parts_.split_ratio < 1) throw ScenarioError("split_ratio must be >= 1");
  if (!(parts_.side_km > 0.0) || !std::isfinite(parts_.side_km)) throw ScenarioError("side_km must be > 0");

  check_sites(parts_.field_sites, parts_.side_km, "field site");
  check_sites(parts_.rn_sites, parts_.side_km, "RN site");
  check_sites(parts_.co_sites, parts_.side_km, "CO site");
  check_sites(parts_.onu_sites, parts_.side_km, "ONU site");

  const std::size_t nb = num_rn(), nc = num_co(), nd = num_onu();
  if (parts_.rn_adjacency.rows() != nb || parts_.rn_adjacency.cols() != nd)
    throw ScenarioError("rn_adjacency must be |B| x |D|");
  if (parts_.co_adjacency.rows() != nc || parts_.co_adjacency.cols() != nd)
    throw ScenarioError("co_adjacency must be |C| x |D|");

  rn_of_.assign(nd, 0);
  co_of_.assign(nd, 0);
  for (std::size_t d = 0; d < nd; ++d) {
    std::size_t rn_count = 0, co_count = 0;
    for (std::size_t b = 0; b < nb; ++b) {
      const auto v = parts_.rn_adjacency(b, d);
      if (v > 1) throw ScenarioError("rn_adjacency entries must be 0 or 1");
      if (v) {
        ++rn_count;
        rn_of_[d] = b;
      }
    }
    for (std::size_t c = 0; c < nc; ++c) {
      const auto v = parts_.co_adjacency(c, d);
      if (v > 1) throw ScenarioError("co_adjacency entries must be 0 or 1");
      if (v) {
        ++co_count;
        co_of_[d] = c;
      }
    }
    if (rn_count != 1)
      throw ScenarioError("ONU " + std::to_string(d) + " is adjacent to " + std::to_string(rn_count) +
                          " RNs (expected exactly 1)");
    if (co_count != 1)
      throw ScenarioError("ONU " + std::to_string(d) + " is adjacent to " + std::to_string(co_count) +
                          " COs (expected exactly 1)");
  }

  // Every RN hangs off one CO and feeds at most split_ratio ONUs.
  std::vector<std::size_t> rn_load(nb, 0);
  std::vector<long>        rn_co(nb, -1);
  for (std::size_t d = 0; d < nd; ++d) {
    const auto b = rn_of_[d];
    ++rn_load[b];
    if (rn_co[b] < 0) {
      rn_co[b] = static_cast<long>(co_of_[d]);
    } else if (rn_co[b] != static_cast<long>(co_of_[d])) {
      throw ScenarioError("ONUs of RN " + std::to_string(b) + " are adjacent to different COs");
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    if (rn_load[b] > static_cast<std::size_t>(parts_.split_ratio))
      throw ScenarioError("RN " + std::to_string(b) + " feeds " + std::to_string(rn_load[b]) +
                          " ONUs, more than the split ratio " + std::to_string(parts_.split_ratio));
  }

  field_distance_ = kernels::distance_matrix(parts_.field_sites, parts_.onu_sites);
}

double Scenario::rn_distance(std::size_t rn, std::size_t onu) const {
  return distance(parts_.rn_sites[rn], parts_.onu_sites[onu]);
}

double Scenario::co_distance(std::size_t co, std::size_t onu) const {
  const auto &via = parts_.rn_sites[rn_of_[onu]];
  return distance(parts_.co_sites[co], via) + distance(via, parts_.onu_sites[onu]);
}

Scenario Scenario::with_params(const Parameters &params) const {
  ScenarioParts p = parts_;
  p.params        = params;
  return Scenario(std::move(p));
}

// ---- generation ----------------------------------------------------------------

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<Point2D> generate_population(double side_km, double density, std::uint64_t seed) {
  if (!(side_km > 0.0) || !(density > 0.0)) throw std::invalid_argument("generate_population: side and density must be > 0");
  std::mt19937_64                       rng(seed);
  std::poisson_distribution<long long>  count_dist(density * side_km * side_km);
  const long long                       count = count_dist(rng);
  std::uniform_real_distribution<double> coord(0.0, side_km);

  std::vector<Point2D> points;
  points.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    points.push_back({x, y});
  }
  return points;
}

KMeansResult kmeans(const std::vector<Point2D> &points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions &options) {
  if (k == 0) throw std::invalid_argument("kmeans: k must be >= 1");
  if (points.size() < k)
    throw std::invalid_argument("kmeans: " + std::to_string(points.size()) + " points cannot form " +
                                std::to_string(k) + " clusters");

  std::mt19937_64 rng(seed);
  KMeansResult    result;
  result.centroids = plus_plus_seeds(points, k, rng);
  result.labels.assign(points.size(), 0);
  std::vector<double> sq(points.size());

  std::vector<double>      sx(k), sy(k);
  std::vector<std::size_t> count(k);
  for (int it = 0; it < options.max_iterations; ++it) {
    kernels::nearest_centroid(points, result.centroids, result.labels, sq);
    result.inertia_history.push_back(kernels::ordered_sum(sq));
    ++result.iterations;

    std::fill(sx.begin(), sx.end(), 0.0);
    std::fill(sy.begin(), sy.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto c = result.labels[i];
      sx[c] += points[i].x;
      sy[c] += points[i].y;
      ++count[c];
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] == 0) continue;
      const Point2D next{sx[c] / static_cast<double>(count[c]), sy[c] / static_cast<double>(count[c])};
      moved               = std::max(moved, distance(next, result.centroids[c]));
      result.centroids[c] = next;
    }
    if (moved < options.tolerance_km) break;
  }
  // Labels consistent with the returned centroids.
  kernels::nearest_centroid(points, result.centroids, result.labels, sq);
  result.inertia_history.push_back(kernels::ordered_sum(sq));
  return result;
}

std::vector<Point2D> kmeans_sites(const std::vector<Point2D> &points, std::size_t k, std::uint64_t seed) {
  return kmeans(points, k, seed).centroids;
}

std::vector<Point2D> derive_onus(const std::vector<Point2D> &population, std::size_t users_per_onu,
                                 std::uint64_t seed) {
  if (users_per_onu == 0) throw std::invalid_argument("derive_onus: users_per_onu must be >= 1");
  if (population.empty()) return {};
  const std::size_t k = (population.size() + users_per_onu - 1) / users_per_onu;
  return kmeans_sites(population, k, seed);
}

std::vector<Point2D> corner_sites(double side_km) {
  return {{0.0, 0.0}, {side_km, 0.0}, {0.0, side_km}, {side_km, side_km}};
}

PonTopology build_pon(const std::vector<Point2D> &onus, int split_ratio, const std::vector<Point2D> &co_sites,
                      std::uint64_t seed) {
  if (split_ratio != 4 && split_ratio != 8 && split_ratio != 16)
    throw std::invalid_argument("build_pon: split ratio must be 4, 8 or 16");
  if (co_sites.empty()) throw std::invalid_argument("build_pon: at least one CO site is required");

  PonTopology topo;
  const std::size_t nd = onus.size();
  if (nd == 0) {
    topo.rn_adjacency = Matrix<std::uint8_t>(0, 0);
    topo.co_adjacency = Matrix<std::uint8_t>(co_sites.size(), 0);
    return topo;
  }

  const auto        cap    = static_cast<std::size_t>(split_ratio);
  const std::size_t groups = (nd + cap - 1) / cap;
  std::mt19937_64   rng(seed);
  std::vector<Point2D> centres = plus_plus_seeds(onus, groups, rng);

  // Capacitated Lloyd: greedy nearest-first assignment under the split-ratio cap,
  // then centroid update, until the partition stops changing.
  std::vector<std::size_t> owner(nd, groups), previous;
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs(nd * groups);
  for (int it = 0; it < 100; ++it) {
    for (std::size_t d = 0; d < nd; ++d)
      for (std::size_t g = 0; g < groups; ++g) pairs[d * groups + g] = {squared_distance(onus[d], centres[g]), d, g};
    std::sort(pairs.begin(), pairs.end());

    std::fill(owner.begin(), owner.end(), groups);
    std::vector<std::size_t> load(groups, 0);
    for (const auto &[d2, d, g] : pairs) {
      if (owner[d] != groups || load[g] == cap) continue;
      owner[d] = g;
      ++load[g];
    }

    std::vector<double> sx(groups, 0.0), sy(groups, 0.0);
    for (std::size_t d = 0; d < nd; ++d) {
      sx[owner[d]] += onus[d].x;
      sy[owner[d]] += onus[d].y;
    }
    for (std::size_t g = 0; g < groups; ++g) {
      if (load[g] > 0)
        centres[g] = {sx[g] / static_cast<double>(load[g]), sy[g] / static_cast<double>(load[g])};
    }
    if (owner == previous) break;
    previous = owner;
  }

  // A group can only be empty if capacity were slack by a full group, which ceil() rules out.
  topo.rn_sites     = centres;
  topo.rn_adjacency = Matrix<std::uint8_t>(groups, nd, 0);
  topo.co_adjacency = Matrix<std::uint8_t>(co_sites.size(), nd, 0);

  std::vector<std::size_t> feeder(groups, 0);
  for (std::size_t g = 0; g < groups; ++g) {
    double best = squared_distance(centres[g], co_sites[0]);
    for (std::size_t c = 1; c < co_sites.size(); ++c) {
      const double d2 = squared_distance(centres[g], co_sites[c]);
      if (d2 < best) {
        best      = d2;
        feeder[g] = c;
      }
    }
  }
  for (std::size_t d = 0; d < nd; ++d) {
    topo.rn_adjacency(owner[d], d)         = 1;
    topo.co_adjacency(feeder[owner[d]], d) = 1;
  }
  return topo;
}

ScenarioBase make_base(ScenarioLabel label, std::uint64_t seed) {
  ScenarioBase base{label, seed, 0, {}, {}};
  const auto   population = generate_population(kSideKm, label_density(label), stream_seed(seed, 1));
  base.population         = population.size();
  base.onus               = derive_onus(population, kUsersPerOnu, stream_seed(seed, 2));
  const std::size_t k     = std::min(kFieldSites, base.onus.size());
  if (k > 0) base.field_sites = kmeans_sites(base.onus, k, stream_seed(seed, 3));
  return base;
}

Scenario assemble_scenario(const ScenarioBase &base, int split_ratio) {
  ScenarioParts parts;
  parts.label       = base.label;
  parts.seed        = base.seed;
  parts.split_ratio = split_ratio;
  parts.side_km     = kSideKm;
  parts.params      = default_parameters(base.label);
  parts.field_sites = base.field_sites;
  parts.co_sites    = corner_sites(kSideKm);
  parts.onu_sites   = base.onus;

  auto topo          = build_pon(base.onus, split_ratio, parts.co_sites, stream_seed(base.seed, 4));
  parts.rn_sites     = std::move(topo.rn_sites);
  parts.rn_adjacency = std::move(topo.rn_adjacency);
  parts.co_adjacency = std::move(topo.co_adjacency);
  return Scenario(std::move(parts));
}

Scenario make_scenario(ScenarioLabel label, int split_ratio, std::uint64_t seed) {
  return assemble_scenario(make_base(label, seed), split_ratio);
}

} // namespace ponplan
