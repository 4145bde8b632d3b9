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
#include "ponplan/io.hpp"
#include "ponplan/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>

using namespace ponplan;

namespace {

Point2D mean_of(const std::vector<Point2D> &pts) {
  Point2D m{0.0, 0.0};
  for (const auto &p : pts) {
    m.x += p.x;
    m.y += p.y;
  }
  return {m.x / static_cast<double>(pts.size()), m.y / static_cast<double>(pts.size())};
}

std::size_t nearest(const std::vector<Point2D> &sites, Point2D p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (squared_distance(sites[i], p) < squared_distance(sites[best], p)) best = i;
  return best;
}

std::filesystem::path temp_file(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / "ponplan_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

} // namespace

TEST_CASE("population count follows the Poisson mean") {
  constexpr int    kSeeds = 1000;
  const double     mean   = 1500.0 * 25.0;
  std::vector<double> counts;
  for (int s = 0; s < kSeeds; ++s) counts.push_back(static_cast<double>(generate_population(5.0, 1500.0, s).size()));
  const double avg = std::accumulate(counts.begin(), counts.end(), 0.0) / kSeeds;
  double       var = 0.0;
  for (double c : counts) var += (c - avg) * (c - avg);
  var /= kSeeds - 1;
  // Standard error of the mean of 1000 Poisson(37500) draws.
  CHECK(std::abs(avg - mean) <= 3.0 * std::sqrt(mean / kSeeds));
  CHECK(std::abs(avg - mean) <= 3.0 * std::sqrt(mean));
  CHECK(var == doctest::Approx(mean).epsilon(0.15));
}

TEST_CASE("population points lie in the square and depend only on the seed") {
  const auto a = generate_population(5.0, 400.0, 9);
  const auto b = generate_population(5.0, 400.0, 9);
  const auto c = generate_population(5.0, 400.0, 10);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto &p : a) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 5.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 5.0);
  }
  // Uniformity: the mean of ~10000 uniform points sits near the center.
  const auto m = mean_of(a);
  CHECK(m.x == doctest::Approx(2.5).epsilon(0.02));
  CHECK(m.y == doctest::Approx(2.5).epsilon(0.02));
}

TEST_CASE("population edge cases") {
  CHECK(generate_population(5.0, 1e-9, 1).empty());
  CHECK_THROWS_AS(generate_population(0.0, 10.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_population(5.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_population(5.0, -1.0, 1), std::invalid_argument);
}

TEST_CASE("label densities and fiber prices") {
  CHECK(label_density(ScenarioLabel::Urban) == 4000.0);
  CHECK(label_density(ScenarioLabel::Suburban) == 2500.0);
  CHECK(label_density(ScenarioLabel::Rural) == 1500.0);
  CHECK(default_parameters(ScenarioLabel::Urban).eta == 50.0);
  CHECK(default_parameters(ScenarioLabel::Suburban).eta == 35.0);
  CHECK(default_parameters(ScenarioLabel::Rural).eta == 20.0);
  const auto p = default_parameters(ScenarioLabel::Urban);
  CHECK(p.alpha == 1.0);
  CHECK(p.xi_field == 4.0);
  CHECK(p.xi_rn == 4.0);
  CHECK(p.xi_co == 2.0);
  CHECK(p.l_max_km == 4.0);
  CHECK(p.sigma_ul == 8e6);
  CHECK(p.sigma_dl == 8e3);
  CHECK(p.k_max == 10);
}

TEST_CASE("parameter validation names the field") {
  Parameters p;
  p.beta_ul = p.bw_co;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("beta_ul"), std::invalid_argument);
  p         = Parameters{};
  p.d_qos   = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("d_qos"), std::invalid_argument);
  p       = Parameters{};
  p.k_max = 0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("k_max"), std::invalid_argument);
}

TEST_CASE("kmeans closed forms") {
  const std::vector<Point2D> pts = {{0.0, 0.0}, {1.0, 0.0}, {4.0, 3.0}, {2.0, 2.0}, {0.5, 4.5}};
  SUBCASE("k = 1 gives the mean") {
    const auto c = kmeans_sites(pts, 1, 7);
    REQUIRE(c.size() == 1);
    const auto m = mean_of(pts);
    CHECK(c[0].x == doctest::Approx(m.x).epsilon(1e-12));
    CHECK(c[0].y == doctest::Approx(m.y).epsilon(1e-12));
  }
  SUBCASE("four corners with k = 4 are a fixed point") {
    const std::vector<Point2D> corners = {{0.0, 0.0}, {5.0, 0.0}, {0.0, 5.0}, {5.0, 5.0}};
    auto                       c       = kmeans_sites(corners, 4, 3);
    std::sort(c.begin(), c.end(), [](auto a, auto b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
    auto sorted = corners;
    std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
    CHECK(c == sorted);
  }
  SUBCASE("too few points") { CHECK_THROWS_AS(kmeans_sites(pts, 6, 1), std::invalid_argument); }
}

TEST_CASE("kmeans inertia never increases and labels are nearest centroids") {
  const auto pts = generate_population(5.0, 200.0, 17);
  const auto r   = kmeans(pts, 12, 5);
  REQUIRE(r.inertia_history.size() >= 1);
  for (std::size_t i = 1; i < r.inertia_history.size(); ++i)
    CHECK(r.inertia_history[i] <= r.inertia_history[i - 1] * (1.0 + 1e-12));
  CHECK(r.iterations <= 100);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(squared_distance(pts[i], r.centroids[r.labels[i]]) ==
          doctest::Approx(squared_distance(pts[i], r.centroids[nearest(r.centroids, pts[i])])).epsilon(1e-12));
}

TEST_CASE("derive_onus") {
  SUBCASE("ceil division") {
    std::vector<Point2D> pts(2001, Point2D{1.0, 1.0});
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {0.001 * static_cast<double>(i % 1000), 0.002 * static_cast<double>(i / 1000)};
    CHECK(derive_onus(pts, 1000, 1).size() == 3);
    CHECK(derive_onus(pts, 2001, 1).size() == 1);
    CHECK(derive_onus(pts, 1, 1).size() == 2001);
  }
  SUBCASE("single point") {
    const auto onus = derive_onus({{3.25, 1.5}}, 1000, 4);
    REQUIRE(onus.size() == 1);
    CHECK(onus[0] == Point2D{3.25, 1.5});
  }
  SUBCASE("empty population") { CHECK(derive_onus({}, 1000, 4).empty()); }
  SUBCASE("2500 uniform points give 3 ONUs partitioning the square") {
    std::mt19937_64                        rng(11);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::vector<Point2D>                   pts(2500);
    for (auto &p : pts) p = {u(rng), u(rng)};
    const auto onus = derive_onus(pts, 1000, 2);
    REQUIRE(onus.size() == 3);
    // Independent check: the ONUs are the centroids of their own Voronoi cells.
    std::vector<Point2D>     sums(3, Point2D{0.0, 0.0});
    std::vector<std::size_t> sizes(3, 0);
    for (const auto &p : pts) {
      const auto k = nearest(onus, p);
      sums[k].x += p.x;
      sums[k].y += p.y;
      ++sizes[k];
    }
    CHECK(sizes[0] + sizes[1] + sizes[2] == 2500);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(sizes[k] > 0);
      CHECK(sums[k].x / static_cast<double>(sizes[k]) == doctest::Approx(onus[k].x).epsilon(1e-5));
      CHECK(sums[k].y / static_cast<double>(sizes[k]) == doctest::Approx(onus[k].y).epsilon(1e-5));
    }
  }
}

TEST_CASE("build_pon") {
  const auto corners = corner_sites(5.0);
  SUBCASE("8 balanced ONUs at split 4") {
    const std::vector<Point2D> onus = {{0.5, 0.5}, {0.6, 0.5}, {0.5, 0.6}, {0.6, 0.6},
                                       {4.5, 4.5}, {4.6, 4.5}, {4.5, 4.6}, {4.6, 4.6}};
    const auto pon = build_pon(onus, 4, corners, 1);
    REQUIRE(pon.rn_sites.size() == 2);
    for (std::size_t b = 0; b < 2; ++b) {
      int load = 0;
      for (std::size_t d = 0; d < onus.size(); ++d) load += pon.rn_adjacency(b, d);
      CHECK(load == 4);
    }
  }
  SUBCASE("single ONU") {
    const auto pon = build_pon({{2.0, 3.0}}, 16, corners, 1);
    REQUIRE(pon.rn_sites.size() == 1);
    CHECK(pon.rn_sites[0] == Point2D{2.0, 3.0});
    CHECK(pon.rn_adjacency(0, 0) == 1);
  }
  SUBCASE("rejects unsupported split ratios") {
    CHECK_THROWS_AS(build_pon({{1.0, 1.0}}, 5, corners, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_pon({{1.0, 1.0}}, 4, {}, 1), std::invalid_argument);
  }
}

TEST_CASE("generated scenarios satisfy the tree-and-branch invariants") {
  const auto base = make_base(ScenarioLabel::Urban, 42);
  for (int split : {4, 8, 16}) {
    const auto s = assemble_scenario(base, split);
    CAPTURE(split);
    CHECK(s.num_co() == 4);
    CHECK(s.num_field() == 20);
    CHECK(s.num_rn() == (s.num_onu() + split - 1) / split);
    for (std::size_t d = 0; d < s.num_onu(); ++d) {
      int rn = 0, co = 0;
      for (std::size_t b = 0; b < s.num_rn(); ++b) rn += s.rn_adjacent(b, d);
      for (std::size_t c = 0; c < s.num_co(); ++c) co += s.co_adjacent(c, d);
      CHECK(rn == 1);
      CHECK(co == 1);
      // The CO of an ONU is the CO nearest its RN.
      CHECK(s.co_of(d) == nearest(s.co_sites(), s.rn_sites()[s.rn_of(d)]));
    }
    for (std::size_t b = 0; b < s.num_rn(); ++b) {
      int load = 0;
      for (std::size_t d = 0; d < s.num_onu(); ++d) load += s.rn_adjacent(b, d);
      CHECK(load <= split);
    }
    for (std::size_t a = 0; a < s.num_field(); ++a)
      for (std::size_t d = 0; d < s.num_onu(); ++d)
        CHECK(std::abs(s.field_distance(a, d) - std::hypot(s.field_sites()[a].x - s.onu_sites()[d].x,
                                                            s.field_sites()[a].y - s.onu_sites()[d].y)) <= 1e-9);
  }
  // About 100 ONUs for 100000 people.
  CHECK(base.onus.size() == (base.population + kUsersPerOnu - 1) / kUsersPerOnu);
  CHECK(base.onus.size() >= 97);
  CHECK(base.onus.size() <= 103);
}

TEST_CASE("make_scenario shapes per label") {
  const auto urban = make_scenario(ScenarioLabel::Urban, 4, 42);
  CHECK(urban.params().eta == 50.0);
  CHECK(urban.num_onu() == 100);
  CHECK(urban.num_rn() == 25);
  const auto rural = make_scenario(ScenarioLabel::Rural, 16, 42);
  CHECK(rural.params().eta == 20.0);
  CHECK(rural.num_onu() >= 36);
  CHECK(rural.num_onu() <= 40);
  CHECK(rural.num_rn() == 3);
}

TEST_CASE("scenario generation is deterministic") {
  const auto a = serialize_scenario(make_scenario(ScenarioLabel::Suburban, 8, 3));
  const auto b = serialize_scenario(make_scenario(ScenarioLabel::Suburban, 8, 3));
  CHECK(a == b);
  CHECK(a != serialize_scenario(make_scenario(ScenarioLabel::Suburban, 8, 4)));
  CHECK(stream_seed(3, 1) != stream_seed(3, 2));
  CHECK(stream_seed(3, 1) == stream_seed(3, 1));
}

TEST_CASE("scenario files round-trip") {
  const auto s    = make_scenario(ScenarioLabel::Rural, 8, 5);
  const auto path = temp_file("roundtrip.json");
  save_scenario(s, path);
  const auto back = load_scenario(path);
  CHECK(back == s);
  CHECK(serialize_scenario(back) == serialize_scenario(s));
  const auto j = read_json(path);
  CHECK(j.at("version") == kScenarioFormatVersion);
  CHECK(j.at("params").contains("sigma_ul_bits"));
  CHECK_FALSE(j.contains("field_distance"));
}

TEST_CASE("loading rejects broken scenarios") {
  auto j = scenario_to_json(ponplan::testing::two_onu_instance());
  SUBCASE("ONU adjacent to two RNs") {
    j["rn_sites"].push_back({{"x_km", 2.0}, {"y_km", 2.0}});
    j["rn_adjacency"].push_back({1, 0});
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("adjacent to 2 RNs"), ScenarioError);
  }
  SUBCASE("missing params field") {
    j["params"].erase("eta_cost_per_km");
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("params.eta_cost_per_km"), ScenarioError);
  }
  SUBCASE("missing version") {
    j.erase("version");
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("version"), ScenarioError);
  }
  SUBCASE("site outside the square") {
    j["onu_sites"][0]["x_km"] = 7.0;
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);
  }
  SUBCASE("RN over capacity") {
    j["split_ratio"] = 1;
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("RN 0"), ScenarioError);
  }
  SUBCASE("malformed file") {
    const auto path = temp_file("broken.json");
    write_text(path, "{ not json");
    CHECK_THROWS_AS(load_scenario(path), ScenarioError);
  }
}
