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

#include "ponplan/kernels.hpp"

#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ponplan::kernels {

namespace {

inline void nearest_one(const Point2D &p, std::span<const Point2D> centroids, std::uint32_t &label, double &best) {
  best  = std::numeric_limits<double>::infinity();
  label = 0;
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(p, centroids[c]);
    if (d < best) {
      best  = d;
      label = static_cast<std::uint32_t>(c);
    }
  }
}

void check_sizes(std::span<const Point2D> points, std::span<const Point2D> centroids, std::span<std::uint32_t> labels,
                 std::span<double> sq_dist) {
  if (centroids.empty()) throw std::invalid_argument("nearest_centroid: no centroids");
  if (labels.size() != points.size() || sq_dist.size() != points.size())
    throw std::invalid_argument("nearest_centroid: output size mismatch");
}

} // namespace

void nearest_centroid(std::span<const Point2D> points, std::span<const Point2D> centroids,
                      std::span<std::uint32_t> labels, std::span<double> sq_dist) {
  check_sizes(points, centroids, labels, sq_dist);
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    nearest_one(points[i], centroids, labels[i], sq_dist[i]);
  }
}

void nearest_centroid_serial(std::span<const Point2D> points, std::span<const Point2D> centroids,
                             std::span<std::uint32_t> labels, std::span<double> sq_dist) {
  check_sizes(points, centroids, labels, sq_dist);
  for (std::size_t i = 0; i < points.size(); ++i) {
    nearest_one(points[i], centroids, labels[i], sq_dist[i]);
  }
}

Matrix<double> distance_matrix(std::span<const Point2D> rows, std::span<const Point2D> cols) {
  Matrix<double> out(rows.size(), cols.size());
  const auto     n = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = distance(rows[r], cols[c]);
  }
  return out;
}

Matrix<double> distance_matrix_serial(std::span<const Point2D> rows, std::span<const Point2D> cols) {
  Matrix<double> out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = distance(rows[r], cols[c]);
  }
  return out;
}

double ordered_sum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace ponplan::kernels
