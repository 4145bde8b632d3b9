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

#include <cstdint>
#include <span>

namespace ponplan::kernels {

/*
 * Data-parallel inner loops of scenario generation.
 *
 * Each kernel has an OpenMP version and a serial reference. Both produce
 * bit-identical output for any thread count: every output element is
 * computed by the same arithmetic, and nothing is reduced across threads.
 */

/// labels[i] = index of the nearest centroid (lowest index on ties),
/// sq_dist[i] = its squared distance.
void nearest_centroid(std::span<const Point2D> points, std::span<const Point2D> centroids,
                      std::span<std::uint32_t> labels, std::span<double> sq_dist);
void nearest_centroid_serial(std::span<const Point2D> points, std::span<const Point2D> centroids,
                             std::span<std::uint32_t> labels, std::span<double> sq_dist);

/// out(r, c) = Euclidean distance between rows[r] and cols[c].
Matrix<double> distance_matrix(std::span<const Point2D> rows, std::span<const Point2D> cols);
Matrix<double> distance_matrix_serial(std::span<const Point2D> rows, std::span<const Point2D> cols);

/// Sum of values in index order. Kept serial so the result does not depend on threads.
double ordered_sum(std::span<const double> values);

int max_threads();

} // namespace ponplan::kernels
