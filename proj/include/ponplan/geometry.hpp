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

#include <cmath>
#include <cstddef>
#include <vector>

namespace ponplan {

/// A location in the planning area. Both coordinates are kilometers.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D &, const Point2D &) = default;
};

inline double squared_distance(const Point2D &a, const Point2D &b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point2D &a, const Point2D &b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Dense row-major matrix. Used for adjacency and distance tables.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T *data() { return data_.data(); }
  const T *data() const { return data_.data(); }

  friend bool operator==(const Matrix &, const Matrix &) = default;

 private:
  std::size_t    rows_ = 0;
  std::size_t    cols_ = 0;
  std::vector<T> data_;
};

} // namespace ponplan
