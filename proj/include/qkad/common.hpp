/*
 * Copyright 2026 the qkad authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkad {

// Error taxonomy. The CLI maps these onto exit codes 2/3/4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Class labels: anomaly is the positive class for all metrics.
inline constexpr int kNormal = +1;
inline constexpr int kAnomaly = -1;

// Dense row-major matrix of doubles. Rows are samples throughout.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data.data() + r * cols, cols);
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data.data() + r * cols, cols);
  }

  std::size_t size() const { return rows * cols; }
  bool empty() const { return data.empty(); }

  // New matrix holding the selected rows, in the given order.
  Matrix take_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      auto src = row(indices[k]);
      std::copy(src.begin(), src.end(), out.row(k).begin());
    }
    return out;
  }
};

inline void require_finite(const Matrix& m, const std::string& what) {
  for (double v : m.data) {
    if (!std::isfinite(v)) throw NumericError(what + ": non-finite entry");
  }
}

}  // namespace qkad
