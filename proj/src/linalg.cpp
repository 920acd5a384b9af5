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

#include "qkad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qkad {

SymmetricEigen jacobi_eigen(const Matrix& input, int max_sweeps, double tol) {
  if (input.rows != input.cols) throw ConfigError("jacobi_eigen: matrix not square");
  const std::size_t n = input.rows;
  Matrix a = input;
  Matrix v(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= tol) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    out.eigenvalues[r] = a(order[r], order[r]);
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors(r, k) = v(k, order[r]);
  }
  return out;
}

namespace {

// y = M x for symmetric M; returns dominant Rayleigh quotient after iterating.
double power_iterate(const Matrix& m, std::vector<double>& x, int iterations) {
  const std::size_t n = m.rows;
  std::vector<double> y(n);
  double rayleigh = 0.0;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      const double* row = m.data.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    double nrm = 0.0;
    for (double v : y) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-300) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * y[i];
    rayleigh = dot;  // x is unit length
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
  }
  return rayleigh;
}

std::vector<double> start_vector(std::size_t n) {
  std::vector<double> x(n);
  double nrm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 1.0 + 0.3 * std::sin(static_cast<double>(i) * 2.399963);
    nrm += x[i] * x[i];
  }
  nrm = std::sqrt(nrm);
  for (double& v : x) v /= nrm;
  return x;
}

}  // namespace

double min_eigenvalue_estimate(const Matrix& a, int iterations) {
  if (a.rows != a.cols) throw ConfigError("min_eigenvalue_estimate: matrix not square");
  const std::size_t n = a.rows;
  if (n == 0) return 0.0;
  if (n == 1) return a(0, 0);

  auto x = start_vector(n);
  const double dominant = power_iterate(a, x, iterations);
  const double shift = std::abs(dominant) + 1e-12;

  // B = shift*I - A has dominant eigenvalue shift - lambda_min >= 0.
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b(i, j) = -a(i, j);
    b(i, i) += shift;
  }
  auto x2 = start_vector(n);
  const double top = power_iterate(b, x2, iterations);
  return shift - top;
}

}  // namespace qkad
