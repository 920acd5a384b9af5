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

#include <string>

#include "qkad/common.hpp"
#include "qkad/feature_map.hpp"
#include "qkad/rng.hpp"

namespace qkad {

enum class KernelMethod {
  rbf,
  fidelity_exact,
  inversion,
  swap_test,
  randomized,
  randomized_mitigated,
};

std::string method_name(KernelMethod method);
KernelMethod method_from_name(const std::string& name);

struct KernelMeta {
  std::uint64_t seed = 0;
  std::int64_t shots = 0;  // per circuit; 0 for exact methods
  int settings = 0;        // randomized-measurement settings r
  double gamma = 0.0;      // rbf only
};

// Pairwise similarity matrix, rows = left set, cols = right set, with the
// provenance needed to reproduce it and the counters consumed by the
// complexity accounting.
struct KernelMatrix {
  Matrix values;
  KernelMethod method = KernelMethod::rbf;
  KernelMeta meta;
  // Distinct entries actually evaluated: n(n+1)/2 for a mirrored square
  // training matrix, rows*cols otherwise.
  std::uint64_t entry_evaluations = 0;
  // Total measurement shots spent building the matrix (0 for exact methods).
  std::uint64_t simulated_shots = 0;

  std::size_t rows() const { return values.rows; }
  std::size_t cols() const { return values.cols; }
  double at(std::size_t i, std::size_t j) const { return values(i, j); }
  double& at(std::size_t i, std::size_t j) { return values(i, j); }
};

struct RbfConfig {
  double gamma = 1.0;
};

// The "scale" bandwidth heuristic: 1 / (n_features * pooled variance of all
// entries of X).
double gamma_scale(const Matrix& x_train);

// entry (i,j) = exp(-gamma * ||X_i - Y_j||^2)
KernelMatrix rbf_matrix(const Matrix& x, const Matrix& y, const RbfConfig& config);

// entry (i,j) = |<Phi(Y_j)|Phi(X_i)>|^2. Pass the same object twice for a
// training matrix; only the upper triangle is computed and then mirrored.
KernelMatrix fidelity_exact_matrix(const Matrix& x, const Matrix& y,
                                   const FeatureMapConfig& fmap);

// Inversion test: frequency of the all-zeros outcome after
// U_phi(Y_j)^dag U_phi(X_i) |0>, sampled with `shots` shots per entry.
// Entry streams derive from (seed, i, j): evaluation order never matters.
KernelMatrix inversion_test_matrix(const Matrix& x, const Matrix& y,
                                   const FeatureMapConfig& fmap, std::int64_t shots,
                                   std::uint64_t seed);

// Swap test: estimate 2*p0 - 1 with p0 the ancilla-zero frequency. Simulated
// through the analytic ancilla probability (1+F)/2 plus binomial sampling;
// output clamped to [0, 1].
KernelMatrix swap_test_matrix(const Matrix& x, const Matrix& y,
                              const FeatureMapConfig& fmap, std::int64_t shots,
                              std::uint64_t seed);

// Materialized (2d+1)-qubit swap-test circuit; returns the exact ancilla-zero
// probability. Cross-check for the analytic shortcut, d <= 4.
double swap_test_zero_prob_full_circuit(std::span<const double> x,
                                        std::span<const double> y,
                                        const FeatureMapConfig& fmap);

}  // namespace qkad
