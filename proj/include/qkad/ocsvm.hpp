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

#include "qkad/kernels.hpp"

namespace qkad {

// One-class SVM in its standard dual form over a precomputed kernel:
//   min_a 1/2 a^T G a   s.t.  0 <= a_i <= 1/(nu*N),  sum a_i = 1.
struct OcSvmModel {
  double nu = 0.1;
  double rho = 0.0;
  std::vector<double> alphas;
  std::vector<std::size_t> support_indices;  // alpha_i > 1e-8
  double dual_objective = 0.0;
  // Set when the training matrix looks indefinite (min eigenvalue < -1e-6,
  // power-iteration estimate). Shot-noise kernels trip this routinely; the
  // solver still runs, matching training on sampled kernels as-is.
  bool indefinite_kernel_warning = false;
  KernelMethod kernel_method = KernelMethod::rbf;
  KernelMeta kernel_meta;

  std::size_t n_train() const { return alphas.size(); }
};

struct SolveOptions {
  double tolerance = 1e-6;
  std::int64_t max_iterations = 1'000'000;
  bool spectrum_check = true;
};

// SMO-style pairwise coordinate descent. Working pair = maximal KKT
// violation, lowest index on ties. rho = median of (G a)_i over margin
// support vectors, midpoint of the KKT bounds when none exist.
OcSvmModel solve_dual(const KernelMatrix& g, double nu, SolveOptions options = {});

// score_j = sum_i alpha_i K(j, i) - rho. Rows of k_cross are test points.
std::vector<double> decision_scores(const OcSvmModel& model,
                                    const KernelMatrix& k_cross);

// Offset-free variant (ranking metrics do not depend on rho).
std::vector<double> sample_scores(const OcSvmModel& model,
                                  const KernelMatrix& k_cross);

// Negative score -> anomaly (-1); zero or positive -> normal (+1).
std::vector<int> predict(std::span<const double> scores);

std::string model_to_json(const OcSvmModel& model);
OcSvmModel model_from_json(const std::string& text);
void save_model(const std::string& path, const OcSvmModel& model);
OcSvmModel load_model(const std::string& path);

}  // namespace qkad
