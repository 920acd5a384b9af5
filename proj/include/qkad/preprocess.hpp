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

// Per-feature standardization fitted on training rows only. Zero-variance
// features are dropped (with a flag) rather than divided away.
struct ScalerModel {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<std::size_t> kept;
  bool dropped_features = false;
};

ScalerModel fit_standard_scale(const Matrix& x);
Matrix apply_standard_scale(const ScalerModel& scaler, const Matrix& x);

// PCA via eigendecomposition of the training covariance; components sorted by
// descending eigenvalue, each sign-fixed so its largest-magnitude coordinate
// is positive.
struct PcaModel {
  std::vector<double> mean;
  Matrix components;  // n_components x input dim, row-orthonormal
  std::vector<double> explained_variance;
};

PcaModel fit_pca(const Matrix& x, std::size_t n_components);
Matrix apply_pca(const PcaModel& pca, const Matrix& x);

Matrix scale_by(Matrix x, double factor);

enum class DatasetKind { synthetic, creditcard };

// Method-specific preprocessing recipes, fitted on the training rows:
//   real data:  rbf                      -> scale, PCA(M)
//               fidelity/inversion/swap  -> scale, PCA(M), x0.1
//               randomized               -> scale, PCA(M), scale, x1/sqrt(M)
//   synthetic:  randomized               -> scale, x1/sqrt(M)
//               everything else          -> unchanged
struct PipelineResult {
  Matrix train;
  Matrix test;
};

PipelineResult preprocess_pipeline(KernelMethod method, DatasetKind kind,
                                   const Matrix& x_train, const Matrix& x_test,
                                   std::size_t n_components);

// Fitted transforms serialize to JSON and reapply bit-identically.
std::string scaler_to_json(const ScalerModel& scaler);
ScalerModel scaler_from_json(const std::string& text);
std::string pca_to_json(const PcaModel& pca);
PcaModel pca_from_json(const std::string& text);

}  // namespace qkad
