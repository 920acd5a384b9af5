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

#include "qkad/preprocess.hpp"

#include <cmath>

#include <json.hpp>

#include "qkad/linalg.hpp"

namespace qkad {

ScalerModel fit_standard_scale(const Matrix& x) {
  if (x.rows == 0) throw ConfigError("fit_standard_scale: empty matrix");
  ScalerModel scaler;
  scaler.mean.resize(x.cols);
  scaler.stddev.resize(x.cols);
  for (std::size_t c = 0; c < x.cols; ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) mean += x(i, c);
    mean /= static_cast<double>(x.rows);
    double var = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      const double d = x(i, c) - mean;
      var += d * d;
    }
    var /= static_cast<double>(x.rows);
    scaler.mean[c] = mean;
    scaler.stddev[c] = std::sqrt(var);
    if (scaler.stddev[c] > 1e-12) {
      scaler.kept.push_back(c);
    } else {
      scaler.dropped_features = true;
    }
  }
  if (scaler.kept.empty()) {
    throw NumericError("fit_standard_scale: every feature has zero variance");
  }
  return scaler;
}

Matrix apply_standard_scale(const ScalerModel& scaler, const Matrix& x) {
  if (x.cols != scaler.mean.size()) {
    throw ConfigError("apply_standard_scale: feature dimension mismatch");
  }
  Matrix out(x.rows, scaler.kept.size());
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < scaler.kept.size(); ++k) {
      const std::size_t c = scaler.kept[k];
      out(i, k) = (x(i, c) - scaler.mean[c]) / scaler.stddev[c];
    }
  }
  return out;
}

PcaModel fit_pca(const Matrix& x, std::size_t n_components) {
  if (x.rows < 2) throw ConfigError("fit_pca: need at least 2 rows");
  if (n_components < 1 || n_components > x.cols) {
    throw ConfigError("fit_pca: n_components must be in [1, input dim]");
  }
  PcaModel pca;
  pca.mean.resize(x.cols);
  for (std::size_t c = 0; c < x.cols; ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) mean += x(i, c);
    pca.mean[c] = mean / static_cast<double>(x.rows);
  }

  Matrix cov(x.cols, x.cols);
  for (std::size_t a = 0; a < x.cols; ++a) {
    for (std::size_t b = a; b < x.cols; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) {
        acc += (x(i, a) - pca.mean[a]) * (x(i, b) - pca.mean[b]);
      }
      acc /= static_cast<double>(x.rows - 1);
      cov(a, b) = acc;
      cov(b, a) = acc;
    }
  }

  const SymmetricEigen eigen = jacobi_eigen(cov);
  pca.components = Matrix(n_components, x.cols);
  pca.explained_variance.resize(n_components);
  for (std::size_t k = 0; k < n_components; ++k) {
    pca.explained_variance[k] = eigen.eigenvalues[k];
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double v = std::abs(eigen.eigenvectors(k, c));
      if (v > best) {
        best = v;
        arg = c;
      }
    }
    const double sign = eigen.eigenvectors(k, arg) < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < x.cols; ++c) {
      pca.components(k, c) = sign * eigen.eigenvectors(k, c);
    }
  }
  return pca;
}

Matrix apply_pca(const PcaModel& pca, const Matrix& x) {
  if (x.cols != pca.mean.size()) throw ConfigError("apply_pca: dimension mismatch");
  Matrix out(x.rows, pca.components.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < pca.components.rows; ++k) {
      double acc = 0.0;
      for (std::size_t c = 0; c < x.cols; ++c) {
        acc += (x(i, c) - pca.mean[c]) * pca.components(k, c);
      }
      out(i, k) = acc;
    }
  }
  return out;
}

Matrix scale_by(Matrix x, double factor) {
  for (double& v : x.data) v *= factor;
  return x;
}

PipelineResult preprocess_pipeline(KernelMethod method, DatasetKind kind,
                                   const Matrix& x_train, const Matrix& x_test,
                                   std::size_t n_components) {
  if (x_train.cols != x_test.cols) {
    throw ConfigError("pipeline: train/test dimension mismatch");
  }

  if (kind == DatasetKind::synthetic) {
    if (method != KernelMethod::randomized &&
        method != KernelMethod::randomized_mitigated) {
      return {x_train, x_test};
    }
    const ScalerModel scaler = fit_standard_scale(x_train);
    const double rescale = 1.0 / std::sqrt(static_cast<double>(x_train.cols));
    return {scale_by(apply_standard_scale(scaler, x_train), rescale),
            scale_by(apply_standard_scale(scaler, x_test), rescale)};
  }

  const ScalerModel scaler = fit_standard_scale(x_train);
  Matrix train = apply_standard_scale(scaler, x_train);
  Matrix test = apply_standard_scale(scaler, x_test);
  const PcaModel pca = fit_pca(train, n_components);
  train = apply_pca(pca, train);
  test = apply_pca(pca, test);

  switch (method) {
    case KernelMethod::rbf:
      return {std::move(train), std::move(test)};
    case KernelMethod::fidelity_exact:
    case KernelMethod::inversion:
    case KernelMethod::swap_test:
      // Features feed rotation angles; keep them small.
      return {scale_by(std::move(train), 0.1), scale_by(std::move(test), 0.1)};
    case KernelMethod::randomized:
    case KernelMethod::randomized_mitigated: {
      const ScalerModel post = fit_standard_scale(train);
      const double rescale = 1.0 / std::sqrt(static_cast<double>(n_components));
      return {scale_by(apply_standard_scale(post, train), rescale),
              scale_by(apply_standard_scale(post, test), rescale)};
    }
  }
  throw ConfigError("pipeline: unknown method");
}

std::string scaler_to_json(const ScalerModel& scaler) {
  nlohmann::json j{
      {"mean", scaler.mean},
      {"stddev", scaler.stddev},
      {"kept", scaler.kept},
      {"dropped_features", scaler.dropped_features},
  };
  return j.dump();
}

ScalerModel scaler_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ScalerModel scaler;
    scaler.mean = j.at("mean").get<std::vector<double>>();
    scaler.stddev = j.at("stddev").get<std::vector<double>>();
    scaler.kept = j.at("kept").get<std::vector<std::size_t>>();
    scaler.dropped_features = j.at("dropped_features").get<bool>();
    return scaler;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad scaler record: ") + e.what());
  }
}

std::string pca_to_json(const PcaModel& pca) {
  nlohmann::json j{
      {"mean", pca.mean},
      {"rows", pca.components.rows},
      {"cols", pca.components.cols},
      {"components", pca.components.data},
      {"explained_variance", pca.explained_variance},
  };
  return j.dump();
}

PcaModel pca_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PcaModel pca;
    pca.mean = j.at("mean").get<std::vector<double>>();
    pca.components.rows = j.at("rows").get<std::size_t>();
    pca.components.cols = j.at("cols").get<std::size_t>();
    pca.components.data = j.at("components").get<std::vector<double>>();
    pca.explained_variance = j.at("explained_variance").get<std::vector<double>>();
    return pca;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad pca record: ") + e.what());
  }
}

}  // namespace qkad
