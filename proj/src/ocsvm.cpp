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

#include "qkad/ocsvm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qkad/linalg.hpp"

namespace qkad {

namespace {

constexpr double kAlphaSlack = 1e-8;

double compute_rho(const std::vector<double>& alpha, const std::vector<double>& grad,
                   double box) {
  std::vector<double> margin;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > kAlphaSlack && alpha[i] < box - kAlphaSlack) {
      margin.push_back(grad[i]);
    } else if (alpha[i] <= kAlphaSlack) {
      upper = std::min(upper, grad[i]);  // alpha can only grow: g_i >= rho
    } else {
      lower = std::max(lower, grad[i]);  // alpha at the box: g_i <= rho
    }
  }
  if (!margin.empty()) {
    std::sort(margin.begin(), margin.end());
    const std::size_t m = margin.size();
    return (m % 2 == 1) ? margin[m / 2] : 0.5 * (margin[m / 2 - 1] + margin[m / 2]);
  }
  if (std::isfinite(lower) && std::isfinite(upper)) return 0.5 * (lower + upper);
  if (std::isfinite(lower)) return lower;
  return upper;
}

}  // namespace

OcSvmModel solve_dual(const KernelMatrix& g, double nu, SolveOptions options) {
  const std::size_t n = g.rows();
  if (g.rows() != g.cols()) throw ConfigError("solve_dual: kernel matrix not square");
  if (!(nu > 0.0) || nu > 1.0) throw ConfigError("solve_dual: nu must be in (0, 1]");
  require_finite(g.values, "solve_dual kernel");

  const double box = 1.0 / (nu * static_cast<double>(n));

  // Feasible start: fill the box left to right until mass 1 is placed.
  std::vector<double> alpha(n, 0.0);
  double remaining = 1.0;
  for (std::size_t i = 0; i < n && remaining > 0.0; ++i) {
    alpha[i] = std::min(box, remaining);
    remaining -= alpha[i];
  }

  // grad_i = (G alpha)_i, maintained incrementally from the touched rows.
  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = g.values.data.data() + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * alpha[j];
    grad[i] = acc;
  }

  std::int64_t iterations = 0;
  for (; iterations < options.max_iterations; ++iterations) {
    // Most violating pair: grow where the gradient is smallest, shrink where
    // it is largest. Strict comparisons keep the lowest index on ties.
    std::size_t up = n, down = n;
    double g_up = std::numeric_limits<double>::infinity();
    double g_down = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (alpha[k] < box - kAlphaSlack && grad[k] < g_up) {
        g_up = grad[k];
        up = k;
      }
      if (alpha[k] > kAlphaSlack && grad[k] > g_down) {
        g_down = grad[k];
        down = k;
      }
    }
    if (up == n || down == n || g_down - g_up <= options.tolerance) break;

    const double* row_up = g.values.data.data() + up * n;
    const double* row_down = g.values.data.data() + down * n;
    double quad = row_up[up] + row_down[down] - 2.0 * row_up[down];
    if (quad <= 1e-12) quad = 1e-12;  // indefinite or flat direction: full step
    double step = (g_down - g_up) / quad;
    step = std::min(step, box - alpha[up]);
    step = std::min(step, alpha[down]);
    if (step <= 0.0) break;

    alpha[up] += step;
    alpha[down] -= step;
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] += step * (row_up[k] - row_down[k]);
    }
  }

  OcSvmModel model;
  model.nu = nu;
  model.alphas = std::move(alpha);
  model.kernel_method = g.method;
  model.kernel_meta = g.meta;

  double objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) objective += grad[i] * model.alphas[i];
  model.dual_objective = 0.5 * objective;

  model.rho = compute_rho(model.alphas, grad, box);
  for (std::size_t i = 0; i < n; ++i) {
    if (model.alphas[i] > kAlphaSlack) model.support_indices.push_back(i);
  }
  if (options.spectrum_check) {
    model.indefinite_kernel_warning = min_eigenvalue_estimate(g.values) < -1e-6;
  }
  return model;
}

std::vector<double> sample_scores(const OcSvmModel& model, const KernelMatrix& k_cross) {
  if (k_cross.cols() != model.n_train()) {
    throw ConfigError("decision scores: kernel columns do not match training size");
  }
  std::vector<double> scores(k_cross.rows(), 0.0);
  for (std::size_t j = 0; j < k_cross.rows(); ++j) {
    const double* row = k_cross.values.data.data() + j * k_cross.cols();
    double acc = 0.0;
    for (std::size_t i = 0; i < k_cross.cols(); ++i) acc += model.alphas[i] * row[i];
    scores[j] = acc;
  }
  return scores;
}

std::vector<double> decision_scores(const OcSvmModel& model,
                                    const KernelMatrix& k_cross) {
  std::vector<double> scores = sample_scores(model, k_cross);
  for (double& s : scores) s -= model.rho;
  return scores;
}

std::vector<int> predict(std::span<const double> scores) {
  std::vector<int> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    labels[i] = scores[i] < 0.0 ? kAnomaly : kNormal;
  }
  return labels;
}

std::string model_to_json(const OcSvmModel& model) {
  nlohmann::json j{
      {"nu", model.nu},
      {"rho", model.rho},
      {"alphas", model.alphas},
      {"support_indices", model.support_indices},
      {"dual_objective", model.dual_objective},
      {"indefinite_kernel_warning", model.indefinite_kernel_warning},
      {"kernel",
       {{"method", method_name(model.kernel_method)},
        {"seed", model.kernel_meta.seed},
        {"shots", model.kernel_meta.shots},
        {"settings", model.kernel_meta.settings},
        {"gamma", model.kernel_meta.gamma}}},
  };
  return j.dump(2);
}

OcSvmModel model_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    OcSvmModel model;
    model.nu = j.at("nu").get<double>();
    model.rho = j.at("rho").get<double>();
    model.alphas = j.at("alphas").get<std::vector<double>>();
    model.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
    model.dual_objective = j.value("dual_objective", 0.0);
    model.indefinite_kernel_warning = j.value("indefinite_kernel_warning", false);
    const auto& k = j.at("kernel");
    model.kernel_method = method_from_name(k.at("method").get<std::string>());
    model.kernel_meta.seed = k.value("seed", std::uint64_t{0});
    model.kernel_meta.shots = k.value("shots", std::int64_t{0});
    model.kernel_meta.settings = k.value("settings", 0);
    model.kernel_meta.gamma = k.value("gamma", 0.0);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad model record: ") + e.what());
  }
}

void save_model(const std::string& path, const OcSvmModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << model_to_json(model) << '\n';
  if (!out) throw DataError("failed writing model: " + path);
}

OcSvmModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace qkad
