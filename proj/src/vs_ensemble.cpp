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

#include "qkad/vs_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qkad {

std::string combine_name(Combine combine) {
  return combine == Combine::average ? "average" : "maximum";
}

Combine combine_from_name(const std::string& name) {
  if (name == "average") return Combine::average;
  if (name == "maximum" || name == "max") return Combine::maximum;
  throw ConfigError("unknown combine mode: " + name);
}

VsPlan make_plan(std::size_t n, std::size_t n_min, std::size_t n_max,
                 std::uint64_t seed, std::size_t components_override) {
  if (n_min < 1 || n_min > n_max) {
    throw ConfigError("vs plan: need 1 <= n_min <= n_max");
  }
  if (n < n_max) {
    throw ConfigError("vs plan: training size " + std::to_string(n) +
                      " smaller than n_max " + std::to_string(n_max));
  }
  VsPlan plan;
  plan.n = n;
  plan.n_min = n_min;
  plan.n_max = n_max;
  plan.c = components_override > 0 ? components_override : std::max<std::size_t>(1, n / 100);

  RandomStream size_rng(derive_seed(seed, stream::kPlanSizes));
  plan.sizes.reserve(plan.c);
  for (std::size_t k = 0; k < plan.c; ++k) {
    plan.sizes.push_back(static_cast<std::size_t>(size_rng.uniform_int(n_min, n_max)));
  }

  // Partial Fisher-Yates per component: without replacement inside a subset,
  // independent draws across components.
  plan.subsets.resize(plan.c);
  for (std::size_t k = 0; k < plan.c; ++k) {
    RandomStream rng(derive_seed(seed, stream::kPlanSubset, k));
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    const std::size_t take = plan.sizes[k];
    for (std::size_t t = 0; t < take; ++t) {
      const std::size_t pick =
          t + static_cast<std::size_t>(rng.uniform_int(0, pool.size() - 1 - t));
      std::swap(pool[t], pool[pick]);
    }
    plan.subsets[k].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return plan;
}

VsEnsemble fit(const VsPlan& plan, const Matrix& x_train, const KernelFn& kernel_fn,
               double nu, std::uint64_t seed, Combine combine) {
  if (plan.n != x_train.rows) {
    throw ConfigError("vs fit: plan was made for " + std::to_string(plan.n) +
                      " rows, got " + std::to_string(x_train.rows));
  }
  VsEnsemble ensemble;
  ensemble.combine = combine;
  ensemble.nu = nu;
  ensemble.components.reserve(plan.c);
  for (std::size_t k = 0; k < plan.c; ++k) {
    VsComponent component;
    component.subset = plan.subsets[k];
    component.train_data = x_train.take_rows(component.subset);
    component.seed = derive_seed(seed, stream::kComponent, k);
    try {
      const KernelMatrix g =
          kernel_fn(component.train_data, component.train_data, component.seed);
      ensemble.train_kernel_entries += g.rows() * g.cols();
      ensemble.train_kernel_evaluations += g.entry_evaluations;
      ensemble.train_simulated_shots += g.simulated_shots;
      component.model = solve_dual(g, nu);
    } catch (const std::exception& e) {
      throw NumericError("vs component " + std::to_string(k) + ": " + e.what());
    }
    ensemble.components.push_back(std::move(component));
  }
  return ensemble;
}

std::vector<double> normalize_scores(std::span<const double> raw) {
  const std::size_t n = raw.size();
  double mean = 0.0;
  for (double v : raw) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : raw) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / static_cast<double>(n));
  std::vector<double> out(n, 0.0);
  if (stddev < 1e-12) return out;
  for (std::size_t i = 0; i < n; ++i) out[i] = (raw[i] - mean) / stddev;
  return out;
}

std::vector<double> combine_scores(const Matrix& per_component, Combine combine) {
  if (per_component.rows == 0) throw ConfigError("combine_scores: no components");
  std::vector<double> out(per_component.cols, 0.0);
  if (combine == Combine::average) {
    for (std::size_t k = 0; k < per_component.rows; ++k) {
      for (std::size_t j = 0; j < per_component.cols; ++j) {
        out[j] += per_component(k, j);
      }
    }
    for (double& v : out) v /= static_cast<double>(per_component.rows);
  } else {
    for (std::size_t j = 0; j < per_component.cols; ++j) {
      double best = per_component(0, j);
      for (std::size_t k = 1; k < per_component.rows; ++k) {
        best = std::max(best, per_component(k, j));
      }
      out[j] = best;
    }
  }
  return out;
}

VsScores score_detailed(const VsEnsemble& ensemble, const Matrix& x_test,
                        const KernelFn& kernel_fn) {
  if (x_test.rows < 2) {
    throw ConfigError("vs score: batch normalization needs at least 2 test points");
  }
  if (ensemble.components.empty()) throw ConfigError("vs score: empty ensemble");

  VsScores result;
  result.per_component = Matrix(ensemble.components.size(), x_test.rows);
  for (std::size_t k = 0; k < ensemble.components.size(); ++k) {
    const VsComponent& component = ensemble.components[k];
    const KernelMatrix cross = kernel_fn(x_test, component.train_data,
                                         derive_seed(component.seed, stream::kComponent));
    result.kernel_entries += cross.rows() * cross.cols();
    result.kernel_evaluations += cross.entry_evaluations;
    result.simulated_shots += cross.simulated_shots;
    const std::vector<double> raw = decision_scores(component.model, cross);
    const std::vector<double> normalized = normalize_scores(raw);
    std::copy(normalized.begin(), normalized.end(), result.per_component.row(k).begin());
  }
  result.combined = combine_scores(result.per_component, ensemble.combine);
  return result;
}

std::vector<double> score(const VsEnsemble& ensemble, const Matrix& x_test,
                          const KernelFn& kernel_fn) {
  return score_detailed(ensemble, x_test, kernel_fn).combined;
}

void save_ensemble(const std::string& path, const VsEnsemble& ensemble) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& component : ensemble.components) {
    components.push_back(nlohmann::json{
        {"model", nlohmann::json::parse(model_to_json(component.model))},
        {"subset", component.subset},
        {"seed", component.seed},
        {"train_data",
         {{"rows", component.train_data.rows},
          {"cols", component.train_data.cols},
          {"data", component.train_data.data}}},
    });
  }
  nlohmann::json j{
      {"combine", combine_name(ensemble.combine)},
      {"nu", ensemble.nu},
      {"train_kernel_entries", ensemble.train_kernel_entries},
      {"train_kernel_evaluations", ensemble.train_kernel_evaluations},
      {"train_simulated_shots", ensemble.train_simulated_shots},
      {"components", std::move(components)},
  };
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed writing ensemble: " + path);
}

VsEnsemble load_ensemble(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ensemble: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buffer.str());
    VsEnsemble ensemble;
    ensemble.combine = combine_from_name(j.at("combine").get<std::string>());
    ensemble.nu = j.at("nu").get<double>();
    ensemble.train_kernel_entries = j.value("train_kernel_entries", std::uint64_t{0});
    ensemble.train_kernel_evaluations =
        j.value("train_kernel_evaluations", std::uint64_t{0});
    ensemble.train_simulated_shots = j.value("train_simulated_shots", std::uint64_t{0});
    for (const auto& item : j.at("components")) {
      VsComponent component;
      component.model = model_from_json(item.at("model").dump());
      component.subset = item.at("subset").get<std::vector<std::size_t>>();
      component.seed = item.at("seed").get<std::uint64_t>();
      const auto& td = item.at("train_data");
      component.train_data.rows = td.at("rows").get<std::size_t>();
      component.train_data.cols = td.at("cols").get<std::size_t>();
      component.train_data.data = td.at("data").get<std::vector<double>>();
      ensemble.components.push_back(std::move(component));
    }
    return ensemble;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad ensemble record: ") + e.what());
  }
}

}  // namespace qkad
