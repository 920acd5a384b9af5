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

#include <functional>
#include <optional>

#include "qkad/dataset.hpp"
#include "qkad/metrics.hpp"
#include "qkad/preprocess.hpp"
#include "qkad/vs_ensemble.hpp"

namespace qkad {

// A model method is a kernel backend plus, for variable subsampling, the
// score-combination mode (subsampled components use the inversion kernel).
enum class ModelMethod {
  rbf,
  fidelity_exact,
  inversion,
  swap_test,
  randomized,
  randomized_mitigated,
  vs_average,
  vs_max,
};

std::string model_method_name(ModelMethod method);
ModelMethod model_method_from_name(const std::string& name);
KernelMethod kernel_of(ModelMethod method);

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::synthetic;
  std::string creditcard_path;
  std::vector<ModelMethod> methods{ModelMethod::rbf};
  std::vector<std::size_t> sizes{500};
  std::vector<std::size_t> feature_counts;  // default 2 synthetic / 6 creditcard
  std::vector<std::uint64_t> seeds;         // default 0..14
  double nu = 0.1;
  int reuploadings = 3;
  std::int64_t shots = 1000;  // inversion / swap, and VS components
  int settings = 30;          // randomized r
  std::int64_t rm_shots = 9000;
  std::size_t n_min = 50;
  std::size_t n_max = 100;
  bool amplified_feature_map = false;  // 2 blocks with scaled angles instead
                                       // of 2*reuploadings unit-scale blocks

  void apply_defaults();
};

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct RunResult {
  std::string dataset;
  std::string method;
  std::size_t size = 0;
  std::size_t features = 0;
  std::uint64_t seed = 0;
  EvalReport report;
  double train_seconds = 0.0;
  double test_seconds = 0.0;
  std::uint64_t train_kernel_evaluations = 0;
  std::uint64_t test_kernel_evaluations = 0;
  std::uint64_t train_kernel_entries = 0;
  std::uint64_t test_kernel_entries = 0;
  std::uint64_t simulated_shots = 0;
  double hardware_seconds = 0.0;  // simulated_shots at the 5 kHz reference rate
};

std::string result_to_json(const RunResult& result);
RunResult result_from_json(const std::string& text);

using ResultSink = std::function<void(const RunResult&)>;
using CellFilter = std::function<bool(const std::string& method, std::size_t size,
                                      std::size_t features, std::uint64_t seed)>;

// Runs every (method, size, features, seed) cell: split, preprocess, kernels,
// train, score, evaluate. Each finished cell goes to `sink` before the next
// starts, so partial output survives an abort. `skip` supports resuming.
std::vector<RunResult> run_experiment(const ExperimentConfig& config,
                                      const ResultSink& sink = {},
                                      const CellFilter& skip = {});

inline constexpr double kMeasurementRateHz = 5000.0;
inline constexpr double kSecondsPerYear = 365.0 * 86400.0;

double estimate_hardware_seconds(double total_shots, double rate_hz = kMeasurementRateHz);

// Least-squares slope of log(seconds) against log(size).
double scaling_fit(std::span<const std::size_t> sizes, std::span<const double> seconds);

// Aggregated CSVs (mean and std over seeds, grouped by method and cell).
void write_report_csvs(const std::vector<RunResult>& results,
                       const std::string& out_dir);

std::vector<RunResult> load_results_jsonl(const std::string& path);

}  // namespace qkad
