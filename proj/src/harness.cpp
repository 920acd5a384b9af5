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

#include "qkad/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qkad/kernel_io.hpp"
#include "qkad/randomized.hpp"

namespace qkad {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kKernelSeedTag = 0x51;
constexpr std::uint64_t kSettingsSeedTag = 0x52;
constexpr std::uint64_t kTrainProfileTag = 0x53;
constexpr std::uint64_t kTestProfileTag = 0x54;
constexpr std::uint64_t kEnsembleTag = 0x55;
constexpr std::uint64_t kPlanTag = 0x56;

}  // namespace

std::string model_method_name(ModelMethod method) {
  switch (method) {
    case ModelMethod::rbf: return "rbf";
    case ModelMethod::fidelity_exact: return "fidelity_exact";
    case ModelMethod::inversion: return "inversion";
    case ModelMethod::swap_test: return "swap";
    case ModelMethod::randomized: return "randomized";
    case ModelMethod::randomized_mitigated: return "randomized_mitigated";
    case ModelMethod::vs_average: return "vs_average";
    case ModelMethod::vs_max: return "vs_max";
  }
  throw ConfigError("unknown model method");
}

ModelMethod model_method_from_name(const std::string& name) {
  if (name == "rbf") return ModelMethod::rbf;
  if (name == "fidelity_exact") return ModelMethod::fidelity_exact;
  if (name == "inversion") return ModelMethod::inversion;
  if (name == "swap") return ModelMethod::swap_test;
  if (name == "randomized") return ModelMethod::randomized;
  if (name == "randomized_mitigated") return ModelMethod::randomized_mitigated;
  if (name == "vs_average") return ModelMethod::vs_average;
  if (name == "vs_max") return ModelMethod::vs_max;
  throw ConfigError("unknown model method: " + name);
}

KernelMethod kernel_of(ModelMethod method) {
  switch (method) {
    case ModelMethod::rbf: return KernelMethod::rbf;
    case ModelMethod::fidelity_exact: return KernelMethod::fidelity_exact;
    case ModelMethod::inversion: return KernelMethod::inversion;
    case ModelMethod::swap_test: return KernelMethod::swap_test;
    case ModelMethod::randomized: return KernelMethod::randomized;
    case ModelMethod::randomized_mitigated: return KernelMethod::randomized_mitigated;
    // Ensemble components measure their kernels with the inversion test.
    case ModelMethod::vs_average: return KernelMethod::inversion;
    case ModelMethod::vs_max: return KernelMethod::inversion;
  }
  throw ConfigError("unknown model method");
}

void ExperimentConfig::apply_defaults() {
  if (seeds.empty()) {
    for (std::uint64_t s = 0; s < 15; ++s) seeds.push_back(s);
  }
  if (feature_counts.empty()) {
    feature_counts.push_back(dataset == DatasetKind::synthetic ? 2 : 6);
  }
  if (sizes.empty()) sizes.push_back(500);
}

std::string config_to_json(const ExperimentConfig& config) {
  nlohmann::json methods = nlohmann::json::array();
  for (ModelMethod m : config.methods) methods.push_back(model_method_name(m));
  nlohmann::json j{
      {"dataset", config.dataset == DatasetKind::synthetic ? "synthetic" : "creditcard"},
      {"creditcard_path", config.creditcard_path},
      {"methods", std::move(methods)},
      {"sizes", config.sizes},
      {"features", config.feature_counts},
      {"seeds", config.seeds},
      {"nu", config.nu},
      {"lambda", config.reuploadings},
      {"shots", config.shots},
      {"settings", config.settings},
      {"rm_shots", config.rm_shots},
      {"n_min", config.n_min},
      {"n_max", config.n_max},
      {"amplified_feature_map", config.amplified_feature_map},
  };
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ExperimentConfig config;
    const std::string dataset = j.value("dataset", std::string{"synthetic"});
    if (dataset == "synthetic") {
      config.dataset = DatasetKind::synthetic;
    } else if (dataset == "creditcard") {
      config.dataset = DatasetKind::creditcard;
    } else {
      throw ConfigError("unknown dataset: " + dataset);
    }
    config.creditcard_path = j.value("creditcard_path", std::string{});
    config.methods.clear();
    if (j.contains("methods")) {
      for (const auto& m : j.at("methods")) {
        config.methods.push_back(model_method_from_name(m.get<std::string>()));
      }
    } else if (j.contains("method")) {
      config.methods.push_back(
          model_method_from_name(j.at("method").get<std::string>()));
    } else {
      config.methods.push_back(ModelMethod::rbf);
    }
    config.sizes = j.value("sizes", std::vector<std::size_t>{});
    config.feature_counts = j.value("features", std::vector<std::size_t>{});
    config.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    config.nu = j.value("nu", 0.1);
    config.reuploadings = j.value("lambda", 3);
    config.shots = j.value("shots", std::int64_t{1000});
    config.settings = j.value("settings", 30);
    config.rm_shots = j.value("rm_shots", std::int64_t{9000});
    config.n_min = j.value("n_min", std::size_t{50});
    config.n_max = j.value("n_max", std::size_t{100});
    config.amplified_feature_map = j.value("amplified_feature_map", false);
    config.apply_defaults();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::string result_to_json(const RunResult& r) {
  nlohmann::json j{
      {"dataset", r.dataset},
      {"method", r.method},
      {"size", r.size},
      {"features", r.features},
      {"seed", r.seed},
      {"precision", r.report.precision},
      {"recall", r.report.recall},
      {"f1", r.report.f1},
      {"average_precision", r.report.average_precision},
      {"tp", r.report.tp},
      {"fp", r.report.fp},
      {"tn", r.report.tn},
      {"fn", r.report.fn},
      {"train_seconds", r.train_seconds},
      {"test_seconds", r.test_seconds},
      {"train_kernel_evaluations", r.train_kernel_evaluations},
      {"test_kernel_evaluations", r.test_kernel_evaluations},
      {"train_kernel_entries", r.train_kernel_entries},
      {"test_kernel_entries", r.test_kernel_entries},
      {"simulated_shots", r.simulated_shots},
      {"hardware_seconds", r.hardware_seconds},
  };
  return j.dump();
}

RunResult result_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunResult r;
    r.dataset = j.at("dataset").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.size = j.at("size").get<std::size_t>();
    r.features = j.at("features").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.report.precision = j.value("precision", 0.0);
    r.report.recall = j.value("recall", 0.0);
    r.report.f1 = j.value("f1", 0.0);
    r.report.average_precision = j.value("average_precision", 0.0);
    r.report.tp = j.value("tp", std::int64_t{0});
    r.report.fp = j.value("fp", std::int64_t{0});
    r.report.tn = j.value("tn", std::int64_t{0});
    r.report.fn = j.value("fn", std::int64_t{0});
    r.train_seconds = j.value("train_seconds", 0.0);
    r.test_seconds = j.value("test_seconds", 0.0);
    r.train_kernel_evaluations = j.value("train_kernel_evaluations", std::uint64_t{0});
    r.test_kernel_evaluations = j.value("test_kernel_evaluations", std::uint64_t{0});
    r.train_kernel_entries = j.value("train_kernel_entries", std::uint64_t{0});
    r.test_kernel_entries = j.value("test_kernel_entries", std::uint64_t{0});
    r.simulated_shots = j.value("simulated_shots", std::uint64_t{0});
    r.hardware_seconds = j.value("hardware_seconds", 0.0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad result record: ") + e.what());
  }
}

namespace {

struct CellOutcome {
  std::vector<double> scores;
  double train_seconds = 0.0;
  double test_seconds = 0.0;
  std::uint64_t train_evals = 0, test_evals = 0;
  std::uint64_t train_entries = 0, test_entries = 0;
  std::uint64_t shots = 0;
};

CellOutcome run_single_model(const ExperimentConfig& config, ModelMethod method,
                             const PipelineResult& pp, const FeatureMapConfig& fmap,
                             std::uint64_t seed) {
  CellOutcome outcome;
  const std::uint64_t kernel_seed = derive_seed(seed, kKernelSeedTag);

  const auto train_start = Clock::now();
  KernelMatrix k_train;
  SettingsPtr settings;
  ProbabilityTable train_profile;
  switch (method) {
    case ModelMethod::rbf:
      k_train = rbf_matrix(pp.train, pp.train, RbfConfig{gamma_scale(pp.train)});
      break;
    case ModelMethod::fidelity_exact:
      k_train = fidelity_exact_matrix(pp.train, pp.train, fmap);
      break;
    case ModelMethod::inversion:
      k_train = inversion_test_matrix(pp.train, pp.train, fmap, config.shots, kernel_seed);
      break;
    case ModelMethod::swap_test:
      k_train = swap_test_matrix(pp.train, pp.train, fmap, config.shots, kernel_seed);
      break;
    case ModelMethod::randomized:
    case ModelMethod::randomized_mitigated: {
      settings = sample_rm_settings(fmap.n_qubits, config.settings,
                                    derive_seed(seed, kSettingsSeedTag));
      train_profile = rm_profile(pp.train, fmap, settings, config.rm_shots,
                                 derive_seed(seed, kTrainProfileTag));
      k_train = rm_kernel(train_profile, train_profile);
      if (method == ModelMethod::randomized_mitigated) {
        train_profile = estimate_purities(std::move(train_profile));
        k_train = mitigate(k_train, train_profile.purity, train_profile.purity);
      }
      break;
    }
    default:
      throw ConfigError("run_single_model: not a single-model method");
  }
  const OcSvmModel model = solve_dual(k_train, config.nu);
  outcome.train_seconds = seconds_since(train_start);
  outcome.train_evals = k_train.entry_evaluations;
  outcome.train_entries = k_train.rows() * k_train.cols();
  outcome.shots += k_train.simulated_shots + train_profile.simulated_shots;

  const auto test_start = Clock::now();
  KernelMatrix k_test;
  switch (method) {
    case ModelMethod::rbf:
      k_test = rbf_matrix(pp.test, pp.train, RbfConfig{k_train.meta.gamma});
      break;
    case ModelMethod::fidelity_exact:
      k_test = fidelity_exact_matrix(pp.test, pp.train, fmap);
      break;
    case ModelMethod::inversion:
      k_test = inversion_test_matrix(pp.test, pp.train, fmap, config.shots,
                                     derive_seed(kernel_seed, 1));
      break;
    case ModelMethod::swap_test:
      k_test = swap_test_matrix(pp.test, pp.train, fmap, config.shots,
                                derive_seed(kernel_seed, 1));
      break;
    case ModelMethod::randomized:
    case ModelMethod::randomized_mitigated: {
      ProbabilityTable test_profile =
          rm_profile(pp.test, fmap, settings, config.rm_shots,
                     derive_seed(seed, kTestProfileTag));
      k_test = rm_kernel(test_profile, train_profile);
      outcome.shots += test_profile.simulated_shots;
      if (method == ModelMethod::randomized_mitigated) {
        test_profile = estimate_purities(std::move(test_profile));
        k_test = mitigate(k_test, test_profile.purity, train_profile.purity);
      }
      break;
    }
    default:
      throw ConfigError("run_single_model: not a single-model method");
  }
  outcome.scores = decision_scores(model, k_test);
  outcome.test_seconds = seconds_since(test_start);
  outcome.test_evals = k_test.entry_evaluations;
  outcome.test_entries = k_test.rows() * k_test.cols();
  outcome.shots += k_test.simulated_shots;
  return outcome;
}

CellOutcome run_vs_model(const ExperimentConfig& config, ModelMethod method,
                         const PipelineResult& pp, const FeatureMapConfig& fmap,
                         std::uint64_t seed) {
  CellOutcome outcome;
  const Combine combine =
      method == ModelMethod::vs_average ? Combine::average : Combine::maximum;
  const KernelFn kernel_fn = [&](const Matrix& left, const Matrix& right,
                                 std::uint64_t component_seed) {
    return inversion_test_matrix(left, right, fmap, config.shots, component_seed);
  };

  const auto train_start = Clock::now();
  const VsPlan plan = make_plan(pp.train.rows, config.n_min, config.n_max,
                                derive_seed(seed, kPlanTag));
  const VsEnsemble ensemble =
      fit(plan, pp.train, kernel_fn, config.nu, derive_seed(seed, kEnsembleTag), combine);
  outcome.train_seconds = seconds_since(train_start);
  outcome.train_evals = ensemble.train_kernel_evaluations;
  outcome.train_entries = ensemble.train_kernel_entries;
  outcome.shots += ensemble.train_simulated_shots;

  const auto test_start = Clock::now();
  const VsScores scores = score_detailed(ensemble, pp.test, kernel_fn);
  outcome.test_seconds = seconds_since(test_start);
  outcome.scores = scores.combined;
  outcome.test_evals = scores.kernel_evaluations;
  outcome.test_entries = scores.kernel_entries;
  outcome.shots += scores.simulated_shots;
  return outcome;
}

RunResult run_cell(const ExperimentConfig& config, const Dataset* creditcard,
                   ModelMethod method, std::size_t size, std::size_t features,
                   std::uint64_t seed) {
  Split split = config.dataset == DatasetKind::synthetic
                    ? gen_synthetic(size, seed)
                    : make_split(*creditcard, size, seed);
  if (config.dataset == DatasetKind::synthetic && features != split.train.features.cols) {
    throw ConfigError("synthetic data is 2-dimensional; requested " +
                      std::to_string(features) + " features");
  }

  const PipelineResult pp =
      preprocess_pipeline(kernel_of(method), config.dataset, split.train.features,
                          split.test.features, features);
  const FeatureMapConfig fmap =
      config.amplified_feature_map
          ? FeatureMapConfig::amplified_angles(static_cast<int>(pp.train.cols),
                                               config.reuploadings)
          : FeatureMapConfig::repeated_blocks(static_cast<int>(pp.train.cols),
                                              config.reuploadings);

  const bool is_vs = method == ModelMethod::vs_average || method == ModelMethod::vs_max;
  const CellOutcome outcome = is_vs ? run_vs_model(config, method, pp, fmap, seed)
                                    : run_single_model(config, method, pp, fmap, seed);

  RunResult result;
  result.dataset = config.dataset == DatasetKind::synthetic ? "synthetic" : "creditcard";
  result.method = model_method_name(method);
  result.size = size;
  result.features = features;
  result.seed = seed;
  result.report = evaluate_scores(split.test.labels, outcome.scores);
  result.train_seconds = outcome.train_seconds;
  result.test_seconds = outcome.test_seconds;
  result.train_kernel_evaluations = outcome.train_evals;
  result.test_kernel_evaluations = outcome.test_evals;
  result.train_kernel_entries = outcome.train_entries;
  result.test_kernel_entries = outcome.test_entries;
  result.simulated_shots = outcome.shots;
  result.hardware_seconds = estimate_hardware_seconds(static_cast<double>(outcome.shots));
  return result;
}

}  // namespace

std::vector<RunResult> run_experiment(const ExperimentConfig& raw_config,
                                      const ResultSink& sink, const CellFilter& skip) {
  ExperimentConfig config = raw_config;
  config.apply_defaults();
  if (config.methods.empty()) throw ConfigError("experiment: no methods configured");

  Dataset creditcard;
  if (config.dataset == DatasetKind::creditcard) {
    if (config.creditcard_path.empty()) {
      throw ConfigError("experiment: creditcard dataset needs creditcard_path");
    }
    creditcard = load_creditcard(config.creditcard_path);
  }

  std::vector<RunResult> results;
  for (ModelMethod method : config.methods) {
    for (std::size_t size : config.sizes) {
      for (std::size_t features : config.feature_counts) {
        for (std::uint64_t seed : config.seeds) {
          if (skip && skip(model_method_name(method), size, features, seed)) continue;
          try {
            RunResult result = run_cell(config, &creditcard, method, size, features, seed);
            if (sink) sink(result);
            results.push_back(std::move(result));
          } catch (const std::exception& e) {
            throw NumericError("cell method=" + model_method_name(method) +
                               " size=" + std::to_string(size) +
                               " features=" + std::to_string(features) +
                               " seed=" + std::to_string(seed) + ": " + e.what());
          }
        }
      }
    }
  }
  return results;
}

double estimate_hardware_seconds(double total_shots, double rate_hz) {
  if (!(rate_hz > 0.0)) throw ConfigError("estimate_hardware_seconds: rate must be > 0");
  if (total_shots < 0.0) throw ConfigError("estimate_hardware_seconds: negative shots");
  return total_shots / rate_hz;
}

double scaling_fit(std::span<const std::size_t> sizes, std::span<const double> seconds) {
  if (sizes.size() != seconds.size()) throw ConfigError("scaling_fit: length mismatch");
  if (sizes.size() < 3) throw ConfigError("scaling_fit: need at least 3 points");
  const std::size_t n = sizes.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[i] == 0 || !(seconds[i] > 0.0)) {
      throw ConfigError("scaling_fit: sizes and seconds must be positive");
    }
    lx[i] = std::log(static_cast<double>(sizes[i]));
    ly[i] = std::log(seconds[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw ConfigError("scaling_fit: degenerate size axis");
  return sxy / sxx;
}

namespace {

struct Aggregate {
  std::vector<double> ap, f1, precision, recall, train_s, test_s, hardware_s;
};

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

void write_report_csvs(const std::vector<RunResult>& results, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  using Key = std::tuple<std::string, std::string, std::size_t, std::size_t>;
  std::map<Key, Aggregate> groups;
  for (const RunResult& r : results) {
    Aggregate& a = groups[{r.dataset, r.method, r.features, r.size}];
    a.ap.push_back(r.report.average_precision);
    a.f1.push_back(r.report.f1);
    a.precision.push_back(r.report.precision);
    a.recall.push_back(r.report.recall);
    a.train_s.push_back(r.train_seconds);
    a.test_s.push_back(r.test_seconds);
    a.hardware_s.push_back(r.hardware_seconds);
  }

  std::ofstream perf(fs::path(out_dir) / "performance.csv");
  std::ofstream timing(fs::path(out_dir) / "timing.csv");
  if (!perf || !timing) throw DataError("cannot write report CSVs in " + out_dir);
  perf << "dataset,method,features,size,n_runs,ap_mean,ap_std,f1_mean,f1_std,"
          "precision_mean,precision_std,recall_mean,recall_std\n";
  timing << "dataset,method,features,size,n_runs,train_seconds_mean,train_seconds_std,"
            "test_seconds_mean,test_seconds_std,hardware_seconds_mean\n";
  for (const auto& [key, a] : groups) {
    const auto& [dataset, method, features, size] = key;
    perf << dataset << ',' << method << ',' << features << ',' << size << ','
         << a.ap.size() << ',' << mean_of(a.ap) << ',' << std_of(a.ap) << ','
         << mean_of(a.f1) << ',' << std_of(a.f1) << ',' << mean_of(a.precision) << ','
         << std_of(a.precision) << ',' << mean_of(a.recall) << ',' << std_of(a.recall)
         << '\n';
    timing << dataset << ',' << method << ',' << features << ',' << size << ','
           << a.train_s.size() << ',' << mean_of(a.train_s) << ',' << std_of(a.train_s)
           << ',' << mean_of(a.test_s) << ',' << std_of(a.test_s) << ','
           << mean_of(a.hardware_s) << '\n';
  }
}

std::vector<RunResult> load_results_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open results: " + path);
  std::vector<RunResult> results;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    results.push_back(result_from_json(line));
  }
  return results;
}

}  // namespace qkad
