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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <tuple>

#include <CLI11.hpp>

#include "qkad/harness.hpp"
#include "qkad/kernel_io.hpp"
#include "qkad/randomized.hpp"

namespace fs = std::filesystem;
using namespace qkad;

namespace {

// Exit codes: 0 success, 2 config error, 3 data error, 4 numerical error.
constexpr int kConfigExit = 2;
constexpr int kDataExit = 3;
constexpr int kNumericExit = 4;

struct GenDataArgs {
  std::string dataset = "synthetic";
  std::size_t size = 500;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::size_t fixture_anomalies = 30;
};

int run_gen_data(const GenDataArgs& args) {
  fs::create_directories(args.out);
  if (args.dataset == "synthetic") {
    const Split split = gen_synthetic(args.size, args.seed);
    save_dataset_csv((fs::path(args.out) / "train.csv").string(), split.train);
    save_dataset_csv((fs::path(args.out) / "test.csv").string(), split.test);
    save_split_manifest((fs::path(args.out) / "manifest.json").string(), split,
                        "synthetic");
    std::cout << "wrote train.csv (" << split.train.size() << " rows), test.csv ("
              << split.test.size() << " rows) to " << args.out << "\n";
    return 0;
  }
  if (args.dataset == "creditcard-fixture") {
    // Synthetic stand-in with the credit-card schema, for pipeline testing.
    const fs::path path = fs::path(args.out) / "creditcard.csv";
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << "\"Time\"";
    for (int v = 1; v <= 28; ++v) out << ",\"V" << v << "\"";
    out << ",\"Amount\",\"Class\"\n";
    RandomStream rng(derive_seed(args.seed, 0xCC));
    out.precision(10);
    for (std::size_t i = 0; i < args.size; ++i) {
      const bool anomaly = i < args.fixture_anomalies;
      out << i;
      for (int v = 0; v < 28; ++v) out << ',' << rng.normal() + (anomaly ? 3.0 : 0.0);
      out << ',' << 100.0 * rng.uniform() << ',' << (anomaly ? 1 : 0) << '\n';
    }
    std::cout << "wrote " << path.string() << " (" << args.size << " rows, "
              << args.fixture_anomalies << " anomalies)\n";
    return 0;
  }
  throw ConfigError("gen-data: unknown dataset '" + args.dataset + "'");
}

struct KernelArgs {
  std::string method = "fidelity_exact";
  std::string train_path;
  std::string test_path;
  std::string dataset = "none";  // preprocessing recipe: none|synthetic|creditcard
  std::size_t features = 0;      // 0 = keep input dimension
  std::uint64_t seed = 0;
  std::int64_t shots = 0;  // 0 = method default
  int settings = 30;
  int reuploadings = 3;
  double nu = 0.1;  // unused here, accepted for symmetry
  std::string out = "kernel.qkm";
  std::string csv;
};

int run_kernel(const KernelArgs& args) {
  const ModelMethod model_method = model_method_from_name(args.method);
  if (model_method == ModelMethod::vs_average || model_method == ModelMethod::vs_max) {
    throw ConfigError("kernel: variable subsampling is a model, not a kernel; "
                      "use `experiment`");
  }
  const KernelMethod method = kernel_of(model_method);
  const Dataset train = load_dataset_csv(args.train_path);
  const bool have_test = !args.test_path.empty();
  Dataset test;
  if (have_test) test = load_dataset_csv(args.test_path);

  Matrix left = train.features;
  Matrix right = have_test ? test.features : Matrix{};
  std::size_t features = args.features == 0 ? train.features.cols : args.features;
  if (args.dataset != "none") {
    const DatasetKind kind = args.dataset == "synthetic" ? DatasetKind::synthetic
                                                         : DatasetKind::creditcard;
    const Matrix& test_in = have_test ? test.features : train.features;
    const PipelineResult pp =
        preprocess_pipeline(method, kind, train.features, test_in, features);
    left = pp.train;
    if (have_test) right = pp.test;
    features = left.cols;
  }

  const std::int64_t shots =
      args.shots > 0 ? args.shots
                     : (method == KernelMethod::randomized ||
                                method == KernelMethod::randomized_mitigated
                            ? 9000
                            : 1000);
  const auto fmap = FeatureMapConfig::repeated_blocks(static_cast<int>(left.cols),
                                                      args.reuploadings);

  KernelMatrix k;
  switch (method) {
    case KernelMethod::rbf: {
      const RbfConfig config{gamma_scale(left)};
      k = have_test ? rbf_matrix(right, left, config) : rbf_matrix(left, left, config);
      break;
    }
    case KernelMethod::fidelity_exact:
      k = have_test ? fidelity_exact_matrix(right, left, fmap)
                    : fidelity_exact_matrix(left, left, fmap);
      break;
    case KernelMethod::inversion:
      k = have_test ? inversion_test_matrix(right, left, fmap, shots, args.seed)
                    : inversion_test_matrix(left, left, fmap, shots, args.seed);
      break;
    case KernelMethod::swap_test:
      k = have_test ? swap_test_matrix(right, left, fmap, shots, args.seed)
                    : swap_test_matrix(left, left, fmap, shots, args.seed);
      break;
    case KernelMethod::randomized:
    case KernelMethod::randomized_mitigated: {
      const auto settings = sample_rm_settings(fmap.n_qubits, args.settings,
                                               derive_seed(args.seed, 0xA1));
      ProbabilityTable p_train =
          rm_profile(left, fmap, settings, shots, derive_seed(args.seed, 0xA2));
      if (have_test) {
        ProbabilityTable p_test =
            rm_profile(right, fmap, settings, shots, derive_seed(args.seed, 0xA3));
        k = rm_kernel(p_test, p_train);
        if (method == KernelMethod::randomized_mitigated) {
          p_train = estimate_purities(std::move(p_train));
          p_test = estimate_purities(std::move(p_test));
          k = mitigate(k, p_test.purity, p_train.purity);
        }
      } else {
        k = rm_kernel(p_train, p_train);
        if (method == KernelMethod::randomized_mitigated) {
          p_train = estimate_purities(std::move(p_train));
          k = mitigate(k, p_train.purity, p_train.purity);
        }
      }
      k.meta.shots = shots;
      k.meta.settings = args.settings;
      break;
    }
  }
  k.meta.seed = args.seed;
  save_kernel(args.out, k);
  if (!args.csv.empty()) export_kernel_csv(args.csv, k);
  std::cout << "wrote " << k.rows() << "x" << k.cols() << " " << method_name(k.method)
            << " kernel to " << args.out << "\n";
  return 0;
}

struct TrainArgs {
  std::string kernel_path;
  double nu = 0.1;
  std::string out = "model.json";
};

int run_train(const TrainArgs& args) {
  const KernelMatrix g = load_kernel(args.kernel_path);
  const OcSvmModel model = solve_dual(g, args.nu);
  save_model(args.out, model);
  std::cout << "trained on " << g.rows() << " points, " << model.support_indices.size()
            << " support vectors, rho=" << model.rho;
  if (model.indefinite_kernel_warning) std::cout << " (indefinite kernel)";
  std::cout << "\nwrote " << args.out << "\n";
  return 0;
}

struct PredictArgs {
  std::string model_path;
  std::string kernel_path;
  std::string out = "scores.csv";
};

int run_predict(const PredictArgs& args) {
  const OcSvmModel model = load_model(args.model_path);
  const KernelMatrix k = load_kernel(args.kernel_path);
  const auto scores = decision_scores(model, k);
  const auto labels = predict(scores);
  std::ofstream out(args.out);
  if (!out) throw DataError("cannot open for writing: " + args.out);
  out.precision(17);
  out << "index,decision_score,anomaly_score,label\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out << i << ',' << scores[i] << ',' << -scores[i] << ',' << labels[i] << '\n';
  }
  std::cout << "wrote " << scores.size() << " scores to " << args.out << "\n";
  return 0;
}

struct ExperimentArgs {
  std::string config_path;
  std::string out = "results.jsonl";
  bool resume = false;
  // Optional overrides.
  std::string dataset;
  std::vector<std::string> methods;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> features;
  std::vector<std::uint64_t> seeds;
  std::int64_t shots = 0;
  int settings = 0;
  std::string creditcard_path;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  ExperimentConfig config;
  if (!args.config_path.empty()) config = load_config(args.config_path);
  if (!args.dataset.empty()) {
    if (args.dataset == "synthetic") {
      config.dataset = DatasetKind::synthetic;
    } else if (args.dataset == "creditcard") {
      config.dataset = DatasetKind::creditcard;
    } else {
      throw ConfigError("unknown dataset: " + args.dataset);
    }
    config.feature_counts.clear();  // re-derive the per-dataset default
  }
  if (!args.methods.empty()) {
    config.methods.clear();
    for (const auto& m : args.methods) {
      config.methods.push_back(model_method_from_name(m));
    }
  }
  if (!args.sizes.empty()) config.sizes = args.sizes;
  if (!args.features.empty()) config.feature_counts = args.features;
  if (!args.seeds.empty()) config.seeds = args.seeds;
  if (args.shots > 0) config.shots = args.shots;
  if (args.settings > 0) config.settings = args.settings;
  if (!args.creditcard_path.empty()) config.creditcard_path = args.creditcard_path;
  config.apply_defaults();

  // Resume support: cells already in the output file are skipped, new results
  // are appended.
  std::set<std::tuple<std::string, std::size_t, std::size_t, std::uint64_t>> done;
  if (args.resume && fs::exists(args.out)) {
    for (const RunResult& r : load_results_jsonl(args.out)) {
      done.insert({r.method, r.size, r.features, r.seed});
    }
    std::cout << "resuming: " << done.size() << " cells already present\n";
  }

  std::ofstream sink_stream(args.out, args.resume ? std::ios::app : std::ios::trunc);
  if (!sink_stream) throw DataError("cannot open for writing: " + args.out);
  const ResultSink sink = [&](const RunResult& r) {
    sink_stream << result_to_json(r) << '\n';
    sink_stream.flush();
    std::cout << r.method << " size=" << r.size << " features=" << r.features
              << " seed=" << r.seed << " ap=" << r.report.average_precision
              << " f1=" << r.report.f1 << " train=" << r.train_seconds
              << "s test=" << r.test_seconds << "s\n";
  };
  const CellFilter skip = [&](const std::string& method, std::size_t size,
                              std::size_t features, std::uint64_t seed) {
    return done.count({method, size, features, seed}) > 0;
  };
  const auto results = run_experiment(config, sink, skip);
  std::cout << "completed " << results.size() << " cells -> " << args.out << "\n";
  return 0;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string out = "report";
};

int run_report(const ReportArgs& args) {
  std::vector<RunResult> all;
  for (const auto& path : args.inputs) {
    const auto batch = load_results_jsonl(path);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  if (all.empty()) throw DataError("report: no results found");
  write_report_csvs(all, args.out);
  std::cout << "wrote performance.csv and timing.csv (" << all.size() << " runs) to "
            << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-kernel one-class SVM anomaly detection toolkit"};
  app.require_subcommand(1);

  GenDataArgs gen_args;
  auto* gen = app.add_subcommand("gen-data", "generate datasets and splits");
  gen->add_option("--dataset", gen_args.dataset,
                  "synthetic | creditcard-fixture (schema fixture)");
  gen->add_option("--size", gen_args.size, "training rows / fixture rows");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--out", gen_args.out, "output directory");
  gen->add_option("--anomalies", gen_args.fixture_anomalies,
                  "anomaly rows in the creditcard fixture");

  KernelArgs kernel_args;
  auto* kernel = app.add_subcommand("kernel", "compute and persist a kernel matrix");
  kernel->add_option("--method", kernel_args.method,
                     "rbf | fidelity_exact | inversion | swap | randomized | "
                     "randomized_mitigated");
  kernel->add_option("--train", kernel_args.train_path, "training features CSV")
      ->required();
  kernel->add_option("--test", kernel_args.test_path,
                     "test features CSV (rectangular test x train matrix)");
  kernel->add_option("--dataset", kernel_args.dataset,
                     "preprocessing recipe: none | synthetic | creditcard");
  kernel->add_option("--features", kernel_args.features, "PCA target dimension");
  kernel->add_option("--seed", kernel_args.seed, "random seed");
  kernel->add_option("--shots", kernel_args.shots, "shots per circuit");
  kernel->add_option("--settings", kernel_args.settings, "randomized settings r");
  kernel->add_option("--lambda", kernel_args.reuploadings, "data reuploadings");
  kernel->add_option("--out", kernel_args.out, "output .qkm path");
  kernel->add_option("--csv", kernel_args.csv, "also export plain CSV here");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "train a one-class SVM on a kernel");
  train->add_option("--kernel", train_args.kernel_path, "training kernel .qkm")
      ->required();
  train->add_option("--nu", train_args.nu, "outlier-fraction bound");
  train->add_option("--out", train_args.out, "model output path");

  PredictArgs predict_args;
  auto* pred = app.add_subcommand("predict", "score a test kernel with a model");
  pred->add_option("--model", predict_args.model_path, "model JSON")->required();
  pred->add_option("--kernel", predict_args.kernel_path, "test x train kernel .qkm")
      ->required();
  pred->add_option("--out", predict_args.out, "scores CSV output");

  ExperimentArgs exp_args;
  auto* exp = app.add_subcommand("experiment", "run a sweep from a config file");
  exp->add_option("--config", exp_args.config_path, "experiment config JSON");
  exp->add_option("--out", exp_args.out, "results JSONL (append-only)");
  exp->add_flag("--resume", exp_args.resume, "skip cells already in the output");
  exp->add_option("--dataset", exp_args.dataset, "synthetic | creditcard");
  exp->add_option("--method", exp_args.methods, "model methods to run");
  exp->add_option("--size", exp_args.sizes, "training sizes");
  exp->add_option("--features", exp_args.features, "feature counts");
  exp->add_option("--seed", exp_args.seeds, "seeds");
  exp->add_option("--shots", exp_args.shots, "shots per circuit");
  exp->add_option("--settings", exp_args.settings, "randomized settings r");
  exp->add_option("--creditcard", exp_args.creditcard_path, "credit-card CSV path");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "aggregate results into CSV tables");
  report->add_option("input", report_args.inputs, "results JSONL files")->required();
  report->add_option("--out", report_args.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (gen->parsed()) return run_gen_data(gen_args);
    if (kernel->parsed()) return run_kernel(kernel_args);
    if (train->parsed()) return run_train(train_args);
    if (pred->parsed()) return run_predict(predict_args);
    if (exp->parsed()) return run_experiment_cmd(exp_args);
    if (report->parsed()) return run_report(report_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataExit;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
