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

#include "qkad/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qkad {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // strip quotes and surrounding whitespace
    std::size_t begin = cell.find_first_not_of(" \t\r\"");
    std::size_t end = cell.find_last_not_of(" \t\r\"");
    cells.push_back(begin == std::string::npos ? std::string{}
                                               : cell.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no, const std::string& col) {
  double value = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw DataError("non-numeric cell '" + cell + "' in column " + col + ", line " +
                    std::to_string(line_no));
  }
  return value;
}

// k distinct indices from [0, n), seed-deterministic, order preserved as drawn.
std::vector<std::size_t> draw_without_replacement(std::size_t n, std::size_t k,
                                                  RandomStream& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng.uniform_int(0, n - 1 - t));
    std::swap(pool[t], pool[pick]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

Split gen_synthetic(std::size_t n_train, std::uint64_t seed) {
  if (n_train < 4) throw ConfigError("gen_synthetic: n_train must be >= 4");

  RandomStream rng(derive_seed(seed, stream::kSynthetic));
  const double centers[2][2] = {{2.0, 2.0}, {-2.0, -2.0}};
  const double cluster_std = 0.3;

  Split split;
  split.seed = seed;
  split.train.name = "synthetic-train";
  split.train.features = Matrix(n_train, 2);
  split.train.labels.assign(n_train, kNormal);
  const std::size_t first_cluster = (n_train + 1) / 2;
  for (std::size_t i = 0; i < n_train; ++i) {
    const auto& c = centers[i < first_cluster ? 0 : 1];
    split.train.features(i, 0) = c[0] + cluster_std * rng.normal();
    split.train.features(i, 1) = c[1] + cluster_std * rng.normal();
  }

  const std::size_t n_normal = kTestSize - kSyntheticAnomalies;  // 88
  split.test.name = "synthetic-test";
  split.test.features = Matrix(kTestSize, 2);
  split.test.labels.assign(kTestSize, kNormal);
  for (std::size_t i = 0; i < n_normal; ++i) {
    const auto& c = centers[i % 2];
    split.test.features(i, 0) = c[0] + cluster_std * rng.normal();
    split.test.features(i, 1) = c[1] + cluster_std * rng.normal();
  }
  for (std::size_t i = n_normal; i < kTestSize; ++i) {
    split.test.features(i, 0) = -4.0 + 8.0 * rng.uniform();
    split.test.features(i, 1) = -4.0 + 8.0 * rng.uniform();
    split.test.labels[i] = kAnomaly;
  }
  return split;
}

Dataset load_creditcard(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: " + path);

  const auto header = split_csv_line(line);
  std::vector<std::size_t> feature_cols;
  std::size_t class_col = header.size();
  for (int v = 1; v <= 28; ++v) {
    const std::string want = "V" + std::to_string(v);
    const auto it = std::find(header.begin(), header.end(), want);
    if (it == header.end()) throw DataError("missing column " + want + " in " + path);
    feature_cols.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  const auto class_it = std::find(header.begin(), header.end(), "Class");
  if (class_it == header.end()) throw DataError("missing column Class in " + path);
  class_col = static_cast<std::size_t>(class_it - header.begin());

  Dataset data;
  data.name = "creditcard";
  std::vector<double> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError("row with " + std::to_string(cells.size()) + " cells (expected " +
                      std::to_string(header.size()) + ") at line " +
                      std::to_string(line_no));
    }
    for (std::size_t c : feature_cols) {
      rows.push_back(parse_cell(cells[c], line_no, header[c]));
    }
    const double cls = parse_cell(cells[class_col], line_no, "Class");
    data.labels.push_back(cls == 1.0 ? kAnomaly : kNormal);
  }
  if (data.labels.empty()) throw DataError("no data rows in " + path);

  data.features.rows = data.labels.size();
  data.features.cols = 28;
  data.features.data = std::move(rows);
  require_finite(data.features, "creditcard features");

  const auto anomalies = static_cast<std::size_t>(
      std::count(data.labels.begin(), data.labels.end(), kAnomaly));
  if (data.size() >= 284000 && anomalies != 492) {
    throw DataError("full credit-card file should contain 492 anomalies, found " +
                    std::to_string(anomalies));
  }
  return data;
}

Split make_split(const Dataset& data, std::size_t n_train, std::uint64_t seed) {
  if (data.labels.size() != data.size()) {
    throw DataError("make_split: dataset must be labeled");
  }
  std::vector<std::size_t> normals;
  std::vector<std::size_t> anomalies;
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    (data.labels[i] == kAnomaly ? anomalies : normals).push_back(i);
  }
  const std::size_t test_normals = kTestSize - kTestAnomalies;  // 119
  if (normals.size() < n_train + test_normals) {
    throw DataError("make_split: need " + std::to_string(n_train + test_normals) +
                    " normal rows, have " + std::to_string(normals.size()));
  }
  if (anomalies.size() < kTestAnomalies) {
    throw DataError("make_split: need " + std::to_string(kTestAnomalies) +
                    " anomalies, have " + std::to_string(anomalies.size()));
  }

  RandomStream rng(derive_seed(seed, stream::kSplit));
  const auto normal_pick =
      draw_without_replacement(normals.size(), n_train + test_normals, rng);
  const auto anomaly_pick = draw_without_replacement(anomalies.size(), kTestAnomalies, rng);

  Split split;
  split.seed = seed;
  split.train.name = data.name + "-train";
  split.test.name = data.name + "-test";
  for (std::size_t t = 0; t < n_train; ++t) {
    split.train_indices.push_back(normals[normal_pick[t]]);
  }
  for (std::size_t t = n_train; t < normal_pick.size(); ++t) {
    split.test_indices.push_back(normals[normal_pick[t]]);
  }
  for (std::size_t a : anomaly_pick) split.test_indices.push_back(anomalies[a]);

  split.train.features = data.features.take_rows(split.train_indices);
  split.train.labels.assign(split.train_indices.size(), kNormal);
  split.test.features = data.features.take_rows(split.test_indices);
  split.test.labels.reserve(split.test_indices.size());
  for (std::size_t idx : split.test_indices) split.test.labels.push_back(data.labels[idx]);
  return split;
}

void save_split_manifest(const std::string& path, const Split& split,
                         const std::string& dataset_name) {
  nlohmann::json j{
      {"dataset", dataset_name},
      {"seed", split.seed},
      {"train_indices", split.train_indices},
      {"test_indices", split.test_indices},
  };
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << j.dump() << '\n';
}

SplitManifest load_split_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buffer.str());
    SplitManifest manifest;
    manifest.dataset = j.at("dataset").get<std::string>();
    manifest.seed = j.at("seed").get<std::uint64_t>();
    manifest.train_indices = j.at("train_indices").get<std::vector<std::size_t>>();
    manifest.test_indices = j.at("test_indices").get<std::vector<std::size_t>>();
    return manifest;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad split manifest: ") + e.what());
  }
}

void save_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out.precision(17);
  for (std::size_t c = 0; c < data.features.cols; ++c) {
    if (c) out << ',';
    out << 'f' << c;
  }
  if (!data.labels.empty()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < data.features.rows; ++i) {
    for (std::size_t c = 0; c < data.features.cols; ++c) {
      if (c) out << ',';
      out << data.features(i, c);
    }
    if (!data.labels.empty()) out << ',' << data.labels[i];
    out << '\n';
  }
  if (!out) throw DataError("failed writing dataset: " + path);
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: " + path);
  const auto header = split_csv_line(line);
  const bool has_label = !header.empty() && header.back() == "label";
  const std::size_t n_features = header.size() - (has_label ? 1 : 0);
  if (n_features == 0) throw DataError("no feature columns in " + path);

  Dataset data;
  data.name = path;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError("bad row width at line " + std::to_string(line_no) + " in " + path);
    }
    for (std::size_t c = 0; c < n_features; ++c) {
      data.features.data.push_back(parse_cell(cells[c], line_no, header[c]));
    }
    if (has_label) {
      const double label = parse_cell(cells.back(), line_no, "label");
      data.labels.push_back(label < 0 ? kAnomaly : kNormal);
    }
  }
  data.features.cols = n_features;
  data.features.rows = data.features.data.size() / n_features;
  if (data.features.rows == 0) throw DataError("no data rows in " + path);
  require_finite(data.features, "dataset " + path);
  return data;
}

}  // namespace qkad
