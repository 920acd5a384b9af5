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
#include "qkad/rng.hpp"

namespace qkad {

struct Dataset {
  Matrix features;
  std::vector<int> labels;  // +1 normal / -1 anomaly; empty when unlabeled
  std::string name;

  std::size_t size() const { return features.rows; }
};

struct Split {
  Dataset train;  // all-normal by construction
  Dataset test;
  std::uint64_t seed = 0;
  std::vector<std::size_t> train_indices;  // into the source dataset, if any
  std::vector<std::size_t> test_indices;
};

// Two Gaussian clusters at (2,2) and (-2,-2), per-axis std 0.3; test batch is
// always 125 points: 88 cluster points plus 37 uniform draws on [-4,4]^2.
Split gen_synthetic(std::size_t n_train, std::uint64_t seed);

// Kaggle credit-card schema: header Time,V1..V28,Amount,Class; V1..V28 kept,
// anomaly iff Class = 1. A full-size file must contain 492 anomalies.
Dataset load_creditcard(const std::string& path);

// Seeded sampling without replacement: n_train normals for training,
// 119 normals + 6 anomalies for the 125-point test set.
Split make_split(const Dataset& data, std::size_t n_train, std::uint64_t seed);

inline constexpr std::size_t kTestSize = 125;
inline constexpr std::size_t kTestAnomalies = 6;     // real-data splits
inline constexpr std::size_t kSyntheticAnomalies = 37;  // floor(0.3 * 125)

// Split manifest: JSON record of the row indices behind a split.
void save_split_manifest(const std::string& path, const Split& split,
                         const std::string& dataset_name);
struct SplitManifest {
  std::string dataset;
  std::uint64_t seed = 0;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};
SplitManifest load_split_manifest(const std::string& path);

// Feature CSV helpers used by the CLI (columns f0..fk plus optional label).
void save_dataset_csv(const std::string& path, const Dataset& data);
Dataset load_dataset_csv(const std::string& path);

}  // namespace qkad
