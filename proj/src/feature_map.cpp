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

#include "qkad/feature_map.hpp"

namespace qkad {

FeatureMapConfig FeatureMapConfig::repeated_blocks(int n_qubits, int reuploadings) {
  FeatureMapConfig config;
  config.n_qubits = n_qubits;
  config.reuploadings = reuploadings;
  config.block_reps = 2 * reuploadings;
  config.angle_scale = 1.0;
  config.pair_angle_scale = 1.0;
  return config;
}

FeatureMapConfig FeatureMapConfig::amplified_angles(int n_qubits, int reuploadings) {
  FeatureMapConfig config;
  config.n_qubits = n_qubits;
  config.reuploadings = reuploadings;
  config.block_reps = 2;
  config.angle_scale = static_cast<double>(reuploadings);
  config.pair_angle_scale = static_cast<double>(reuploadings) *
                            static_cast<double>(reuploadings);
  return config;
}

void validate(const FeatureMapConfig& config) {
  if (config.n_qubits < 1) throw ConfigError("feature map: n_qubits must be >= 1");
  if (config.reuploadings < 1) throw ConfigError("feature map: reuploadings must be >= 1");
  if (config.block_reps < 2) throw ConfigError("feature map: block_reps must be >= 2");
}

namespace {

void check_input(const FeatureMapConfig& config, std::span<const double> x) {
  validate(config);
  if (static_cast<int>(x.size()) != config.n_qubits) {
    throw ConfigError("feature map: input has " + std::to_string(x.size()) +
                      " features, expected " + std::to_string(config.n_qubits));
  }
}

void apply_block(Statevector& state, const FeatureMapConfig& config,
                 std::span<const double> x, double sign) {
  const int d = config.n_qubits;
  if (sign > 0) {
    for (int q = 0; q < d; ++q) apply_h(state, q);
    for (int q = 0; q < d; ++q) apply_rz(state, q, 2.0 * config.angle_scale * x[q]);
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        apply_rzz(state, a, b, 2.0 * config.pair_angle_scale * x[a] * x[b]);
      }
    }
  } else {
    for (int a = d - 1; a >= 0; --a) {
      for (int b = d - 1; b > a; --b) {
        apply_rzz(state, a, b, -2.0 * config.pair_angle_scale * x[a] * x[b]);
      }
    }
    for (int q = d - 1; q >= 0; --q) {
      apply_rz(state, q, -2.0 * config.angle_scale * x[q]);
    }
    for (int q = d - 1; q >= 0; --q) apply_h(state, q);
  }
}

}  // namespace

void apply_feature_map(Statevector& state, const FeatureMapConfig& config,
                       std::span<const double> x) {
  check_input(config, x);
  if (state.n_qubits != config.n_qubits) {
    throw ConfigError("feature map: state qubit count mismatch");
  }
  for (int rep = 0; rep < config.block_reps; ++rep) {
    apply_block(state, config, x, +1.0);
  }
}

void apply_feature_map_adjoint(Statevector& state, const FeatureMapConfig& config,
                               std::span<const double> x) {
  check_input(config, x);
  if (state.n_qubits != config.n_qubits) {
    throw ConfigError("feature map: state qubit count mismatch");
  }
  for (int rep = 0; rep < config.block_reps; ++rep) {
    apply_block(state, config, x, -1.0);
  }
}

Statevector feature_map_state(const FeatureMapConfig& config,
                              std::span<const double> x) {
  check_input(config, x);
  Statevector state = zero_state(config.n_qubits);
  apply_feature_map(state, config, x);
  return state;
}

}  // namespace qkad
