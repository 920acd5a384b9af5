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

#include <span>

#include "qkad/statevector.hpp"

namespace qkad {

// IQP-style embedding: block_reps repetitions of a Hadamard layer followed by
// a diagonal layer of RZ(2*s1*x_j) on every qubit and RZZ(2*s2*x_j*x_j') on
// every pair j < j'. Two equivalent parameterizations are exposed:
//   repeated_blocks : 2*reuploadings blocks, unit angle scales (default)
//   amplified_angles: 2 blocks, angles scaled by reuploadings (pairs squared)
struct FeatureMapConfig {
  int n_qubits = 1;
  int reuploadings = 3;
  int block_reps = 6;
  double angle_scale = 1.0;       // single-qubit rotations
  double pair_angle_scale = 1.0;  // two-qubit rotations

  static FeatureMapConfig repeated_blocks(int n_qubits, int reuploadings = 3);
  static FeatureMapConfig amplified_angles(int n_qubits, int reuploadings = 3);
};

void validate(const FeatureMapConfig& config);

// Embeds x (one angle per qubit) starting from |0...0>.
Statevector feature_map_state(const FeatureMapConfig& config,
                              std::span<const double> x);

void apply_feature_map(Statevector& state, const FeatureMapConfig& config,
                       std::span<const double> x);

// Inverse circuit: gates reversed, angles negated. Used by the inversion test.
void apply_feature_map_adjoint(Statevector& state, const FeatureMapConfig& config,
                               std::span<const double> x);

}  // namespace qkad
