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

#include <memory>

#include "qkad/haar.hpp"
#include "qkad/kernels.hpp"

namespace qkad {

using SettingsList = std::vector<LocalUnitarySetting>;
using SettingsPtr = std::shared_ptr<const SettingsList>;

// One shared list of r measurement settings. Profiles that should be
// combinable must hold the same list instance.
SettingsPtr sample_rm_settings(int n_qubits, int r, std::uint64_t seed);

// Per-point empirical outcome distributions under each shared setting.
struct ProbabilityTable {
  std::size_t n_points = 0;
  int n_qubits = 0;
  SettingsPtr settings;
  // [point][setting][outcome], flattened; each outcome vector sums to 1.
  std::vector<double> probs;
  // Tr(rho^2) estimates, filled by estimate_purities. May exceed 1 at finite
  // shots; never clamped.
  std::vector<double> purity;
  std::int64_t shots = 0;  // 0 when built from exact probabilities
  std::uint64_t simulated_shots = 0;

  int r() const { return settings ? static_cast<int>(settings->size()) : 0; }
  std::span<const double> outcome_probs(std::size_t point, std::size_t setting) const {
    const std::size_t dim = std::size_t{1} << n_qubits;
    return std::span<const double>(
        probs.data() + (point * static_cast<std::size_t>(r()) + setting) * dim, dim);
  }
};

inline constexpr int kMaxRmQubits = 12;  // 4^d post-processing guard

ProbabilityTable rm_profile(const Matrix& x, const FeatureMapConfig& fmap,
                            SettingsPtr settings, std::int64_t shots,
                            std::uint64_t seed, bool exact_probabilities = false);

// Convenience: samples r fresh settings keyed by (seed, settings stream).
ProbabilityTable rm_profile(const Matrix& x, const FeatureMapConfig& fmap, int r,
                            std::int64_t shots, std::uint64_t seed,
                            bool exact_probabilities = false);

// W[s,s'] = (-2)^{-Hamming(s,s')}, the 2^d x 2^d post-processing kernel.
Matrix hamming_weight_matrix(int n_qubits);

// entry (i,j) = 2^d * mean_u( p_{i,u}^T W p_{j,u} ). Estimates Tr(rho_i rho_j);
// raw values may leave [0,1] and are intentionally not clamped.
KernelMatrix rm_kernel(const ProbabilityTable& p, const ProbabilityTable& q);

// Fills the purity field with the diagonal estimator of rm_kernel(p, p).
ProbabilityTable estimate_purities(ProbabilityTable p);

// entry (i,j) -> K(i,j) / sqrt(purity_left_i * purity_right_j). For a square
// training matrix mitigated by its own diagonal purities the diagonal becomes
// exactly 1 (the ratio reduces to K(i,i)/purity_i).
KernelMatrix mitigate(const KernelMatrix& k, std::span<const double> purities_left,
                      std::span<const double> purities_right);

// Expected statistical error of the estimator: 1 / (s * sqrt(r)).
double rm_expected_error(std::int64_t s, int r);

}  // namespace qkad
