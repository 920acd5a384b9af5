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

// Test-only reference implementations. Each takes a deliberately different
// route from the library code it checks: dense Kronecker-product matrices
// instead of in-place bit loops, exhaustive enumeration instead of
// closed-form passes. Keep them slow and obvious.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qkad/common.hpp"
#include "qkad/feature_map.hpp"

namespace qkad::oracle {

using cd = std::complex<double>;
using CVec = std::vector<cd>;
using CMat = std::vector<std::vector<cd>>;

inline CMat cidentity(std::size_t n) {
  CMat m(n, CVec(n, cd{0, 0}));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = cd{1, 0};
  return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
  const std::size_t ar = a.size(), ac = a[0].size();
  const std::size_t br = b.size(), bc = b[0].size();
  CMat out(ar * br, CVec(ac * bc, cd{0, 0}));
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l)
          out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return out;
}

inline CMat matmul(const CMat& a, const CMat& b) {
  const std::size_t n = a.size(), m = b[0].size(), inner = b.size();
  CMat out(n, CVec(m, cd{0, 0}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline CVec matvec(const CMat& a, const CVec& x) {
  CVec out(a.size(), cd{0, 0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  return out;
}

// Single-qubit gate embedded at `qubit` (qubit 0 = least significant bit):
// kron(I_high, G, I_low).
inline CMat embed_single(const CMat& g, int qubit, int n_qubits) {
  const std::size_t low = std::size_t{1} << qubit;
  const std::size_t high = std::size_t{1} << (n_qubits - 1 - qubit);
  return kron(cidentity(high), kron(g, cidentity(low)));
}

inline CMat hadamard_full(int qubit, int n_qubits) {
  const double s = 1.0 / std::sqrt(2.0);
  const CMat h{{cd{s, 0}, cd{s, 0}}, {cd{s, 0}, cd{-s, 0}}};
  return embed_single(h, qubit, n_qubits);
}

// RZ(theta) = cos(theta/2) I - i sin(theta/2) Z.
inline CMat rz_full(int qubit, double theta, int n_qubits) {
  const cd c{std::cos(theta / 2.0), 0};
  const cd is{0, std::sin(theta / 2.0)};
  const CMat rz{{c - is, cd{0, 0}}, {cd{0, 0}, c + is}};
  return embed_single(rz, qubit, n_qubits);
}

// RZZ(theta) = cos(theta/2) I - i sin(theta/2) Z_a Z_b, built from full
// Pauli-Z matrices so no two-qubit bit logic is shared with the library.
inline CMat rzz_full(int qubit_a, int qubit_b, double theta, int n_qubits) {
  const CMat z{{cd{1, 0}, cd{0, 0}}, {cd{0, 0}, cd{-1, 0}}};
  const CMat zz = matmul(embed_single(z, qubit_a, n_qubits),
                         embed_single(z, qubit_b, n_qubits));
  const std::size_t dim = std::size_t{1} << n_qubits;
  CMat out = cidentity(dim);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      out[i][j] = c * out[i][j] - cd{0, s} * zz[i][j];
  return out;
}

// Straight-line dense evaluation of the embedding circuit.
inline CVec feature_map_state_dense(const FeatureMapConfig& config,
                                    std::span<const double> x) {
  const int d = config.n_qubits;
  const std::size_t dim = std::size_t{1} << d;
  CVec state(dim, cd{0, 0});
  state[0] = cd{1, 0};
  for (int rep = 0; rep < config.block_reps; ++rep) {
    for (int q = 0; q < d; ++q) state = matvec(hadamard_full(q, d), state);
    for (int q = 0; q < d; ++q) {
      state = matvec(rz_full(q, 2.0 * config.angle_scale * x[q], d), state);
    }
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        state = matvec(
            rzz_full(a, b, 2.0 * config.pair_angle_scale * x[a] * x[b], d), state);
      }
  }
  return state;
}

inline double fidelity_dense(const CVec& a, const CVec& b) {
  cd inner{0, 0};
  for (std::size_t i = 0; i < a.size(); ++i) inner += std::conj(a[i]) * b[i];
  return std::norm(inner);
}

// Exact kernel entry straight from the dense circuit oracle.
inline double fidelity_kernel_entry_dense(const FeatureMapConfig& config,
                                          std::span<const double> x,
                                          std::span<const double> y) {
  return fidelity_dense(feature_map_state_dense(config, x),
                        feature_map_state_dense(config, y));
}

// Average precision by exhaustive thresholding: for every distinct score value
// predict "anomaly iff score >= t" and recount precision/recall from scratch.
inline double average_precision_bruteforce(std::span<const int> truth,
                                           std::span<const double> scores) {
  std::vector<double> thresholds(scores.begin(), scores.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::int64_t positives = 0;
  for (int t : truth)
    if (t == kAnomaly) ++positives;

  double ap = 0.0;
  double prev_recall = 0.0;
  for (double t : thresholds) {
    std::int64_t tp = 0, flagged = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) {
        ++flagged;
        if (truth[i] == kAnomaly) ++tp;
      }
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(positives);
    const double precision = static_cast<double>(tp) / static_cast<double>(flagged);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

// Global minimum of 1/2 a^T G a over the box-and-simplex feasible set by
// multiresolution exhaustive grid search. Convex instances only; the grid
// shrinks around the incumbent until the step is below `final_step`.
inline double dual_objective_bruteforce(const Matrix& g, double nu,
                                        double final_step = 1e-5) {
  const std::size_t n = g.rows;
  const double box = 1.0 / (nu * static_cast<double>(n));

  auto objective = [&](const std::vector<double>& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += g(i, j) * a[j];
      acc += a[i] * row;
    }
    return 0.5 * acc;
  };

  // Feasible incumbent: fill the box left to right.
  std::vector<double> center(n, 0.0);
  double remaining = 1.0;
  for (std::size_t i = 0; i < n && remaining > 0; ++i) {
    center[i] = std::min(box, remaining);
    remaining -= center[i];
  }
  double best = objective(center);

  const int points_per_dim = 7;
  const std::size_t free_dims = n - 1;
  double radius = 1.0;
  while (radius > final_step) {
    // Sweep the grid around the incumbent until it stops moving, then shrink.
    bool improved = true;
    while (improved) {
      improved = false;
      std::vector<int> idx(free_dims, 0);
      std::vector<double> candidate(n, 0.0);
      bool carry = false;
      while (!carry) {
        double partial = 0.0;
        bool feasible = true;
        for (std::size_t k = 0; k < free_dims && feasible; ++k) {
          const double offset = radius * (2.0 * idx[k] / (points_per_dim - 1) - 1.0);
          candidate[k] = center[k] + offset;
          if (candidate[k] < -1e-15 || candidate[k] > box + 1e-15) feasible = false;
          partial += candidate[k];
        }
        if (feasible) {
          candidate[n - 1] = 1.0 - partial;
          if (candidate[n - 1] >= -1e-15 && candidate[n - 1] <= box + 1e-15) {
            for (double& v : candidate) v = std::clamp(v, 0.0, box);
            const double value = objective(candidate);
            if (value < best - 1e-15) {
              best = value;
              center = candidate;
              improved = true;
            }
          }
        }
        // odometer increment
        carry = true;
        for (std::size_t k = 0; k < free_dims; ++k) {
          if (++idx[k] < points_per_dim) {
            carry = false;
            break;
          }
          idx[k] = 0;
        }
      }
    }
    radius *= 0.45;
  }
  return best;
}

}  // namespace qkad::oracle
