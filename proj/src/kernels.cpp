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

#include "qkad/kernels.hpp"

#include <cmath>

#include "qkad/parallel.hpp"

namespace qkad {

std::string method_name(KernelMethod method) {
  switch (method) {
    case KernelMethod::rbf: return "rbf";
    case KernelMethod::fidelity_exact: return "fidelity_exact";
    case KernelMethod::inversion: return "inversion";
    case KernelMethod::swap_test: return "swap";
    case KernelMethod::randomized: return "randomized";
    case KernelMethod::randomized_mitigated: return "randomized_mitigated";
  }
  throw ConfigError("unknown kernel method");
}

KernelMethod method_from_name(const std::string& name) {
  if (name == "rbf") return KernelMethod::rbf;
  if (name == "fidelity_exact") return KernelMethod::fidelity_exact;
  if (name == "inversion") return KernelMethod::inversion;
  if (name == "swap") return KernelMethod::swap_test;
  if (name == "randomized") return KernelMethod::randomized;
  if (name == "randomized_mitigated") return KernelMethod::randomized_mitigated;
  throw ConfigError("unknown kernel method: " + name);
}

namespace {

void check_feature_dims(const Matrix& x, const Matrix& y) {
  if (x.cols != y.cols) {
    throw ConfigError("kernel: feature dimension mismatch (" + std::to_string(x.cols) +
                      " vs " + std::to_string(y.cols) + ")");
  }
  if (x.rows == 0 || y.rows == 0) throw ConfigError("kernel: empty input");
}

void check_fmap_dims(const Matrix& x, const Matrix& y, const FeatureMapConfig& fmap) {
  check_feature_dims(x, y);
  if (static_cast<int>(x.cols) != fmap.n_qubits) {
    throw ConfigError("kernel: feature dimension " + std::to_string(x.cols) +
                      " does not match feature map with " +
                      std::to_string(fmap.n_qubits) + " qubits");
  }
}

std::vector<Statevector> embed_rows(const Matrix& x, const FeatureMapConfig& fmap) {
  std::vector<Statevector> states(x.rows);
  parallel_for(x.rows, [&](std::size_t i) { states[i] = feature_map_state(fmap, x.row(i)); });
  return states;
}

}  // namespace

double gamma_scale(const Matrix& x_train) {
  if (x_train.size() == 0) throw ConfigError("gamma_scale: empty matrix");
  double mean = 0.0;
  for (double v : x_train.data) mean += v;
  mean /= static_cast<double>(x_train.size());
  double var = 0.0;
  for (double v : x_train.data) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x_train.size());
  if (var <= 1e-300) throw NumericError("gamma_scale: degenerate data (zero pooled variance)");
  return 1.0 / (static_cast<double>(x_train.cols) * var);
}

KernelMatrix rbf_matrix(const Matrix& x, const Matrix& y, const RbfConfig& config) {
  check_feature_dims(x, y);
  if (config.gamma <= 0.0) throw ConfigError("rbf: gamma must be positive");
  KernelMatrix out;
  out.method = KernelMethod::rbf;
  out.meta.gamma = config.gamma;
  out.values = Matrix(x.rows, y.rows);
  const bool symmetric = (&x == &y);
  parallel_for(x.rows, [&](std::size_t i) {
    const auto xi = x.row(i);
    for (std::size_t j = symmetric ? i : 0; j < y.rows; ++j) {
      const auto yj = y.row(j);
      double dist2 = 0.0;
      for (std::size_t k = 0; k < xi.size(); ++k) {
        const double diff = xi[k] - yj[k];
        dist2 += diff * diff;
      }
      out.values(i, j) = std::exp(-config.gamma * dist2);
    }
  });
  if (symmetric) {
    for (std::size_t i = 0; i < x.rows; ++i) {
      for (std::size_t j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
    }
    out.entry_evaluations = x.rows * (x.rows + 1) / 2;
  } else {
    out.entry_evaluations = x.rows * y.rows;
  }
  return out;
}

KernelMatrix fidelity_exact_matrix(const Matrix& x, const Matrix& y,
                                   const FeatureMapConfig& fmap) {
  check_fmap_dims(x, y, fmap);
  KernelMatrix out;
  out.method = KernelMethod::fidelity_exact;
  out.values = Matrix(x.rows, y.rows);
  const bool symmetric = (&x == &y);

  const auto left = embed_rows(x, fmap);
  const auto right = symmetric ? std::vector<Statevector>{} : embed_rows(y, fmap);
  const auto& rstates = symmetric ? left : right;

  parallel_for(x.rows, [&](std::size_t i) {
    for (std::size_t j = symmetric ? i : 0; j < y.rows; ++j) {
      out.values(i, j) = fidelity(left[i], rstates[j]);
    }
  });
  if (symmetric) {
    for (std::size_t i = 0; i < x.rows; ++i) {
      for (std::size_t j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
    }
    out.entry_evaluations = x.rows * (x.rows + 1) / 2;
  } else {
    out.entry_evaluations = x.rows * y.rows;
  }
  return out;
}

KernelMatrix inversion_test_matrix(const Matrix& x, const Matrix& y,
                                   const FeatureMapConfig& fmap, std::int64_t shots,
                                   std::uint64_t seed) {
  check_fmap_dims(x, y, fmap);
  if (shots < 1) throw ConfigError("inversion test: shots must be >= 1");
  KernelMatrix out;
  out.method = KernelMethod::inversion;
  out.meta.seed = seed;
  out.meta.shots = shots;
  out.values = Matrix(x.rows, y.rows);
  const bool symmetric = (&x == &y);

  parallel_for(x.rows, [&](std::size_t i) {
    for (std::size_t j = symmetric ? i : 0; j < y.rows; ++j) {
      Statevector state = feature_map_state(fmap, x.row(i));
      apply_feature_map_adjoint(state, fmap, y.row(j));
      RandomStream rng(derive_seed(seed, stream::kInversion, i, j));
      const std::int64_t zeros = sample_outcome_count(state, 0, shots, rng);
      out.values(i, j) = static_cast<double>(zeros) / static_cast<double>(shots);
    }
  });
  if (symmetric) {
    for (std::size_t i = 0; i < x.rows; ++i) {
      for (std::size_t j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
    }
    out.entry_evaluations = x.rows * (x.rows + 1) / 2;
  } else {
    out.entry_evaluations = x.rows * y.rows;
  }
  out.simulated_shots = out.entry_evaluations * static_cast<std::uint64_t>(shots);
  return out;
}

KernelMatrix swap_test_matrix(const Matrix& x, const Matrix& y,
                              const FeatureMapConfig& fmap, std::int64_t shots,
                              std::uint64_t seed) {
  check_fmap_dims(x, y, fmap);
  if (shots < 1) throw ConfigError("swap test: shots must be >= 1");
  KernelMatrix out;
  out.method = KernelMethod::swap_test;
  out.meta.seed = seed;
  out.meta.shots = shots;
  out.values = Matrix(x.rows, y.rows);
  const bool symmetric = (&x == &y);

  const auto left = embed_rows(x, fmap);
  const auto right = symmetric ? std::vector<Statevector>{} : embed_rows(y, fmap);
  const auto& rstates = symmetric ? left : right;

  parallel_for(x.rows, [&](std::size_t i) {
    for (std::size_t j = symmetric ? i : 0; j < y.rows; ++j) {
      const double p0 = 0.5 * (1.0 + fidelity(left[i], rstates[j]));
      RandomStream rng(derive_seed(seed, stream::kSwap, i, j));
      std::int64_t zeros = 0;
      for (std::int64_t s = 0; s < shots; ++s) {
        if (rng.uniform() < p0) ++zeros;
      }
      const double estimate =
          2.0 * static_cast<double>(zeros) / static_cast<double>(shots) - 1.0;
      out.values(i, j) = std::clamp(estimate, 0.0, 1.0);
    }
  });
  if (symmetric) {
    for (std::size_t i = 0; i < x.rows; ++i) {
      for (std::size_t j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
    }
    out.entry_evaluations = x.rows * (x.rows + 1) / 2;
  } else {
    out.entry_evaluations = x.rows * y.rows;
  }
  out.simulated_shots = out.entry_evaluations * static_cast<std::uint64_t>(shots);
  return out;
}

double swap_test_zero_prob_full_circuit(std::span<const double> x,
                                        std::span<const double> y,
                                        const FeatureMapConfig& fmap) {
  validate(fmap);
  const int d = fmap.n_qubits;
  if (d > 4) throw ConfigError("full swap-test circuit limited to d <= 4");
  const Statevector phi_x = feature_map_state(fmap, x);
  const Statevector phi_y = feature_map_state(fmap, y);

  // Register layout: qubits [0,d) hold Phi(x), [d,2d) hold Phi(y),
  // qubit 2d is the ancilla.
  const int total = 2 * d + 1;
  Statevector joint = zero_state(total);
  const std::uint64_t dim = std::uint64_t{1} << d;
  joint.amplitudes.assign(joint.dim(), {0.0, 0.0});
  for (std::uint64_t b = 0; b < dim; ++b) {
    for (std::uint64_t a = 0; a < dim; ++a) {
      joint.amplitudes[(b << d) | a] = phi_y.amplitudes[b] * phi_x.amplitudes[a];
    }
  }

  apply_h(joint, 2 * d);
  // Controlled swap of the two registers on ancilla = 1.
  const std::uint64_t anc = std::uint64_t{1} << (2 * d);
  for (std::uint64_t b = 0; b < dim; ++b) {
    for (std::uint64_t a = 0; a < b; ++a) {
      const std::uint64_t ia = anc | (b << d) | a;
      const std::uint64_t ib = anc | (a << d) | b;
      std::swap(joint.amplitudes[ia], joint.amplitudes[ib]);
    }
  }
  apply_h(joint, 2 * d);

  double p0 = 0.0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * d)); ++i) {
    p0 += std::norm(joint.amplitudes[i]);
  }
  return p0;
}

}  // namespace qkad
