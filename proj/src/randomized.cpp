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

#include "qkad/randomized.hpp"

#include <bit>
#include <cmath>

#include "qkad/parallel.hpp"

namespace qkad {

SettingsPtr sample_rm_settings(int n_qubits, int r, std::uint64_t seed) {
  if (r < 2) throw ConfigError("randomized measurements: need r >= 2 settings");
  auto list = std::make_shared<SettingsList>();
  list->reserve(static_cast<std::size_t>(r));
  for (int u = 0; u < r; ++u) {
    RandomStream rng(derive_seed(seed, stream::kRmSettings, u));
    list->push_back(sample_haar_local(n_qubits, rng));
  }
  return list;
}

ProbabilityTable rm_profile(const Matrix& x, const FeatureMapConfig& fmap,
                            SettingsPtr settings, std::int64_t shots,
                            std::uint64_t seed, bool exact_probabilities) {
  validate(fmap);
  if (!settings || settings->size() < 2) {
    throw ConfigError("rm_profile: need a settings list with r >= 2");
  }
  if (static_cast<int>(x.cols) != fmap.n_qubits) {
    throw ConfigError("rm_profile: feature dimension mismatch");
  }
  if (fmap.n_qubits > kMaxRmQubits) {
    throw ConfigError("rm_profile capacity: post-processing limited to d <= " +
                      std::to_string(kMaxRmQubits));
  }
  if (!exact_probabilities && shots < 1) {
    throw ConfigError("rm_profile: shots must be >= 1");
  }

  const std::size_t r = settings->size();
  const std::size_t dim = std::size_t{1} << fmap.n_qubits;
  ProbabilityTable table;
  table.n_points = x.rows;
  table.n_qubits = fmap.n_qubits;
  table.settings = std::move(settings);
  table.shots = exact_probabilities ? 0 : shots;
  table.probs.assign(x.rows * r * dim, 0.0);

  parallel_for(x.rows, [&](std::size_t i) {
    const Statevector base = feature_map_state(fmap, x.row(i));
    for (std::size_t u = 0; u < r; ++u) {
      Statevector rotated = base;
      apply_local_unitary(rotated, (*table.settings)[u]);
      double* dst = table.probs.data() + (i * r + u) * dim;
      if (exact_probabilities) {
        for (std::size_t s = 0; s < dim; ++s) dst[s] = std::norm(rotated.amplitudes[s]);
      } else {
        RandomStream rng(derive_seed(seed, stream::kRmShots, i, u));
        const SampleCounts counts = sample_bitstrings(rotated, shots, rng);
        for (const auto& [outcome, count] : counts) {
          dst[outcome] = static_cast<double>(count) / static_cast<double>(shots);
        }
      }
    }
  });
  if (!exact_probabilities) {
    table.simulated_shots =
        static_cast<std::uint64_t>(x.rows) * r * static_cast<std::uint64_t>(shots);
  }
  return table;
}

ProbabilityTable rm_profile(const Matrix& x, const FeatureMapConfig& fmap, int r,
                            std::int64_t shots, std::uint64_t seed,
                            bool exact_probabilities) {
  return rm_profile(x, fmap, sample_rm_settings(fmap.n_qubits, r, seed), shots, seed,
                    exact_probabilities);
}

Matrix hamming_weight_matrix(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxRmQubits) {
    throw ConfigError("hamming_weight_matrix: unsupported qubit count");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  Matrix w(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    for (std::size_t t = 0; t < dim; ++t) {
      const int distance = std::popcount(s ^ t);
      w(s, t) = std::pow(-2.0, -distance);
    }
  }
  return w;
}

namespace {

void check_compatible(const ProbabilityTable& p, const ProbabilityTable& q) {
  if (p.settings.get() != q.settings.get()) {
    throw ConfigError("rm_kernel: profiles do not share the same settings list");
  }
  if (p.n_qubits != q.n_qubits) throw ConfigError("rm_kernel: qubit count mismatch");
}

// W p for every (point, setting) of the table; reused across all pairings.
std::vector<double> premultiplied(const ProbabilityTable& table, const Matrix& w) {
  const std::size_t r = static_cast<std::size_t>(table.r());
  const std::size_t dim = w.rows;
  std::vector<double> out(table.n_points * r * dim, 0.0);
  parallel_for(table.n_points, [&](std::size_t j) {
    for (std::size_t u = 0; u < r; ++u) {
      const auto probs = table.outcome_probs(j, u);
      double* dst = out.data() + (j * r + u) * dim;
      for (std::size_t s = 0; s < dim; ++s) {
        const double* wrow = w.data.data() + s * dim;
        double acc = 0.0;
        for (std::size_t t = 0; t < dim; ++t) acc += wrow[t] * probs[t];
        dst[s] = acc;
      }
    }
  });
  return out;
}

double pair_estimate(const ProbabilityTable& p, std::size_t i,
                     const std::vector<double>& wq, std::size_t j, std::size_t r,
                     std::size_t dim, double scale) {
  double acc = 0.0;
  for (std::size_t u = 0; u < r; ++u) {
    const auto pi = p.outcome_probs(i, u);
    const double* qj = wq.data() + (j * r + u) * dim;
    double dot = 0.0;
    for (std::size_t s = 0; s < dim; ++s) dot += pi[s] * qj[s];
    acc += dot;
  }
  return scale * acc / static_cast<double>(r);
}

}  // namespace

KernelMatrix rm_kernel(const ProbabilityTable& p, const ProbabilityTable& q) {
  check_compatible(p, q);
  const std::size_t r = static_cast<std::size_t>(p.r());
  const std::size_t dim = std::size_t{1} << p.n_qubits;
  const double scale = static_cast<double>(dim);
  const Matrix w = hamming_weight_matrix(p.n_qubits);
  const std::vector<double> wq = premultiplied(q, w);

  KernelMatrix out;
  out.method = KernelMethod::randomized;
  out.meta.shots = p.shots;
  out.meta.settings = static_cast<int>(r);
  out.values = Matrix(p.n_points, q.n_points);
  const bool symmetric = (&p == &q);
  parallel_for(p.n_points, [&](std::size_t i) {
    for (std::size_t j = symmetric ? i : 0; j < q.n_points; ++j) {
      out.values(i, j) = pair_estimate(p, i, wq, j, r, dim, scale);
    }
  });
  if (symmetric) {
    for (std::size_t i = 0; i < p.n_points; ++i) {
      for (std::size_t j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
    }
    out.entry_evaluations = p.n_points * (p.n_points + 1) / 2;
  } else {
    out.entry_evaluations = p.n_points * q.n_points;
  }
  return out;
}

ProbabilityTable estimate_purities(ProbabilityTable p) {
  const std::size_t r = static_cast<std::size_t>(p.r());
  const std::size_t dim = std::size_t{1} << p.n_qubits;
  const double scale = static_cast<double>(dim);
  const Matrix w = hamming_weight_matrix(p.n_qubits);
  const std::vector<double> wp = premultiplied(p, w);
  p.purity.resize(p.n_points);
  parallel_for(p.n_points, [&](std::size_t i) {
    p.purity[i] = pair_estimate(p, i, wp, i, r, dim, scale);
  });
  return p;
}

KernelMatrix mitigate(const KernelMatrix& k, std::span<const double> purities_left,
                      std::span<const double> purities_right) {
  if (purities_left.size() != k.rows() || purities_right.size() != k.cols()) {
    throw ConfigError("mitigate: purity vector lengths do not match the matrix");
  }
  for (double p : purities_left) {
    if (!(p > 0.0)) throw NumericError("mitigate: nonpositive purity");
  }
  for (double p : purities_right) {
    if (!(p > 0.0)) throw NumericError("mitigate: nonpositive purity");
  }
  // Same vector on both sides marks a training matrix whose diagonal holds
  // these purities; there K(i,i)/sqrt(p_i p_i) reduces algebraically to
  // K(i,i)/p_i, which keeps the fixed diagonal exact.
  const bool square_self = k.rows() == k.cols() &&
                           purities_left.data() == purities_right.data();
  KernelMatrix out = k;
  out.method = KernelMethod::randomized_mitigated;
  std::vector<double> sqrt_left(purities_left.size());
  std::vector<double> sqrt_right(purities_right.size());
  for (std::size_t i = 0; i < purities_left.size(); ++i) {
    sqrt_left[i] = std::sqrt(purities_left[i]);
  }
  for (std::size_t j = 0; j < purities_right.size(); ++j) {
    sqrt_right[j] = std::sqrt(purities_right[j]);
  }
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      if (square_self && i == j) {
        out.values(i, j) = k.at(i, j) / purities_left[i];
      } else {
        out.values(i, j) = k.at(i, j) / (sqrt_left[i] * sqrt_right[j]);
      }
    }
  }
  return out;
}

double rm_expected_error(std::int64_t s, int r) {
  if (s < 1 || r < 1) throw ConfigError("rm_expected_error: s and r must be >= 1");
  return 1.0 / (static_cast<double>(s) * std::sqrt(static_cast<double>(r)));
}

}  // namespace qkad
