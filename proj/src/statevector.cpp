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

#include "qkad/statevector.hpp"

#include <algorithm>
#include <cmath>

namespace qkad {

namespace {

void check_qubit(const Statevector& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw ConfigError("qubit index " + std::to_string(qubit) + " out of range for " +
                      std::to_string(state.n_qubits) + " qubits");
  }
}

}  // namespace

Statevector zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ConfigError("statevector capacity: n_qubits must be in [1, " +
                      std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
  }
  Statevector state;
  state.n_qubits = n_qubits;
  state.amplitudes.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  state.amplitudes[0] = {1.0, 0.0};
  return state;
}

void apply_h(Statevector& state, int qubit) {
  check_qubit(state, qubit);
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  const std::uint64_t lo_mask = mask - 1;
  const std::uint64_t hi_mask = ~lo_mask;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto* amps = state.amplitudes.data();
  const std::uint64_t half = state.dim() >> 1;
  for (std::uint64_t k = 0; k < half; ++k) {
    const std::uint64_t i0 = ((k & hi_mask) << 1) | (k & lo_mask);
    const std::uint64_t i1 = i0 | mask;
    const std::complex<double> a0 = amps[i0];
    const std::complex<double> a1 = amps[i1];
    amps[i0] = inv_sqrt2 * (a0 + a1);
    amps[i1] = inv_sqrt2 * (a0 - a1);
  }
}

void apply_rz(Statevector& state, int qubit, double theta) {
  check_qubit(state, qubit);
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  const std::complex<double> phase_lo = std::polar(1.0, -0.5 * theta);
  const std::complex<double> phase_hi = std::polar(1.0, +0.5 * theta);
  auto* amps = state.amplitudes.data();
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    amps[i] *= (i & mask) ? phase_hi : phase_lo;
  }
}

void apply_rzz(Statevector& state, int qubit_a, int qubit_b, double theta) {
  check_qubit(state, qubit_a);
  check_qubit(state, qubit_b);
  if (qubit_a == qubit_b) throw ConfigError("rzz requires two distinct qubits");
  const std::uint64_t mask_a = std::uint64_t{1} << qubit_a;
  const std::uint64_t mask_b = std::uint64_t{1} << qubit_b;
  const std::complex<double> phase_eq = std::polar(1.0, -0.5 * theta);
  const std::complex<double> phase_ne = std::polar(1.0, +0.5 * theta);
  auto* amps = state.amplitudes.data();
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    const bool equal_bits = ((i & mask_a) != 0) == ((i & mask_b) != 0);
    amps[i] *= equal_bits ? phase_eq : phase_ne;
  }
}

double norm(const Statevector& state) {
  double s = 0.0;
  for (const auto& a : state.amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.n_qubits != b.n_qubits) {
    throw ConfigError("fidelity: mismatched qubit counts");
  }
  std::complex<double> inner{0.0, 0.0};
  const std::size_t dim = a.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    inner += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return std::clamp(std::norm(inner), 0.0, 1.0);
}

std::vector<double> probabilities(const Statevector& state) {
  std::vector<double> probs(state.dim());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::norm(state.amplitudes[i]);
  }
  return probs;
}

namespace {

std::vector<double> cumulative(const Statevector& state) {
  std::vector<double> cum(state.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < cum.size(); ++i) {
    acc += std::norm(state.amplitudes[i]);
    cum[i] = acc;
  }
  cum.back() = std::max(cum.back(), 1.0);  // absorb rounding in the tail
  return cum;
}

std::uint64_t draw_index(const std::vector<double>& cum, RandomStream& rng) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  return static_cast<std::uint64_t>(it == cum.end() ? cum.size() - 1
                                                    : it - cum.begin());
}

}  // namespace

SampleCounts sample_bitstrings(const Statevector& state, std::int64_t shots,
                               RandomStream& rng) {
  if (shots < 1) throw ConfigError("sample_bitstrings: shots must be >= 1");
  const auto cum = cumulative(state);
  SampleCounts counts;
  for (std::int64_t s = 0; s < shots; ++s) {
    ++counts[draw_index(cum, rng)];
  }
  return counts;
}

std::int64_t sample_outcome_count(const Statevector& state, std::uint64_t outcome,
                                  std::int64_t shots, RandomStream& rng) {
  if (shots < 1) throw ConfigError("sample_outcome_count: shots must be >= 1");
  const auto cum = cumulative(state);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    if (draw_index(cum, rng) == outcome) ++hits;
  }
  return hits;
}

std::string bitstring_text(std::uint64_t index, int n_qubits) {
  std::string text(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (index & (std::uint64_t{1} << q)) {
      text[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
    }
  }
  return text;
}

}  // namespace qkad
