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

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qkad/common.hpp"
#include "qkad/rng.hpp"

namespace qkad {

// Dense statevector over n qubits. Index i encodes the computational basis
// bitstring of i with qubit 0 as the least significant bit.
struct Statevector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }
};

inline constexpr int kMaxQubits = 20;

Statevector zero_state(int n_qubits);

void apply_h(Statevector& state, int qubit);
// RZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2}).
void apply_rz(Statevector& state, int qubit, double theta);
// RZZ(theta): phase -theta/2 when the two bits are equal, +theta/2 otherwise.
void apply_rzz(Statevector& state, int qubit_a, int qubit_b, double theta);

double norm(const Statevector& state);
// |<a|b>|^2, clamped to [0, 1] against rounding.
double fidelity(const Statevector& a, const Statevector& b);

std::vector<double> probabilities(const Statevector& state);

using SampleCounts = std::map<std::uint64_t, std::int64_t>;

// Draws `shots` outcomes from |amplitudes|^2; counts sum to shots.
SampleCounts sample_bitstrings(const Statevector& state, std::int64_t shots,
                               RandomStream& rng);

// Count of the given basis index among `shots` categorical draws. Same
// sampler as sample_bitstrings restricted to one outcome of interest.
std::int64_t sample_outcome_count(const Statevector& state, std::uint64_t outcome,
                                  std::int64_t shots, RandomStream& rng);

// Text form, most significant qubit first.
std::string bitstring_text(std::uint64_t index, int n_qubits);

}  // namespace qkad
