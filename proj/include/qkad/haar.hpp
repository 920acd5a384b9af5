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

#include <array>
#include <complex>
#include <vector>

#include "qkad/rng.hpp"
#include "qkad/statevector.hpp"

namespace qkad {

// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Unitary2x2 = std::array<std::complex<double>, 4>;

// One random measurement setting: an independent SU(2) element per qubit.
struct LocalUnitarySetting {
  std::vector<Unitary2x2> per_qubit;

  int n_qubits() const { return static_cast<int>(per_qubit.size()); }
};

// Haar sample on SU(2): QR of a complex Gaussian matrix with the R-diagonal
// phase fix, then normalized to unit determinant.
Unitary2x2 sample_haar_su2(RandomStream& rng);

LocalUnitarySetting sample_haar_local(int n_qubits, RandomStream& rng);

LocalUnitarySetting identity_setting(int n_qubits);

void apply_local_unitary(Statevector& state, const LocalUnitarySetting& setting);

// max |U^dag U - I| entrywise; test and validation helper.
double unitarity_defect(const Unitary2x2& u);

}  // namespace qkad
