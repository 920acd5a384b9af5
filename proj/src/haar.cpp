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

#include "qkad/haar.hpp"

#include <cmath>

namespace qkad {

Unitary2x2 sample_haar_su2(RandomStream& rng) {
  using cd = std::complex<double>;
  // Ginibre matrix: iid standard complex Gaussians.
  const cd g00{rng.normal(), rng.normal()};
  const cd g10{rng.normal(), rng.normal()};
  const cd g01{rng.normal(), rng.normal()};
  const cd g11{rng.normal(), rng.normal()};

  // Gram-Schmidt QR. r00, r11 are the diagonal of R before the phase fix.
  const double r00 = std::sqrt(std::norm(g00) + std::norm(g10));
  cd q00 = g00 / r00;
  cd q10 = g10 / r00;
  const cd proj = std::conj(q00) * g01 + std::conj(q10) * g11;
  cd v01 = g01 - proj * q00;
  cd v11 = g11 - proj * q10;
  const double r11 = std::sqrt(std::norm(v01) + std::norm(v11));
  cd q01 = v01 / r11;
  cd q11 = v11 / r11;

  // Multiplying column k by phase(r_kk) makes the distribution Haar on U(2).
  // r00, r11 are already real positive here, so no correction is needed; the
  // leftover freedom is the global phase, removed by fixing det = 1.
  const cd det = q00 * q11 - q01 * q10;
  const cd root = std::sqrt(det);
  return Unitary2x2{q00 / root, q01 / root, q10 / root, q11 / root};
}

LocalUnitarySetting sample_haar_local(int n_qubits, RandomStream& rng) {
  if (n_qubits < 1) throw ConfigError("sample_haar_local: n_qubits must be >= 1");
  LocalUnitarySetting setting;
  setting.per_qubit.reserve(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) {
    setting.per_qubit.push_back(sample_haar_su2(rng));
  }
  return setting;
}

LocalUnitarySetting identity_setting(int n_qubits) {
  LocalUnitarySetting setting;
  setting.per_qubit.assign(static_cast<std::size_t>(n_qubits),
                           Unitary2x2{1.0, 0.0, 0.0, 1.0});
  return setting;
}

void apply_local_unitary(Statevector& state, const LocalUnitarySetting& setting) {
  if (setting.n_qubits() != state.n_qubits) {
    throw ConfigError("apply_local_unitary: qubit count mismatch");
  }
  auto* amps = state.amplitudes.data();
  const std::uint64_t half = state.dim() >> 1;
  for (int q = 0; q < state.n_qubits; ++q) {
    const Unitary2x2& u = setting.per_qubit[static_cast<std::size_t>(q)];
    const std::uint64_t mask = std::uint64_t{1} << q;
    const std::uint64_t lo_mask = mask - 1;
    const std::uint64_t hi_mask = ~lo_mask;
    for (std::uint64_t k = 0; k < half; ++k) {
      const std::uint64_t i0 = ((k & hi_mask) << 1) | (k & lo_mask);
      const std::uint64_t i1 = i0 | mask;
      const std::complex<double> a0 = amps[i0];
      const std::complex<double> a1 = amps[i1];
      amps[i0] = u[0] * a0 + u[1] * a1;
      amps[i1] = u[2] * a0 + u[3] * a1;
    }
  }
}

double unitarity_defect(const Unitary2x2& u) {
  using cd = std::complex<double>;
  // U^dag U entries.
  const cd e00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
  const cd e01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
  const cd e10 = std::conj(u[1]) * u[0] + std::conj(u[3]) * u[2];
  const cd e11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
  double defect = std::abs(e00 - cd{1.0, 0.0});
  defect = std::max(defect, std::abs(e01));
  defect = std::max(defect, std::abs(e10));
  defect = std::max(defect, std::abs(e11 - cd{1.0, 0.0}));
  return defect;
}

}  // namespace qkad
