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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qkad/feature_map.hpp"
#include "qkad/haar.hpp"
#include "qkad/statevector.hpp"

using namespace qkad;

TEST_CASE("zero_state basics and capacity guard") {
  const Statevector one = zero_state(1);
  REQUIRE(one.amplitudes.size() == 2);
  CHECK(one.amplitudes[0] == std::complex<double>{1.0, 0.0});
  CHECK(one.amplitudes[1] == std::complex<double>{0.0, 0.0});

  const Statevector two = zero_state(2);
  CHECK(two.amplitudes[0] == std::complex<double>{1.0, 0.0});
  CHECK(norm(two) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(zero_state(21), ConfigError);
  CHECK_THROWS_AS(zero_state(0), ConfigError);
}

TEST_CASE("hadamard on |0> gives |+>") {
  Statevector state = zero_state(1);
  apply_h(state, 0);
  CHECK(state.amplitudes[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(state.amplitudes[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(state.amplitudes[0].imag()) < 1e-15);
}

TEST_CASE("rz on a basis state is a global phase") {
  Statevector state = zero_state(1);
  const Statevector reference = state;
  apply_rz(state, 0, 0.73);
  CHECK(fidelity(state, reference) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rzz(pi) fixes states with equal bits up to global phase") {
  Statevector bell = zero_state(2);
  bell.amplitudes[0] = {1.0 / std::sqrt(2.0), 0.0};
  bell.amplitudes[3] = {1.0 / std::sqrt(2.0), 0.0};
  const Statevector reference = bell;
  apply_rzz(bell, 0, 1, M_PI);
  CHECK(fidelity(bell, reference) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gate preconditions") {
  Statevector state = zero_state(2);
  CHECK_THROWS_AS(apply_h(state, 2), ConfigError);
  CHECK_THROWS_AS(apply_rz(state, -1, 0.1), ConfigError);
  CHECK_THROWS_AS(apply_rzz(state, 0, 0, 0.1), ConfigError);
}

TEST_CASE("feature map with zero angles reduces to Hadamard layers") {
  const auto config = FeatureMapConfig::repeated_blocks(2, 1);  // block_reps = 2
  const std::vector<double> x{0.0, 0.0};
  const Statevector state = feature_map_state(config, x);
  const Statevector zeros = zero_state(2);
  CHECK(fidelity(state, zeros) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("feature map is normalized and deterministic") {
  const auto config = FeatureMapConfig::repeated_blocks(3, 3);
  const std::vector<double> x{0.4, -1.2, 0.25};
  const Statevector a = feature_map_state(config, x);
  const Statevector b = feature_map_state(config, x);
  CHECK(std::abs(norm(a) - 1.0) <= 1e-10);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    CHECK(a.amplitudes[i] == b.amplitudes[i]);
  }
}

TEST_CASE("feature map matches the dense matrix-product oracle") {
  RandomStream rng(42);
  for (int d = 1; d <= 3; ++d) {
    const auto config = FeatureMapConfig::repeated_blocks(d, 3);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<double> x(d);
      for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
      const Statevector state = feature_map_state(config, x);
      const auto dense = oracle::feature_map_state_dense(config, x);
      for (std::size_t i = 0; i < state.dim(); ++i) {
        CHECK(std::abs(state.amplitudes[i] - dense[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("feature map d=2 lambda=3 fixed input matches oracle amplitudes") {
  const auto config = FeatureMapConfig::repeated_blocks(2, 3);
  const std::vector<double> x{0.1, 0.2};
  const Statevector state = feature_map_state(config, x);
  const auto dense = oracle::feature_map_state_dense(config, x);
  REQUIRE(state.dim() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(state.amplitudes[i] - dense[i]) <= 1e-10);
  }
}

TEST_CASE("amplified-angle mode agrees with its own dense evaluation") {
  const auto config = FeatureMapConfig::amplified_angles(2, 3);
  CHECK(config.block_reps == 2);
  CHECK(config.angle_scale == doctest::Approx(3.0));
  CHECK(config.pair_angle_scale == doctest::Approx(9.0));
  const std::vector<double> x{0.3, -0.2};
  const Statevector state = feature_map_state(config, x);
  const auto dense = oracle::feature_map_state_dense(config, x);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    CHECK(std::abs(state.amplitudes[i] - dense[i]) <= 1e-10);
  }
}

TEST_CASE("feature map adjoint inverts the map") {
  const auto config = FeatureMapConfig::repeated_blocks(3, 2);
  const std::vector<double> x{0.7, -0.4, 1.1};
  Statevector state = feature_map_state(config, x);
  apply_feature_map_adjoint(state, config, x);
  const Statevector zeros = zero_state(3);
  CHECK(fidelity(state, zeros) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("feature map input validation") {
  const auto config = FeatureMapConfig::repeated_blocks(2, 3);
  const std::vector<double> wrong{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(feature_map_state(config, wrong), ConfigError);
  FeatureMapConfig bad = config;
  bad.block_reps = 1;
  const std::vector<double> x{0.1, 0.2};
  CHECK_THROWS_AS(feature_map_state(bad, x), ConfigError);
}

TEST_CASE("norm preserved across long random gate sequences") {
  RandomStream rng(7);
  Statevector state = zero_state(3);
  for (int step = 0; step < 200; ++step) {
    const int kind = static_cast<int>(rng.uniform_int(0, 2));
    const int q = static_cast<int>(rng.uniform_int(0, 2));
    if (kind == 0) {
      apply_h(state, q);
    } else if (kind == 1) {
      apply_rz(state, q, 4.0 * rng.uniform() - 2.0);
    } else {
      const int q2 = (q + 1 + static_cast<int>(rng.uniform_int(0, 1))) % 3;
      apply_rzz(state, q, q2, 4.0 * rng.uniform() - 2.0);
    }
    CHECK(std::abs(norm(state) - 1.0) <= 1e-9);
  }
}

TEST_CASE("fidelity analytic values and symmetry") {
  Statevector zero = zero_state(1);
  Statevector one = zero_state(1);
  one.amplitudes = {{0.0, 0.0}, {1.0, 0.0}};
  Statevector plus = zero_state(1);
  apply_h(plus, 0);

  CHECK(fidelity(zero, zero) == doctest::Approx(1.0));
  CHECK(fidelity(zero, one) == doctest::Approx(0.0));
  CHECK(fidelity(zero, plus) == doctest::Approx(0.5));
  CHECK(std::abs(fidelity(zero, plus) - fidelity(plus, zero)) <= 1e-12);

  Statevector wide = zero_state(2);
  CHECK_THROWS_AS(fidelity(zero, wide), ConfigError);
}

TEST_CASE("sampling a deterministic state") {
  const Statevector state = zero_state(2);
  RandomStream rng(0);
  const SampleCounts counts = sample_bitstrings(state, 1000, rng);
  REQUIRE(counts.size() == 1);
  CHECK(counts.at(0) == 1000);
  CHECK(bitstring_text(0, 2) == "00");
  CHECK(bitstring_text(1, 2) == "01");  // qubit 0 set, printed MSB first
  CHECK(bitstring_text(2, 2) == "10");
}

TEST_CASE("sampling |+> concentrates near one half") {
  Statevector plus = zero_state(1);
  apply_h(plus, 0);
  RandomStream rng(0);
  const SampleCounts counts = sample_bitstrings(plus, 100000, rng);
  std::int64_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  CHECK(total == 100000);
  const double freq0 = static_cast<double>(counts.at(0)) / 100000.0;
  CHECK(freq0 >= 0.49);
  CHECK(freq0 <= 0.51);
}

TEST_CASE("sampled distribution converges in total variation") {
  const auto config = FeatureMapConfig::repeated_blocks(3, 3);
  const std::vector<double> x{0.8, -0.3, 0.5};
  const Statevector state = feature_map_state(config, x);
  const auto probs = probabilities(state);
  RandomStream rng(11);
  const std::int64_t shots = 100000;
  const SampleCounts counts = sample_bitstrings(state, shots, rng);
  double tv = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto it = counts.find(i);
    const double freq =
        it == counts.end() ? 0.0
                           : static_cast<double>(it->second) / static_cast<double>(shots);
    tv += std::abs(freq - probs[i]);
  }
  tv *= 0.5;
  CHECK(tv <= 5.0 * std::sqrt(8.0 / static_cast<double>(shots)));
}

TEST_CASE("haar samples are special unitaries") {
  RandomStream rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Unitary2x2 u = sample_haar_su2(rng);
    CHECK(unitarity_defect(u) <= 1e-10);
    const std::complex<double> det = u[0] * u[3] - u[1] * u[2];
    CHECK(std::abs(std::abs(det) - 1.0) <= 1e-10);
    CHECK(std::abs(det - std::complex<double>{1.0, 0.0}) <= 1e-10);
  }
}

TEST_CASE("haar mean of |U00|^2 is one half") {
  RandomStream rng(5);
  double acc = 0.0;
  const int samples = 100000;
  for (int s = 0; s < samples; ++s) {
    acc += std::norm(sample_haar_su2(rng)[0]);
  }
  const double mean = acc / samples;
  CHECK(mean >= 0.495);
  CHECK(mean <= 0.505);
}

TEST_CASE("local unitary application") {
  const Statevector zeros = zero_state(2);

  Statevector state = zeros;
  apply_local_unitary(state, identity_setting(2));
  CHECK(fidelity(state, zeros) == doctest::Approx(1.0));

  // H on qubit 0 via the setting path matches the gate path.
  const double s = 1.0 / std::sqrt(2.0);
  LocalUnitarySetting h_setting = identity_setting(2);
  h_setting.per_qubit[0] = Unitary2x2{s, s, s, -s};
  Statevector a = zeros;
  apply_local_unitary(a, h_setting);
  Statevector b = zeros;
  apply_h(b, 0);
  CHECK(fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-12));

  RandomStream rng(9);
  Statevector random_state = zeros;
  apply_local_unitary(random_state, sample_haar_local(2, rng));
  CHECK(std::abs(norm(random_state) - 1.0) <= 1e-10);

  CHECK_THROWS_AS(apply_local_unitary(a, identity_setting(3)), ConfigError);
}
