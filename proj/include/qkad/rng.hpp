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

#include <cmath>
#include <cstdint>

namespace qkad {

// splitmix64 finalizer (Steele, Lea & Flood).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

// Key for a derived stream. Any matrix entry, setting or component gets its
// own key, so results do not depend on evaluation order or thread schedule.
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t seed, Parts... parts) {
  std::uint64_t h = mix64(seed ^ 0xa0761d6478bd642full);
  ((h = hash_combine(h, static_cast<std::uint64_t>(parts))), ...);
  return h;
}

// Stream tags keep unrelated consumers of the same master seed apart.
namespace stream {
inline constexpr std::uint64_t kInversion = 0x11;
inline constexpr std::uint64_t kSwap = 0x12;
inline constexpr std::uint64_t kRmSettings = 0x13;
inline constexpr std::uint64_t kRmShots = 0x14;
inline constexpr std::uint64_t kHaar = 0x15;
inline constexpr std::uint64_t kPlanSizes = 0x21;
inline constexpr std::uint64_t kPlanSubset = 0x22;
inline constexpr std::uint64_t kComponent = 0x23;
inline constexpr std::uint64_t kSynthetic = 0x31;
inline constexpr std::uint64_t kSplit = 0x32;
}  // namespace stream

// Counter-based generator: cheap to construct per entry, deterministic,
// and good enough statistically for Monte Carlo sampling.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer on [lo, hi], inclusive, via masked rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t range = hi - lo + 1;
    if (range == 0) return (*this)();  // full 64-bit range
    std::uint64_t mask = range - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t draw;
    do {
      draw = (*this)() & mask;
    } while (draw >= range);
    return lo + draw;
  }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qkad
