//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_RNG_HPP
#define MOLTOK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace moltok {

// Deterministic random source. mt19937_64 is fully specified by the
// standard; the value mappings below avoid std::uniform_* distributions,
// whose sequences are implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Inclusive range; modulo mapping (bias negligible at our ranges).
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; draws two uniforms per call, second discarded.
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // First k entries of a Fisher-Yates pass over v.
  template <typename T>
  std::vector<T> sample_without_replacement(std::vector<T> v, int k) {
    const int n = static_cast<int>(v.size());
    if (k > n) k = n;
    for (int i = 0; i < k; ++i) {
      const int j = uniform_int(i, n - 1);
      std::swap(v[i], v[j]);
    }
    v.resize(k);
    return v;
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace moltok

#endif  // MOLTOK_RNG_HPP
