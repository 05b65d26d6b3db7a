// SPDX-License-Identifier: Apache-2.0

#ifndef CPSA_RNG_HPP
#define CPSA_RNG_HPP

#include "cpsa/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cpsa {

// Deterministic random stream. All distributions are derived from
// mt19937_64 output with fixed arithmetic (no std::*_distribution, whose
// algorithms are implementation-defined), so a seed pins the exact byte
// sequence of every simulation result.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Circularly-symmetric complex Gaussian CN(0, 1): real and imaginary
  /// parts independent N(0, 1/2). Box-Muller on two uniforms.
  Complex cnormal() {
    const double r = std::sqrt(-std::log(uniform_pos()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  /// Matrix with i.i.d. CN(0, 1) entries, filled column-major.
  CMat cnormal_matrix(Eigen::Index rows, Eigen::Index cols) {
    CMat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cnormal();
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cpsa

#endif  // CPSA_RNG_HPP
