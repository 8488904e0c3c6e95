// Copyright 2026 The procmat developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "procmat/operator.hpp"

namespace procmat {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic, splittable randomness. A fixed seed reproduces the same
// sample sequence; child(i) derives an independent stream per sample so
// batched computations do not depend on evaluation order.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  RandomSource child(std::uint64_t index) const {
    return RandomSource(detail::splitmix64(seed_ ^ detail::splitmix64(index)));
  }

  std::mt19937_64 engine() const { return std::mt19937_64(seed_); }

 private:
  std::uint64_t seed_;
};

namespace detail {

// Uniform double in (0, 1]; avoids the stdlib distributions so streams are
// identical across standard-library implementations.
inline double uniform_unit(std::mt19937_64& eng) {
  const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return u > 0.0 ? u : 0x1.0p-53;
}

inline std::pair<double, double> normal_pair(std::mt19937_64& eng) {
  const double u1 = uniform_unit(eng);
  const double u2 = uniform_unit(eng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

inline Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                               std::mt19937_64& eng) {
  Matrix g(rows, cols);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      auto [re, im] = normal_pair(eng);
      g(i, j) = Complex(re, im) * inv_sqrt2;
    }
  return g;
}

}  // namespace detail

// Haar-distributed unitary: complex Gaussian matrix, QR orthonormalization,
// then phase correction by the sign of the triangular factor's diagonal.
inline Matrix haar_unitary_matrix(int d, const RandomSource& rng) {
  auto eng = rng.engine();
  Matrix g = detail::complex_gaussian(d, d, eng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
  }
  return q;
}

inline Operator random_haar_unitary(int d, const RandomSource& rng,
                                    const std::string& label = "U") {
  return Operator(SubsystemLayout({label}, {d}), haar_unitary_matrix(d, rng));
}

// Gaussian Hermitian matrix, handy for property tests.
inline Matrix random_hermitian_matrix(Eigen::Index d, const RandomSource& rng) {
  auto eng = rng.engine();
  Matrix g = detail::complex_gaussian(d, d, eng);
  return 0.5 * (g + g.adjoint()).eval();
}

}  // namespace procmat
