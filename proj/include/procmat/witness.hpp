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
#include <cstddef>
#include <limits>
#include <vector>

#include "procmat/covariant.hpp"
#include "procmat/operator.hpp"
#include "procmat/process.hpp"
#include "procmat/twirl.hpp"

namespace procmat {

// A score functional W -> scale * Tr[m W] with Hermitian m on the canonical
// process layout.
class Witness {
 public:
  Witness(Operator m, double scale)
      : m_(ProcessMatrix(std::move(m)).op()), scale_(scale) {
    if (scale <= 0.0)
      throw std::invalid_argument("witness: scale must be positive");
  }

  const Operator& m() const { return m_; }
  double scale() const { return scale_; }
  int d() const { return m_.layout().dims()[0]; }

 private:
  Operator m_;  // reuses the process canonicalization and Hermiticity check
  double scale_;
};

// Benchmark/resource split of a witness. The resource part collects every
// component of m that the wire twirl annihilates, so Tr[m_perp W] vanishes
// on the whole covariant sector; the benchmark part is the remainder, kept
// untwirled so that scores split additively.
struct WitnessSplit {
  Operator m_g;
  Operator m_perp;
  double scale = 1.0;
};

namespace detail {

// Orthogonal Hermitian basis of d x d matrices: identity, symmetric and
// antisymmetric off-diagonal pairs, and traceless diagonal elements.
inline std::vector<Matrix> hermitian_basis(int d) {
  std::vector<Matrix> basis;
  basis.push_back(Matrix::Identity(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d);
      s(i, j) = 1.0;
      s(j, i) = 1.0;
      basis.push_back(s);
      Matrix a = Matrix::Zero(d, d);
      a(i, j) = Complex(0.0, -1.0);
      a(j, i) = Complex(0.0, 1.0);
      basis.push_back(a);
    }
  for (int k = 1; k < d; ++k) {
    Matrix dk = Matrix::Zero(d, d);
    for (int m = 0; m < k; ++m) dk(m, m) = 1.0;
    dk(k, k) = -static_cast<double>(k);
    basis.push_back(dk);
  }
  return basis;
}

// A product term u (x) v on one wire is annihilated by the single-wire twirl
// iff both trace functionals vanish: Tr u Tr v = 0 and Tr[u v^T] = 0.
inline bool wire_annihilates(const Matrix& u, const Matrix& v) {
  constexpr double eps = 1e-12;
  const Complex t = u.trace() * v.trace();
  const Complex s = (u * v.transpose()).trace();
  return std::abs(t) <= eps && std::abs(s) <= eps;
}

}  // namespace detail

// Expand m over the Hermitian product-operator basis and route every term
// killed by the twirl into m_perp; m_g = m - m_perp keeps the rest intact.
inline WitnessSplit split_witness(const Witness& witness) {
  const Operator& m = witness.m();
  const int d = witness.d();
  const auto leg_basis = detail::hermitian_basis(d);
  const std::size_t nb = leg_basis.size();

  const double coeff_floor = 1e-14 * std::max(1.0, m.max_abs());
  Operator perp = Operator::zero(m.layout());

  for (std::size_t i0 = 0; i0 < nb; ++i0)          // A_I
    for (std::size_t i1 = 0; i1 < nb; ++i1)        // A_O
      for (std::size_t i2 = 0; i2 < nb; ++i2)      // B_I
        for (std::size_t i3 = 0; i3 < nb; ++i3) {  // B_O
          const bool killed =
              detail::wire_annihilates(leg_basis[i1], leg_basis[i2]) ||
              detail::wire_annihilates(leg_basis[i3], leg_basis[i0]);
          if (!killed) continue;

          const Matrix term = detail::kron(
              detail::kron(leg_basis[i0], leg_basis[i1]),
              detail::kron(leg_basis[i2], leg_basis[i3]));
          const double norm_sq = term.squaredNorm();
          const double c =
              (term.adjoint() * m.matrix()).trace().real() / norm_sq;
          if (std::abs(c) <= coeff_floor) continue;
          perp = perp + c * Operator(m.layout(), term);
        }

  return WitnessSplit{m - perp, perp, witness.scale()};
}

// Magnitude of the symmetry-breaking part of the score. `noncovariance` is
// reported in score-normalized units (multiplied by the witness scale);
// the raw variant omits the scale.
inline double noncovariance_raw(const WitnessSplit& split,
                                const ProcessMatrix& w) {
  return std::abs(hs_inner(split.m_perp, w.op()));
}

inline double noncovariance(const WitnessSplit& split, const ProcessMatrix& w) {
  return split.scale * noncovariance_raw(split, w);
}

struct BenchmarkResult {
  double value = 0.0;
  std::size_t vertex = 0;  // index into vertices(d) / vertex_names()
};

// Maximum of the benchmark functional over causally separable processes.
// A linear functional on the covariant polygon attains its maximum at a
// vertex, so only the four vertices are evaluated.
inline BenchmarkResult covariant_benchmark(const WitnessSplit& split, int d) {
  const auto verts = vertices(d);
  BenchmarkResult best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const double value =
        split.scale * hs_inner(split.m_g, verts[i].op()).real();
    if (value > best.value) best = BenchmarkResult{value, i};
  }
  return best;
}

struct ScoreReport {
  double total = 0.0;
  double benchmark_part = 0.0;  // scale * Tr[m_g W]
  double resource_part = 0.0;   // scale * Tr[m_perp W]
  double noncovariance = 0.0;   // scale * |Tr[m_perp W]|
  double noncovariance_raw = 0.0;
};

inline ScoreReport score(const Witness& witness, const ProcessMatrix& w) {
  if (witness.d() != w.d())
    throw std::invalid_argument("score: witness/process dimension mismatch");
  const WitnessSplit split = split_witness(witness);
  ScoreReport report;
  report.benchmark_part =
      witness.scale() * hs_inner(split.m_g, w.op()).real();
  report.resource_part =
      witness.scale() * hs_inner(split.m_perp, w.op()).real();
  report.total = report.benchmark_part + report.resource_part;
  report.noncovariance_raw = noncovariance_raw(split, w);
  report.noncovariance = witness.scale() * report.noncovariance_raw;
  return report;
}

// The causal-game witness for the canonical two-qubit process: the sum of
// the forward-signaling term I (x) Z (x) Z (x) I and the backward-signaling
// term Z (x) I (x) X (x) Z, scored with a 1/(4 sqrt 2) prefactor.
inline Witness ocb_witness() {
  const Operator id2 = Operator::identity(SubsystemLayout({"q"}, {2}));
  auto idl = [&](const std::string& label) { return id2.relabeled({label}); };
  const Operator m1 =
      tensor(tensor(idl(kAliceIn), pauli(Pauli::Z, kAliceOut)),
             tensor(pauli(Pauli::Z, kBobIn), idl(kBobOut)));
  const Operator m2 =
      tensor(tensor(pauli(Pauli::Z, kAliceIn), idl(kAliceOut)),
             tensor(pauli(Pauli::X, kBobIn), pauli(Pauli::Z, kBobOut)));
  return Witness(m1 + m2, 1.0 / (4.0 * std::sqrt(2.0)));
}

}  // namespace procmat
