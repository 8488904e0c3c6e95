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

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "procmat/operator.hpp"
#include "procmat/process.hpp"
#include "procmat/twirl.hpp"

namespace procmat {

// Orthogonal basis of the wire-invariant sector: products of {Pi, Pi_perp}
// on the two wires, assembled in the canonical subsystem order.
//   basis[0] = Pi1_perp (x) Pi2_perp   (coefficient alpha)
//   basis[1] = Pi1      (x) Pi2_perp   (coefficient beta)
//   basis[2] = Pi1_perp (x) Pi2        (coefficient gamma)
//   basis[3] = Pi1      (x) Pi2        (coefficient delta)
class CovariantBasis {
 public:
  explicit CovariantBasis(int d) : d_(d), ops_(make_ops(d)) {}

  int d() const { return d_; }
  const std::array<Operator, 4>& ops() const { return ops_; }

  // Tr of each basis projector: products of Tr Pi = 1 and
  // Tr Pi_perp = d^2 - 1 on the two wires.
  std::array<double, 4> traces() const {
    const double p = static_cast<double>(d_) * d_ - 1.0;
    return {p * p, p, p, 1.0};
  }

 private:
  static std::array<Operator, 4> make_ops(int d) {
    const Operator pi1 = max_entangled_projector(d, kAliceOut, kBobIn);
    const Operator pi2 = max_entangled_projector(d, kBobOut, kAliceIn);
    const Operator pi1p = Operator::identity(pi1.layout()) - pi1;
    const Operator pi2p = Operator::identity(pi2.layout()) - pi2;
    auto place = [](const Operator& a, const Operator& b) {
      return permute_subsystems(tensor(a, b), canonical_labels());
    };
    return {place(pi1p, pi2p), place(pi1, pi2p), place(pi1p, pi2),
            place(pi1, pi2)};
  }

  int d_;
  std::array<Operator, 4> ops_;
};

// Expansion coefficients of a wire-covariant process over the four projector
// products.
struct CovariantCoefficients {
  double alpha = 0.0;  // Pi1_perp (x) Pi2_perp
  double beta = 0.0;   // Pi1      (x) Pi2_perp
  double gamma = 0.0;  // Pi1_perp (x) Pi2
  double delta = 0.0;  // Pi1      (x) Pi2
  int d = 2;
};

inline double alpha_max(int d) {
  return 1.0 / (static_cast<double>(d) * d - 1.0);
}

// Project onto each basis element. Inputs whose residual off the invariant
// span exceeds `tol` are rejected rather than silently projected.
inline CovariantCoefficients extract_coefficients(const ProcessMatrix& w,
                                                  double tol = kDefaultTol) {
  const CovariantBasis basis(w.d());
  const auto traces = basis.traces();
  std::array<double, 4> c{};
  for (int i = 0; i < 4; ++i)
    c[static_cast<std::size_t>(i)] =
        hs_inner(basis.ops()[static_cast<std::size_t>(i)], w.op()).real() /
        traces[static_cast<std::size_t>(i)];

  Operator rebuilt = Operator::zero(w.op().layout());
  for (int i = 0; i < 4; ++i)
    rebuilt = rebuilt + c[static_cast<std::size_t>(i)] *
                            basis.ops()[static_cast<std::size_t>(i)];
  const double residual = (w.op() - rebuilt).max_abs();
  if (residual > tol)
    throw std::invalid_argument(
        "extract_coefficients: process is not wire-covariant (residual " +
        std::to_string(residual) + ")");
  return CovariantCoefficients{c[0], c[1], c[2], c[3], w.d()};
}

// Positivity plus the two affine constraints carved out by normalization
// and causality: alpha + delta = beta + gamma and delta + alpha(d^2-1) = 1.
inline bool check_constraints(const CovariantCoefficients& c,
                              double tol = kDefaultTol) {
  const double dsq1 = static_cast<double>(c.d) * c.d - 1.0;
  if (c.alpha < -tol || c.beta < -tol || c.gamma < -tol || c.delta < -tol)
    return false;
  if (std::abs((c.alpha + c.delta) - (c.beta + c.gamma)) > tol) return false;
  if (std::abs(c.delta + c.alpha * dsq1 - 1.0) > tol) return false;
  return true;
}

inline ProcessMatrix reconstruct(const CovariantCoefficients& c) {
  const CovariantBasis basis(c.d);
  Operator acc = c.alpha * basis.ops()[0] + c.beta * basis.ops()[1] +
                 c.gamma * basis.ops()[2] + c.delta * basis.ops()[3];
  return ProcessMatrix(std::move(acc));
}

inline std::array<std::string, 4> vertex_names() {
  return {"W1", "W2", "W3", "W4"};
}

// The four extreme points of the covariant polygon. W1 and W3 have definite
// order A<B, W2 and W4 have definite order B<A.
inline std::array<ProcessMatrix, 4> vertices(int d) {
  if (d < 2) throw std::invalid_argument("vertices: requires d >= 2");
  const double am = alpha_max(d);
  return {reconstruct({0.0, 1.0, 0.0, 1.0, d}),
          reconstruct({0.0, 0.0, 1.0, 1.0, d}),
          reconstruct({am, 0.0, am, 0.0, d}),
          reconstruct({am, am, 0.0, 0.0, d})};
}

// Convex weights over the four vertices reproducing a covariant process.
struct SeparableDecomposition {
  std::array<double, 4> weights{};
  std::array<ProcessMatrix, 4> vertices;
  CovariantCoefficients coefficients;
};

// In the free coordinates (alpha, beta) the feasible region is the
// quadrilateral with corners W2=(0,0), W1=(0,1), W3=(a_max,0) and
// W4=(a_max,a_max). It is split along the diagonal W2--W4 (beta = alpha);
// points on the diagonal go to the first triangle {W1, W2, W4}.
inline SeparableDecomposition decompose(const ProcessMatrix& w,
                                        double tol = kDefaultTol) {
  if (!validate(w, tol).valid())
    throw std::invalid_argument("decompose: process is not valid");
  const CovariantCoefficients c = extract_coefficients(w, tol);
  const double am = alpha_max(c.d);

  std::array<double, 4> weights{0.0, 0.0, 0.0, 0.0};
  if (c.beta >= c.alpha) {
    weights[3] = c.alpha / am;        // W4
    weights[0] = c.beta - c.alpha;    // W1
    weights[1] = 1.0 - weights[0] - weights[3];  // W2
  } else {
    weights[3] = c.beta / am;               // W4
    weights[2] = (c.alpha - c.beta) / am;   // W3
    weights[1] = 1.0 - weights[2] - weights[3];  // W2
  }

  for (double& x : weights) {
    if (x < -tol)
      throw std::invalid_argument(
          "decompose: point lies outside the feasible polygon");
    if (x < 0.0) x = 0.0;
  }
  return SeparableDecomposition{weights, vertices(c.d), c};
}

inline ProcessMatrix recompose(const SeparableDecomposition& dec) {
  Operator acc = Operator::zero(dec.vertices[0].op().layout());
  for (int i = 0; i < 4; ++i)
    acc = acc + dec.weights[static_cast<std::size_t>(i)] *
                    dec.vertices[static_cast<std::size_t>(i)].op();
  return ProcessMatrix(std::move(acc));
}

// Uniform sample from the feasible polygon, mapped to a covariant process.
// Rejection sampling in the bounding box of the (alpha, beta) coordinates.
inline CovariantCoefficients sample_covariant_coefficients(
    int d, const RandomSource& rng) {
  const double am = alpha_max(d);
  const double dsq = static_cast<double>(d) * d;
  auto eng = rng.engine();
  double alpha = 0.0, beta = 0.0;
  for (;;) {
    alpha = detail::uniform_unit(eng) * am;
    beta = detail::uniform_unit(eng);
    if (beta <= 1.0 - alpha * (dsq - 2.0)) break;
  }
  const double delta = 1.0 - alpha * (dsq - 1.0);
  const double gamma = alpha + delta - beta;
  return CovariantCoefficients{alpha, beta, gamma, delta, d};
}

}  // namespace procmat
