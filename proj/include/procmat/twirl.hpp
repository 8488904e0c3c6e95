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

#include <string>
#include <utility>
#include <vector>

#include "procmat/operator.hpp"
#include "procmat/process.hpp"
#include "procmat/random.hpp"

namespace procmat {

// The two abstract wires of a bipartite process. Each pair is ordered
// (carrier of V, carrier of V*): local frame changes act as V on the sending
// leg and V* on the receiving leg.
struct WireAssignment {
  std::pair<std::string, std::string> wire1;  // (A_O, B_I)
  std::pair<std::string, std::string> wire2;  // (B_O, A_I)
  int d = 2;

  static WireAssignment canonical(int d) {
    return WireAssignment{{kAliceOut, kBobIn}, {kBobOut, kAliceIn}, d};
  }
};

// Averaging V (x) V* over the unitary group projects onto the span of
// {I, Pi}, the commutant of the representation. With t = Tr X and
// s = Tr(Pi X) the image is a(X) I + b(X) Pi where
//   a(X) = (t - s) / (d^2 - 1),   b(X) = (d^2 s - t) / (d^2 - 1),
// the unique element of the span matching both trace functionals.
inline Operator single_wire_twirl(const Operator& x) {
  const auto& layout = x.layout();
  if (layout.size() != 2 || layout.dims()[0] != layout.dims()[1])
    throw std::invalid_argument(
        "single_wire_twirl: expected two legs of equal dimension");
  const int d = layout.dims()[0];
  const Operator proj =
      max_entangled_projector(d, layout.labels()[0], layout.labels()[1]);
  const Complex t = x.trace();
  const Complex s = hs_inner(proj, x);
  const double denom = static_cast<double>(d) * d - 1.0;
  const Complex a = (t - s) / denom;
  const Complex b = (static_cast<double>(d) * d * s - t) / denom;
  return a * Operator::identity(layout) + b * proj;
}

// Twirl one wire of a larger operator: orthogonal projection of the named
// leg pair onto {Pi, Pi_perp}, acting as the identity on all other legs.
inline Operator twirl_pair(const Operator& x, const std::string& label_a,
                           const std::string& label_b) {
  const auto& layout = x.layout();
  const int d = layout.dim_of(label_a);
  if (layout.dim_of(label_b) != d)
    throw std::invalid_argument("twirl_pair: wire legs differ in dimension");

  const Operator proj = max_entangled_projector(d, label_a, label_b);
  const Operator pair_id = Operator::identity(proj.layout());
  const Operator proj_perp = pair_id - proj;

  std::vector<std::string> rest_labels;
  std::vector<int> rest_dims;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    if (layout.labels()[k] == label_a || layout.labels()[k] == label_b)
      continue;
    rest_labels.push_back(layout.labels()[k]);
    rest_dims.push_back(layout.dims()[k]);
  }
  const SubsystemLayout rest_layout(rest_labels, rest_dims);
  const std::vector<std::string> pair_labels{label_a, label_b};

  std::vector<std::string> out_labels = pair_labels;
  out_labels.insert(out_labels.end(), rest_labels.begin(), rest_labels.end());
  std::vector<int> out_dims{d, d};
  out_dims.insert(out_dims.end(), rest_dims.begin(), rest_dims.end());
  Operator out = Operator::zero(SubsystemLayout(out_labels, out_dims));
  for (const Operator* q : {&proj, &proj_perp}) {
    const Operator q_full = permute_subsystems(
        tensor(*q, Operator::identity(rest_layout)), layout.labels());
    const Operator qx(layout, q_full.matrix() * x.matrix());
    const Operator reduced = partial_trace(qx, pair_labels);
    const double weight = 1.0 / q->trace().real();
    out = out + tensor(weight * (*q), reduced);
  }
  return permute_subsystems(out, layout.labels());
}

// Independent wire twirl: the two single-wire twirls act on disjoint legs
// and commute, so sequential application realizes the product average. Works
// on any layout containing the four wire legs; extra legs are untouched.
inline Operator wire_twirl(const Operator& w, const WireAssignment& wires) {
  const Operator first = twirl_pair(w, wires.wire1.first, wires.wire1.second);
  return twirl_pair(first, wires.wire2.first, wires.wire2.second);
}

inline Operator wire_twirl(const Operator& w) {
  int d = w.layout().dim_of(kAliceOut);
  return wire_twirl(w, WireAssignment::canonical(d));
}

inline ProcessMatrix wire_twirl(const ProcessMatrix& w) {
  return ProcessMatrix(wire_twirl(w.op(), WireAssignment::canonical(w.d())));
}

// Monte-Carlo average of U W U^dag over independent Haar pairs (V1, V2);
// the quadrature counterpart of the closed-form twirl. Deterministic per
// seed: sample i draws from children (2i, 2i + 1).
inline Operator mc_twirl_oracle(const Operator& w, const WireAssignment& wires,
                                int samples, const RandomSource& rng) {
  if (samples < 1)
    throw std::invalid_argument("mc_twirl_oracle: need at least one sample");
  const auto& layout = w.layout();
  const int d = wires.d;
  for (const auto& label : {wires.wire1.first, wires.wire1.second,
                            wires.wire2.first, wires.wire2.second})
    if (layout.dim_of(label) != d)
      throw std::invalid_argument("mc_twirl_oracle: wire dimension mismatch");

  Matrix acc = Matrix::Zero(w.dim(), w.dim());
  for (int i = 0; i < samples; ++i) {
    const Matrix v1 = haar_unitary_matrix(d, rng.child(2 * i));
    const Matrix v2 = haar_unitary_matrix(d, rng.child(2 * i + 1));
    Matrix u = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < layout.size(); ++k) {
      const std::string& label = layout.labels()[k];
      if (label == wires.wire1.first)
        u = detail::kron(u, v1);
      else if (label == wires.wire1.second)
        u = detail::kron(u, v1.conjugate());
      else if (label == wires.wire2.first)
        u = detail::kron(u, v2);
      else if (label == wires.wire2.second)
        u = detail::kron(u, v2.conjugate());
      else
        u = detail::kron(u, Matrix::Identity(layout.dims()[k],
                                             layout.dims()[k]));
    }
    acc += u * w.matrix() * u.adjoint();
  }
  return Operator(layout, acc / static_cast<double>(samples));
}

inline double covariance_residual(const ProcessMatrix& w) {
  return (wire_twirl(w.op(), WireAssignment::canonical(w.d())) - w.op())
      .max_abs();
}

inline bool is_covariant(const ProcessMatrix& w, double tol = kDefaultTol) {
  return covariance_residual(w) <= tol;
}

// For a process extended by remainder legs, twirling then tracing out the
// remainder must equal tracing out then twirling. Returns the residual of
// that commutation.
inline double reduce_twirl_residual(const Operator& w_ext,
                                    const WireAssignment& wires) {
  std::vector<std::string> extras;
  for (const auto& label : w_ext.layout().labels()) {
    if (label != wires.wire1.first && label != wires.wire1.second &&
        label != wires.wire2.first && label != wires.wire2.second)
      extras.push_back(label);
  }
  const Operator lhs = partial_trace(wire_twirl(w_ext, wires), extras);
  const Operator rhs = wire_twirl(partial_trace(w_ext, extras), wires);
  return (lhs - rhs).max_abs();
}

inline bool reduce_and_check(const Operator& w_ext, const WireAssignment& wires,
                             double tol = kDefaultTol) {
  return reduce_twirl_residual(w_ext, wires) <= tol;
}

}  // namespace procmat
