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

#include <optional>
#include <string>
#include <vector>

#include "procmat/operator.hpp"

namespace procmat {

// Canonical subsystem labels for a bipartite process, fixed in this order.
inline const std::string kAliceIn = "A_I";
inline const std::string kAliceOut = "A_O";
inline const std::string kBobIn = "B_I";
inline const std::string kBobOut = "B_O";

inline std::vector<std::string> canonical_labels() {
  return {kAliceIn, kAliceOut, kBobIn, kBobOut};
}

inline SubsystemLayout process_layout(int d) {
  return SubsystemLayout(canonical_labels(), {d, d, d, d});
}

enum class CausalOrder { a_before_b, b_before_a };

inline const char* to_string(CausalOrder order) {
  return order == CausalOrder::a_before_b ? "A<B" : "B<A";
}

// A bipartite process matrix: Hermitian operator on (A_I, A_O, B_I, B_O)
// with a common local dimension d. Validity is checked, never assumed.
class ProcessMatrix {
 public:
  explicit ProcessMatrix(Operator op) : op_(canonicalize(std::move(op))) {
    d_ = op_.layout().dims()[0];
    if (!op_.is_hermitian())
      throw std::invalid_argument("process: operator is not Hermitian");
  }

  const Operator& op() const { return op_; }
  int d() const { return d_; }

 private:
  static Operator canonicalize(Operator op) {
    const auto& layout = op.layout();
    if (layout.size() != 4)
      throw std::invalid_argument("process: expected exactly four subsystems");
    int d = -1;
    for (const auto& label : canonical_labels()) {
      if (!layout.contains(label))
        throw std::invalid_argument("process: missing subsystem '" + label +
                                    "'");
      const int dl = layout.dim_of(label);
      if (d < 0) d = dl;
      if (dl != d)
        throw std::invalid_argument("process: subsystem dimensions differ");
    }
    if (layout.labels() == canonical_labels()) return op;
    return permute_subsystems(op, canonical_labels());
  }

  Operator op_;
  int d_ = 0;
};

// Trace-and-replace shorthands used by the causality constraints.
inline Operator tr_replace_alice_out(const Operator& w) {
  return trace_and_replace(w, kAliceOut);
}
inline Operator tr_replace_bob_out(const Operator& w) {
  return trace_and_replace(w, kBobOut);
}
inline Operator tr_replace_alice_in(const Operator& w) {
  return trace_and_replace(w, kAliceIn);
}
inline Operator tr_replace_bob_in(const Operator& w) {
  return trace_and_replace(w, kBobIn);
}

// Outcome of checking positivity, normalization Tr W = d^2, and the three
// linear causality constraints. Residuals are max-entry norms so near-misses
// stay diagnosable.
struct ValidityReport {
  bool psd = false;
  bool trace_ok = false;
  bool c1 = false;  // (I - A_O)(I - B_O)(W) = 0
  bool c2 = false;  // (I - A_O) B_I(W) = 0
  bool c3 = false;  // (I - B_O) A_I(W) = 0
  double min_eigenvalue = 0.0;
  double trace_residual = 0.0;  // |Tr W - d^2|
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  bool valid() const { return psd && trace_ok && c1 && c2 && c3; }
};

inline ValidityReport validate(const ProcessMatrix& w,
                               double tol = kDefaultTol) {
  const Operator& op = w.op();
  const double d2 = static_cast<double>(w.d()) * w.d();

  ValidityReport report;
  report.min_eigenvalue = min_eigenvalue(op);
  report.psd = report.min_eigenvalue >= -tol;
  report.trace_residual = std::abs(op.trace() - Complex(d2, 0.0));
  report.trace_ok = report.trace_residual <= tol * d2;

  const Operator after_bo = op - tr_replace_bob_out(op);
  report.r1 = (after_bo - tr_replace_alice_out(after_bo)).max_abs();
  const Operator bi = tr_replace_bob_in(op);
  report.r2 = (bi - tr_replace_alice_out(bi)).max_abs();
  const Operator ai = tr_replace_alice_in(op);
  report.r3 = (ai - tr_replace_bob_out(ai)).max_abs();
  report.c1 = report.r1 <= tol;
  report.c2 = report.r2 <= tol;
  report.c3 = report.r3 <= tol;
  return report;
}

// W has definite order A<B iff (I - B_O)(W) = 0 and (I - A_O)B_I(W) = 0;
// mirror conditions for B<A. Requires a valid process.
inline bool is_definite_order(const ProcessMatrix& w, CausalOrder order,
                              double tol = kDefaultTol) {
  if (!validate(w, tol).valid())
    throw std::invalid_argument("is_definite_order: process is not valid");
  const Operator& op = w.op();
  double r_first, r_second;
  if (order == CausalOrder::a_before_b) {
    r_first = (op - tr_replace_bob_out(op)).max_abs();
    const Operator bi = tr_replace_bob_in(op);
    r_second = (bi - tr_replace_alice_out(bi)).max_abs();
  } else {
    r_first = (op - tr_replace_alice_out(op)).max_abs();
    const Operator ai = tr_replace_alice_in(op);
    r_second = (ai - tr_replace_bob_out(ai)).max_abs();
  }
  return r_first <= tol && r_second <= tol;
}

// Canonical fixed-order process: an identity wire from the first party's
// output to the second party's input, maximally mixed elsewhere.
inline ProcessMatrix fixed_order(CausalOrder order, int d) {
  if (d < 2) throw std::invalid_argument("fixed_order: requires d >= 2");
  const SubsystemLayout leg({order == CausalOrder::a_before_b ? kAliceIn
                                                              : kBobIn},
                            {d});
  const SubsystemLayout other_leg(
      {order == CausalOrder::a_before_b ? kBobOut : kAliceOut}, {d});
  const Operator wire =
      order == CausalOrder::a_before_b
          ? max_entangled_projector(d, kAliceOut, kBobIn)
          : max_entangled_projector(d, kBobOut, kAliceIn);
  return ProcessMatrix(
      tensor(Operator::identity(leg), wire, Operator::identity(other_leg)));
}

// The canonical two-qubit process violating a causal inequality: the uniform
// term plus Z_{A_O} Z_{B_I} and Z_{A_I} X_{B_I} Z_{B_O} correlations, each
// weighted by 1/sqrt(2).
inline ProcessMatrix ocb_process() {
  const Operator id2 = Operator::identity(SubsystemLayout({"q"}, {2}));
  auto leg = [&](Pauli p, const std::string& label) {
    return pauli(p, label);
  };
  auto idl = [&](const std::string& label) { return id2.relabeled({label}); };

  const Operator term1 = tensor(tensor(idl(kAliceIn), leg(Pauli::Z, kAliceOut)),
                                tensor(leg(Pauli::Z, kBobIn), idl(kBobOut)));
  const Operator term2 = tensor(tensor(leg(Pauli::Z, kAliceIn), idl(kAliceOut)),
                                tensor(leg(Pauli::X, kBobIn), leg(Pauli::Z, kBobOut)));
  const Operator unit = Operator::identity(process_layout(2));
  const double w = 1.0 / std::sqrt(2.0);
  return ProcessMatrix(0.25 * (unit + w * (term1 + term2)));
}

// Equal mixture of the two fixed-order processes; the bipartite marginal of
// a coherently controlled ordering once the control is traced out.
inline ProcessMatrix qs_marginal(int d) {
  const Operator a = fixed_order(CausalOrder::a_before_b, d).op();
  const Operator b = fixed_order(CausalOrder::b_before_a, d).op();
  return ProcessMatrix(0.5 * (a + b));
}

// Builders addressable by name (CLI and file interfaces).
inline std::optional<ProcessMatrix> builtin_process(const std::string& name,
                                                    int d = 2) {
  if (name == "fixed-order-ab") return fixed_order(CausalOrder::a_before_b, d);
  if (name == "fixed-order-ba") return fixed_order(CausalOrder::b_before_a, d);
  if (name == "ocb") return ocb_process();
  if (name == "qs-marginal") return qs_marginal(d);
  return std::nullopt;
}

inline std::vector<std::string> builtin_process_names() {
  return {"fixed-order-ab", "fixed-order-ba", "ocb", "qs-marginal"};
}

}  // namespace procmat
