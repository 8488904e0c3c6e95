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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace procmat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Library-wide default tolerances. All canonical operators are exact, so
// tolerances only have to absorb accumulated floating-point error.
inline constexpr double kHermitianTol = 1e-10;  // max-entry norm of X - X^dag
inline constexpr double kPsdTol = 1e-9;         // lower bound on min eigenvalue
inline constexpr double kDefaultTol = 1e-9;     // generic residual tolerance

// Ordered list of named subsystems ("legs") with their dimensions.
// Labels are unique; the first label is the most significant index digit,
// matching the Kronecker-product convention used throughout.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;

  SubsystemLayout(std::vector<std::string> labels, std::vector<int> dims)
      : labels_(std::move(labels)), dims_(std::move(dims)) {
    if (labels_.size() != dims_.size())
      throw std::invalid_argument("layout: labels and dims differ in length");
    for (int d : dims_)
      if (d < 1) throw std::invalid_argument("layout: dimensions must be >= 1");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw std::invalid_argument("layout: duplicate label '" + labels_[i] +
                                      "'");
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim_at(std::size_t leg) const { return dims_.at(leg); }

  Eigen::Index total_dim() const {
    Eigen::Index d = 1;
    for (int x : dims_) d *= x;
    return d;
  }

  bool contains(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }

  std::size_t position(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
      throw std::invalid_argument("layout: unknown label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  int dim_of(const std::string& label) const { return dims_[position(label)]; }

  // Row-major strides: stride of leg k is the product of all later dims.
  std::vector<Eigen::Index> strides() const {
    std::vector<Eigen::Index> s(dims_.size(), 1);
    for (std::size_t k = dims_.size(); k-- > 1;)
      s[k - 1] = s[k] * dims_[k];
    return s;
  }

  friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
    return a.labels_ == b.labels_ && a.dims_ == b.dims_;
  }
  friend bool operator!=(const SubsystemLayout& a, const SubsystemLayout& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> labels_;
  std::vector<int> dims_;
};

// Dense complex square matrix carrying a subsystem layout. Immutable after
// construction; all operations below return new values.
class Operator {
 public:
  Operator(SubsystemLayout layout, Matrix entries)
      : layout_(std::move(layout)), m_(std::move(entries)) {
    const Eigen::Index d = layout_.total_dim();
    if (m_.rows() != d || m_.cols() != d)
      throw std::invalid_argument(
          "operator: entries must be square with side " + std::to_string(d));
  }

  static Operator identity(SubsystemLayout layout) {
    const Eigen::Index d = layout.total_dim();
    return Operator(std::move(layout), Matrix::Identity(d, d));
  }

  static Operator zero(SubsystemLayout layout) {
    const Eigen::Index d = layout.total_dim();
    return Operator(std::move(layout), Matrix::Zero(d, d));
  }

  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  // Same entries and dimensions under new labels.
  Operator relabeled(std::vector<std::string> labels) const {
    return Operator(SubsystemLayout(std::move(labels), layout_.dims()), m_);
  }

  Operator adjoint() const { return Operator(layout_, m_.adjoint()); }
  Complex trace() const { return m_.trace(); }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  bool is_hermitian(double tol = kHermitianTol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  void require_same_layout(const Operator& other) const {
    if (layout_ != other.layout_)
      throw std::invalid_argument("operator: layout mismatch");
  }

  friend Operator operator+(const Operator& a, const Operator& b) {
    a.require_same_layout(b);
    return Operator(a.layout_, a.m_ + b.m_);
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    a.require_same_layout(b);
    return Operator(a.layout_, a.m_ - b.m_);
  }
  friend Operator operator-(const Operator& a) {
    return Operator(a.layout_, -a.m_);
  }
  friend Operator operator*(Complex c, const Operator& a) {
    return Operator(a.layout_, c * a.m_);
  }
  friend Operator operator*(double c, const Operator& a) {
    return Operator(a.layout_, c * a.m_);
  }

 private:
  SubsystemLayout layout_;
  Matrix m_;
};

namespace detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Flat index of the sub-block spanned by `legs`, for each combined value of
// those legs' digits. Used to split a full index into kept/traced parts.
inline std::vector<Eigen::Index> leg_offsets(const SubsystemLayout& layout,
                                             const std::vector<std::size_t>& legs) {
  const auto strides = layout.strides();
  Eigen::Index count = 1;
  for (std::size_t leg : legs) count *= layout.dim_at(leg);
  std::vector<Eigen::Index> offsets(static_cast<std::size_t>(count), 0);
  Eigen::Index repeat = count;
  for (std::size_t leg : legs) {
    const int d = layout.dim_at(leg);
    repeat /= d;
    Eigen::Index idx = 0;
    while (idx < count)
      for (int v = 0; v < d; ++v)
        for (Eigen::Index r = 0; r < repeat; ++r, ++idx)
          offsets[static_cast<std::size_t>(idx)] += v * strides[leg];
  }
  return offsets;
}

}  // namespace detail

// Kronecker product; the result layout is a's legs followed by b's legs.
inline Operator tensor(const Operator& a, const Operator& b) {
  std::vector<std::string> labels = a.layout().labels();
  std::vector<int> dims = a.layout().dims();
  for (const auto& l : b.layout().labels()) {
    if (a.layout().contains(l))
      throw std::invalid_argument("tensor: duplicate subsystem label '" + l +
                                  "'");
    labels.push_back(l);
  }
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  return Operator(SubsystemLayout(std::move(labels), std::move(dims)),
                  detail::kron(a.matrix(), b.matrix()));
}

inline Operator tensor(const Operator& a, const Operator& b,
                       const Operator& c) {
  return tensor(tensor(a, b), c);
}

// Partial trace over the listed labels; remaining legs keep their order.
inline Operator partial_trace(const Operator& x,
                              const std::vector<std::string>& over) {
  const auto& layout = x.layout();
  std::vector<bool> traced(layout.size(), false);
  for (const auto& label : over) traced[layout.position(label)] = true;

  std::vector<std::size_t> keep_legs, trace_legs;
  for (std::size_t k = 0; k < layout.size(); ++k)
    (traced[k] ? trace_legs : keep_legs).push_back(k);

  std::vector<std::string> keep_labels;
  std::vector<int> keep_dims;
  for (std::size_t k : keep_legs) {
    keep_labels.push_back(layout.labels()[k]);
    keep_dims.push_back(layout.dims()[k]);
  }

  const auto keep_off = detail::leg_offsets(layout, keep_legs);
  const auto trace_off = detail::leg_offsets(layout, trace_legs);
  const auto nk = static_cast<Eigen::Index>(keep_off.size());

  Matrix out = Matrix::Zero(nk, nk);
  for (Eigen::Index i = 0; i < nk; ++i)
    for (Eigen::Index j = 0; j < nk; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index t : trace_off)
        sum += x.matrix()(keep_off[static_cast<std::size_t>(i)] + t,
                          keep_off[static_cast<std::size_t>(j)] + t);
      out(i, j) = sum;
    }
  return Operator(SubsystemLayout(std::move(keep_labels), std::move(keep_dims)),
                  std::move(out));
}

// Reindex the entries so the legs appear in `new_order`, which must be a
// permutation of the current labels.
inline Operator permute_subsystems(const Operator& x,
                                   const std::vector<std::string>& new_order) {
  const auto& layout = x.layout();
  if (new_order.size() != layout.size())
    throw std::invalid_argument("permute: label list is not a permutation");
  std::vector<int> new_dims(new_order.size());
  std::vector<std::size_t> src_leg(new_order.size());
  std::vector<bool> used(layout.size(), false);
  for (std::size_t k = 0; k < new_order.size(); ++k) {
    const std::size_t p = layout.position(new_order[k]);
    if (used[p])
      throw std::invalid_argument("permute: label list is not a permutation");
    used[p] = true;
    src_leg[k] = p;
    new_dims[k] = layout.dims()[p];
  }

  SubsystemLayout target(new_order, new_dims);
  const auto src_strides = layout.strides();
  const auto dst_strides = target.strides();
  const Eigen::Index dim = layout.total_dim();

  // map[i] = index of old basis vector i in the permuted ordering
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim), 0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index rest = i, j = 0;
    std::vector<Eigen::Index> digit(layout.size());
    for (std::size_t k = 0; k < layout.size(); ++k) {
      digit[k] = rest / src_strides[k];
      rest %= src_strides[k];
    }
    for (std::size_t k = 0; k < new_order.size(); ++k)
      j += digit[src_leg[k]] * dst_strides[k];
    map[static_cast<std::size_t>(i)] = j;
  }

  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) =
          x.matrix()(i, j);
  return Operator(std::move(target), std::move(out));
}

// Trace out one leg and replace it with the maximally mixed state, keeping
// the original subsystem order.
inline Operator trace_and_replace(const Operator& x, const std::string& label) {
  const int d = x.layout().dim_of(label);
  Operator traced = partial_trace(x, std::vector<std::string>{label});
  Operator unit = Operator(
      SubsystemLayout({label}, {d}),
      Matrix::Identity(d, d) * (1.0 / static_cast<double>(d)));
  return permute_subsystems(tensor(unit, traced), x.layout().labels());
}

// Projector onto the maximally entangled state across two d-dimensional legs.
inline Operator max_entangled_projector(int d, const std::string& label_a = "0",
                                        const std::string& label_b = "1") {
  if (d < 2)
    throw std::invalid_argument("max_entangled_projector: requires d >= 2");
  // entries written directly as 1/d so the operator is exact
  const Eigen::Index dim = static_cast<Eigen::Index>(d) * d;
  Matrix m = Matrix::Zero(dim, dim);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(static_cast<Eigen::Index>(i) * d + i,
        static_cast<Eigen::Index>(j) * d + j) = inv_d;
  return Operator(SubsystemLayout({label_a, label_b}, {d, d}), std::move(m));
}

enum class Pauli { I, X, Y, Z };

inline Operator pauli(Pauli which, const std::string& label = "q") {
  Matrix m(2, 2);
  switch (which) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: unknown name");
  }
  return Operator(SubsystemLayout({label}, {2}), std::move(m));
}

// Hilbert-Schmidt inner product Tr(a^dag b); layouts must match exactly.
inline Complex hs_inner(const Operator& a, const Operator& b) {
  a.require_same_layout(b);
  return (a.matrix().adjoint() * b.matrix()).trace();
}

inline double hs_norm(const Operator& a) {
  return std::sqrt(std::abs(hs_inner(a, a)));
}

// Minimum eigenvalue of a Hermitian operator.
inline double min_eigenvalue(const Operator& x,
                             double herm_tol = kHermitianTol) {
  if (!x.is_hermitian(herm_tol))
    throw std::invalid_argument("min_eigenvalue: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.matrix(),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

inline bool is_psd(const Operator& x, double tol = kPsdTol,
                   double herm_tol = kHermitianTol) {
  return min_eigenvalue(x, herm_tol) >= -tol;
}

}  // namespace procmat
