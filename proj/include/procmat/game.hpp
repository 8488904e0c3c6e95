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
#include <string>
#include <vector>

#include "procmat/operator.hpp"
#include "procmat/process.hpp"
#include "procmat/random.hpp"

namespace procmat {

// Choi convention used throughout: for a CP map E from d_in to d_out,
//   J(E) = (id (x) E)(|phi~><phi~|),  |phi~> = sum_j |jj>  (unnormalized),
// carried on legs ("in", "out"). No transpose is applied: with this pairing
// the canonical fixed-order process relays a prepared state to the receiving
// party unconjugated, and CPTP instruments give normalized probabilities.
inline const std::string kLegIn = "in";
inline const std::string kLegOut = "out";

inline SubsystemLayout choi_layout(int d_in, int d_out) {
  return SubsystemLayout({kLegIn, kLegOut}, {d_in, d_out});
}

// Build a Choi operator from Kraus matrices (each d_out x d_in). PSD by
// construction; the trace of a CPTP map's Choi operator equals d_in.
inline Operator choi_from_kraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty())
    throw std::invalid_argument("choi_from_kraus: no Kraus operators");
  const Eigen::Index d_out = kraus.front().rows();
  const Eigen::Index d_in = kraus.front().cols();
  Matrix acc = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (const Matrix& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw std::invalid_argument("choi_from_kraus: Kraus shapes differ");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d_in * d_out);
    for (Eigen::Index j = 0; j < d_in; ++j)
      v.segment(j * d_out, d_out) = k.col(j);
    acc += v * v.adjoint();
  }
  return Operator(choi_layout(static_cast<int>(d_in), static_cast<int>(d_out)),
                  std::move(acc));
}

// One party's operation: outcome-indexed Choi operators of CP maps whose sum
// is trace preserving.
struct Instrument {
  int d_in = 2;
  int d_out = 2;
  std::vector<Operator> choi;

  std::size_t outcomes() const { return choi.size(); }
};

inline Instrument instrument_from_kraus(
    const std::vector<std::vector<Matrix>>& outcome_kraus) {
  Instrument ins;
  for (const auto& ks : outcome_kraus) ins.choi.push_back(choi_from_kraus(ks));
  if (ins.choi.empty())
    throw std::invalid_argument("instrument_from_kraus: no outcomes");
  ins.d_in = ins.choi.front().layout().dim_of(kLegIn);
  ins.d_out = ins.choi.front().layout().dim_of(kLegOut);
  return ins;
}

// CP: every Choi operator PSD. TP: tracing the output leg of the summed
// Choi operator gives the identity on the input leg.
inline bool validate_instrument(const Instrument& ins,
                                double tol = kDefaultTol) {
  if (ins.choi.empty()) return false;
  const SubsystemLayout expected = choi_layout(ins.d_in, ins.d_out);
  Operator sum = Operator::zero(expected);
  for (const Operator& op : ins.choi) {
    if (op.layout() != expected) return false;
    if (!op.is_hermitian()) return false;
    if (!is_psd(op, tol)) return false;
    sum = sum + op;
  }
  const Operator in_marginal = partial_trace(sum, {kLegOut});
  const Matrix residual =
      in_marginal.matrix() - Matrix::Identity(ins.d_in, ins.d_in);
  return residual.cwiseAbs().maxCoeff() <= tol;
}

// Probability table over joint outcomes, plus a flag recording whether any
// entry within [-1e-12, 0) was clamped to zero.
struct ProbabilityTable {
  std::vector<std::vector<double>> p;  // [a][b]
  bool clamped = false;

  double sum() const {
    double s = 0.0;
    for (const auto& row : p)
      for (double x : row) s += x;
    return s;
  }
};

// Generalized Born rule: p(a, b) = Tr[W (M_a (x) M_b)] with Alice's Choi
// operators on (A_I, A_O) and Bob's on (B_I, B_O).
inline ProbabilityTable born(const ProcessMatrix& w, const Instrument& alice,
                             const Instrument& bob, double tol = kDefaultTol) {
  if (alice.d_in != w.d() || alice.d_out != w.d() || bob.d_in != w.d() ||
      bob.d_out != w.d())
    throw std::invalid_argument("born: instrument/process dimension mismatch");
  if (!validate_instrument(alice, tol) || !validate_instrument(bob, tol))
    throw std::invalid_argument("born: invalid instrument");

  ProbabilityTable table;
  table.p.assign(alice.outcomes(), std::vector<double>(bob.outcomes(), 0.0));
  for (std::size_t a = 0; a < alice.outcomes(); ++a) {
    const Operator ma = alice.choi[a].relabeled({kAliceIn, kAliceOut});
    for (std::size_t b = 0; b < bob.outcomes(); ++b) {
      const Operator mb = bob.choi[b].relabeled({kBobIn, kBobOut});
      double p = hs_inner(w.op(), tensor(ma, mb)).real();
      if (p < 0.0 && p >= -1e-12) {
        p = 0.0;
        table.clamped = true;
      }
      table.p[a][b] = p;
    }
  }
  return table;
}

// Instrument sampled by attaching a Haar unitary to an ancilla register and
// reading the ancilla out in the computational basis: outcome a gets the
// single Kraus operator K_a with K_a(i, j) = <i, a| U |j, 0>.
inline Instrument random_cptp_instrument(int d, int n_outcomes,
                                         const RandomSource& rng) {
  if (n_outcomes < 1)
    throw std::invalid_argument("random_cptp_instrument: need >= 1 outcome");
  const Matrix u = haar_unitary_matrix(d * n_outcomes, rng);
  std::vector<std::vector<Matrix>> outcome_kraus;
  for (int a = 0; a < n_outcomes; ++a) {
    Matrix k(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        k(i, j) = u(i * n_outcomes + a, j * n_outcomes + 0);
    outcome_kraus.push_back({k});
  }
  return instrument_from_kraus(outcome_kraus);
}

// Per-setting instruments for the two parties.
struct Strategy {
  std::vector<Instrument> alice;  // indexed by Alice's setting x
  std::vector<Instrument> bob;    // indexed by Bob's setting y
};

// Setting distribution and win predicate, with the predicate stored as an
// explicit table win[x][y][a][b] in {0, 1} so games round-trip through files.
struct GameSpec {
  std::vector<std::vector<double>> setting_probs;  // [x][y]
  std::vector<std::vector<std::vector<std::vector<int>>>> win;

  double prob(std::size_t x, std::size_t y) const {
    return setting_probs[x][y];
  }
};

inline void require_consistent(const Strategy& strategy, const GameSpec& game) {
  if (game.setting_probs.size() != strategy.alice.size())
    throw std::invalid_argument("game: setting table does not match strategy");
  double total = 0.0;
  for (const auto& row : game.setting_probs) {
    if (row.size() != strategy.bob.size())
      throw std::invalid_argument(
          "game: setting table does not match strategy");
    for (double p : row) total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("game: setting probabilities must sum to 1");

  if (game.win.size() != strategy.alice.size())
    throw std::invalid_argument("game: win table does not match strategy");
  for (std::size_t x = 0; x < game.win.size(); ++x) {
    if (game.win[x].size() != strategy.bob.size())
      throw std::invalid_argument("game: win table does not match strategy");
    for (std::size_t y = 0; y < game.win[x].size(); ++y) {
      if (game.win[x][y].size() != strategy.alice[x].outcomes())
        throw std::invalid_argument(
            "game: win table does not cover all outcomes");
      for (const auto& row : game.win[x][y])
        if (row.size() != strategy.bob[y].outcomes())
          throw std::invalid_argument(
              "game: win table does not cover all outcomes");
    }
  }
}

// Average winning probability: sum over settings of p(x, y) times the Born
// probability mass on winning outcome pairs.
inline double game_success(const ProcessMatrix& w, const Strategy& strategy,
                           const GameSpec& game, double tol = kDefaultTol) {
  require_consistent(strategy, game);
  if (!validate(w, tol).valid())
    throw std::invalid_argument("game_success: process is not valid");

  double success = 0.0;
  for (std::size_t x = 0; x < strategy.alice.size(); ++x) {
    for (std::size_t y = 0; y < strategy.bob.size(); ++y) {
      const double pxy = game.prob(x, y);
      if (pxy == 0.0) continue;
      const ProbabilityTable table =
          born(w, strategy.alice[x], strategy.bob[y], tol);
      const auto& win_ab = game.win[x][y];
      for (std::size_t a = 0; a < table.p.size(); ++a)
        for (std::size_t b = 0; b < table.p[a].size(); ++b)
          if (win_ab[a][b]) success += pxy * table.p[a][b];
    }
  }
  return success;
}

namespace detail {

inline Matrix ket(int value, int d) {
  Matrix v = Matrix::Zero(d, 1);
  v(value, 0) = 1.0;
  return v;
}

// Kraus operator of "measure the projector |meas>, then prepare |prep>".
inline Matrix measure_and_reprepare(const Matrix& meas, const Matrix& prep) {
  return prep * meas.adjoint();
}

}  // namespace detail

// Measure the input in the computational basis and re-prepare the fixed
// state |prep>; one outcome per basis vector.
inline Instrument z_measure_reprepare(int prep, int d = 2) {
  std::vector<std::vector<Matrix>> kraus;
  for (int a = 0; a < d; ++a)
    kraus.push_back({detail::measure_and_reprepare(detail::ket(a, d),
                                                   detail::ket(prep, d))});
  return instrument_from_kraus(kraus);
}

// The causal-game preset. Alice's setting is her bit x: she measures her
// input in Z (outcome a) and re-prepares |x>. Bob's setting packs (y, y')
// as index 2 y' + y. For y' = 1 he measures in Z (outcome b, his guess of x)
// and re-prepares |y>; for y' = 0 he measures in X (outcome m) and
// re-prepares |y xor m>.
inline Strategy ocb_strategy() {
  Strategy strategy;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix plus(2, 1), minus(2, 1);
  plus << inv_sqrt2, inv_sqrt2;
  minus << inv_sqrt2, -inv_sqrt2;
  const Matrix xbasis[2] = {plus, minus};

  for (int x = 0; x < 2; ++x) {
    std::vector<std::vector<Matrix>> kraus;
    for (int a = 0; a < 2; ++a)
      kraus.push_back({detail::measure_and_reprepare(detail::ket(a, 2),
                                                     detail::ket(x, 2))});
    strategy.alice.push_back(instrument_from_kraus(kraus));
  }
  for (int yp = 0; yp < 2; ++yp) {
    for (int y = 0; y < 2; ++y) {
      std::vector<std::vector<Matrix>> kraus;
      for (int b = 0; b < 2; ++b) {
        const Matrix meas = (yp == 1) ? detail::ket(b, 2) : xbasis[b];
        const int prep = (yp == 1) ? y : (y ^ b);
        kraus.push_back(
            {detail::measure_and_reprepare(meas, detail::ket(prep, 2))});
      }
      strategy.bob.push_back(instrument_from_kraus(kraus));
    }
  }
  return strategy;
}

// Uniform settings; win iff b = x when y' = 1 and a = y when y' = 0.
inline GameSpec ocb_game() {
  GameSpec game;
  game.setting_probs.assign(2, std::vector<double>(4, 1.0 / 8.0));
  game.win.assign(
      2, std::vector<std::vector<std::vector<int>>>(
             4, std::vector<std::vector<int>>(2, std::vector<int>(2, 0))));
  for (int x = 0; x < 2; ++x)
    for (int yp = 0; yp < 2; ++yp)
      for (int y = 0; y < 2; ++y) {
        const std::size_t s = static_cast<std::size_t>(2 * yp + y);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            game.win[x][s][a][b] = (yp == 1) ? (b == x) : (a == y);
      }
  return game;
}

}  // namespace procmat
