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

#include <catch2/catch_amalgamated.hpp>

#include "procmat/covariant.hpp"
#include "procmat/game.hpp"
#include "procmat/process.hpp"
#include "procmat/witness.hpp"

using namespace procmat;

namespace {

Instrument identity_channel(int d) {
  return instrument_from_kraus({{Matrix::Identity(d, d)}});
}

ProcessMatrix random_valid_process(std::uint64_t seed) {
  const ProcessMatrix cov =
      reconstruct(sample_covariant_coefficients(2, RandomSource(seed)));
  auto eng = RandomSource(seed).child(1).engine();
  const double lambda = detail::uniform_unit(eng);
  return ProcessMatrix(lambda * ocb_process().op() + (1.0 - lambda) * cov.op());
}

}  // namespace

TEST_CASE("choi operators", "[game]") {
  SECTION("identity channel has trace d_in") {
    for (int d : {2, 3}) {
      const Operator j = choi_from_kraus({Matrix::Identity(d, d)});
      REQUIRE_THAT(j.trace().real(),
                   Catch::Matchers::WithinAbs(static_cast<double>(d), 1e-14));
      REQUIRE(is_psd(j));
    }
  }

  SECTION("unitary channel is positive with trace d") {
    const Operator j = choi_from_kraus({pauli(Pauli::Z).matrix()});
    REQUIRE(is_psd(j));
    REQUIRE_THAT(j.trace().real(), Catch::Matchers::WithinAbs(2.0, 1e-14));
  }

  SECTION("zero map gives the zero operator") {
    REQUIRE(choi_from_kraus({Matrix::Zero(2, 2)}).max_abs() == 0.0);
  }

  SECTION("shape mismatches are rejected") {
    REQUIRE_THROWS_AS(
        choi_from_kraus({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
        std::invalid_argument);
  }
}

TEST_CASE("instrument validation", "[game]") {
  SECTION("measure-and-reprepare instruments are valid") {
    REQUIRE(validate_instrument(z_measure_reprepare(0)));
    REQUIRE(validate_instrument(z_measure_reprepare(1)));
  }

  SECTION("scaling an outcome breaks trace preservation") {
    Instrument ins = z_measure_reprepare(0);
    ins.choi[0] = 2.0 * ins.choi[0];
    REQUIRE_FALSE(validate_instrument(ins));
  }

  SECTION("empty instruments are invalid") {
    Instrument empty;
    REQUIRE_FALSE(validate_instrument(empty));
  }
}

TEST_CASE("generalized Born rule", "[game]") {
  SECTION("identity relay then measurement is uniform") {
    const ProbabilityTable table =
        born(fixed_order(CausalOrder::a_before_b, 2), identity_channel(2),
             z_measure_reprepare(0));
    REQUIRE(table.p.size() == 1);
    REQUIRE(table.p[0].size() == 2);
    REQUIRE_THAT(table.p[0][0], Catch::Matchers::WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(table.p[0][1], Catch::Matchers::WithinAbs(0.5, 1e-12));
  }

  SECTION("trace-and-discard strategies are deterministic") {
    auto discard = [](int prep) {
      // single outcome: trace the input, prepare |prep>
      Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
      k0(prep, 0) = 1.0;
      k1(prep, 1) = 1.0;
      return instrument_from_kraus({{k0, k1}});
    };
    for (int i = 0; i < 5; ++i) {
      const ProbabilityTable table =
          born(random_valid_process(600 + i), discard(0), discard(1));
      REQUIRE(table.p.size() == 1);
      REQUIRE_THAT(table.p[0][0], Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
  }

  SECTION("switch marginal is party symmetric") {
    const Instrument meas = z_measure_reprepare(0);
    const ProbabilityTable table = born(qs_marginal(2), meas, meas);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        REQUIRE_THAT(table.p[a][b],
                     Catch::Matchers::WithinAbs(table.p[b][a], 1e-12));
  }

  SECTION("dimension mismatches are rejected") {
    REQUIRE_THROWS_AS(born(fixed_order(CausalOrder::a_before_b, 3),
                           identity_channel(2), z_measure_reprepare(0)),
                      std::invalid_argument);
  }

  SECTION("invalid instruments are rejected") {
    Instrument bad = z_measure_reprepare(0);
    bad.choi.pop_back();
    REQUIRE_THROWS_AS(born(qs_marginal(2), identity_channel(2), bad),
                      std::invalid_argument);
  }
}

TEST_CASE("random instruments", "[game]") {
  SECTION("always valid, any outcome count") {
    for (int n : {1, 2, 3}) {
      for (int i = 0; i < 5; ++i) {
        const Instrument ins =
            random_cptp_instrument(2, n, RandomSource(700).child(10 * n + i));
        REQUIRE(validate_instrument(ins));
        REQUIRE(ins.outcomes() == static_cast<std::size_t>(n));
      }
    }
  }

  SECTION("fixed seed reproduces the instrument") {
    const Instrument a = random_cptp_instrument(2, 2, RandomSource(13));
    const Instrument b = random_cptp_instrument(2, 2, RandomSource(13));
    for (std::size_t k = 0; k < a.outcomes(); ++k)
      REQUIRE((a.choi[k] - b.choi[k]).max_abs() == 0.0);
  }
}

TEST_CASE("born normalization on random inputs", "[game]") {
  for (int i = 0; i < 30; ++i) {
    const ProcessMatrix w = random_valid_process(800 + i);
    const Instrument alice =
        random_cptp_instrument(2, 1 + i % 3, RandomSource(900).child(i));
    const Instrument bob =
        random_cptp_instrument(2, 1 + (i + 1) % 3, RandomSource(901).child(i));
    const ProbabilityTable table = born(w, alice, bob);
    REQUIRE_THAT(table.sum(), Catch::Matchers::WithinAbs(1.0, 1e-9));
    for (const auto& row : table.p)
      for (double p : row) REQUIRE(p >= -1e-12);
  }
}

TEST_CASE("no signaling from the future party", "[game]") {
  // With a fixed order A before B, Alice's marginal cannot depend on Bob's
  // instrument choice.
  const ProcessMatrix w = fixed_order(CausalOrder::a_before_b, 2);
  const Instrument alice = random_cptp_instrument(2, 2, RandomSource(41));
  std::vector<double> reference;
  for (int i = 0; i < 10; ++i) {
    const Instrument bob =
        random_cptp_instrument(2, 1 + i % 3, RandomSource(42).child(i));
    const ProbabilityTable table = born(w, alice, bob);
    std::vector<double> marginal(table.p.size(), 0.0);
    for (std::size_t a = 0; a < table.p.size(); ++a)
      for (double p : table.p[a]) marginal[a] += p;
    if (reference.empty()) {
      reference = marginal;
    } else {
      for (std::size_t a = 0; a < marginal.size(); ++a)
        REQUIRE_THAT(marginal[a],
                     Catch::Matchers::WithinAbs(reference[a], 1e-10));
    }
  }
}

TEST_CASE("causal game preset", "[game]") {
  const Strategy strategy = ocb_strategy();
  const GameSpec game = ocb_game();

  SECTION("success on the canonical noncovariant process") {
    const double p = game_success(ocb_process(), strategy, game);
    REQUIRE_THAT(p, Catch::Matchers::WithinAbs((2.0 + std::sqrt(2.0)) / 4.0,
                                               1e-9));
  }

  SECTION("fixed orders respect the causal bound") {
    REQUIRE(game_success(fixed_order(CausalOrder::a_before_b, 2), strategy,
                         game) <= 0.75 + 1e-9);
    REQUIRE(game_success(fixed_order(CausalOrder::b_before_a, 2), strategy,
                         game) <= 0.75 + 1e-9);
  }

  SECTION("success is affine in the process") {
    const ProcessMatrix w1 = random_valid_process(111);
    const ProcessMatrix w2 = random_valid_process(222);
    const ProcessMatrix mix(0.5 * (w1.op() + w2.op()));
    const double lhs = game_success(mix, strategy, game);
    const double rhs = 0.5 * (game_success(w1, strategy, game) +
                              game_success(w2, strategy, game));
    REQUIRE_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-12));
  }

  SECTION("random strategies stay inside [0, 1]") {
    for (int i = 0; i < 5; ++i) {
      Strategy random_strategy;
      for (int x = 0; x < 2; ++x)
        random_strategy.alice.push_back(
            random_cptp_instrument(2, 2, RandomSource(50).child(10 + x + i)));
      for (int s = 0; s < 4; ++s)
        random_strategy.bob.push_back(
            random_cptp_instrument(2, 2, RandomSource(51).child(20 + s + i)));
      const double p =
          game_success(random_valid_process(300 + i), random_strategy, game);
      REQUIRE(p >= -1e-12);
      REQUIRE(p <= 1.0 + 1e-12);
    }
  }

  SECTION("score and success are affinely related at the anchors") {
    const Witness w = ocb_witness();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ProcessMatrix anchors[3] = {ocb_process(),
                                      fixed_order(CausalOrder::a_before_b, 2),
                                      wire_twirl(ocb_process())};
    for (const ProcessMatrix& anchor : anchors) {
      const double f = score(w, anchor).total;
      const double p = game_success(anchor, strategy, game);
      REQUIRE_THAT(p, Catch::Matchers::WithinAbs(0.5 * (1.0 + f * inv_sqrt2),
                                                 1e-9));
    }
  }
}

TEST_CASE("game spec consistency checks", "[game]") {
  const Strategy strategy = ocb_strategy();
  GameSpec bad = ocb_game();
  bad.setting_probs[0][0] = 0.9;
  REQUIRE_THROWS_AS(game_success(qs_marginal(2), strategy, bad),
                    std::invalid_argument);

  GameSpec wrong_shape = ocb_game();
  wrong_shape.setting_probs.pop_back();
  REQUIRE_THROWS_AS(game_success(qs_marginal(2), strategy, wrong_shape),
                    std::invalid_argument);

  GameSpec short_win = ocb_game();
  short_win.win[0][0].pop_back();
  REQUIRE_THROWS_AS(game_success(qs_marginal(2), strategy, short_win),
                    std::invalid_argument);

  GameSpec short_row = ocb_game();
  short_row.win[1][2][0].pop_back();
  REQUIRE_THROWS_AS(game_success(qs_marginal(2), strategy, short_row),
                    std::invalid_argument);
}
