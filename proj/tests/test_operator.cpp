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

#include "procmat/operator.hpp"
#include "procmat/random.hpp"

using namespace procmat;

namespace {

Operator random_op(const SubsystemLayout& layout, std::uint64_t seed) {
  return Operator(layout,
                  random_hermitian_matrix(layout.total_dim(), RandomSource(seed)));
}

}  // namespace

TEST_CASE("subsystem layout invariants", "[operator]") {
  REQUIRE_THROWS_AS(SubsystemLayout({"a", "a"}, {2, 2}), std::invalid_argument);
  REQUIRE_THROWS_AS(SubsystemLayout({"a", "b"}, {2}), std::invalid_argument);
  REQUIRE_THROWS_AS(SubsystemLayout({"a"}, {0}), std::invalid_argument);
  const SubsystemLayout layout({"a", "b", "c"}, {2, 3, 4});
  REQUIRE(layout.total_dim() == 24);
  REQUIRE(layout.position("b") == 1);
  REQUIRE(layout.strides() == std::vector<Eigen::Index>{12, 4, 1});
}

TEST_CASE("tensor product", "[operator]") {
  const Operator id2 = Operator::identity(SubsystemLayout({"a"}, {2}));

  SECTION("identity case") {
    const Operator out = tensor(id2, id2.relabeled({"b"}));
    REQUIRE(out.dim() == 4);
    REQUIRE((out.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("Z (x) Z is diag(1,-1,-1,1)") {
    const Operator zz = tensor(pauli(Pauli::Z, "a"), pauli(Pauli::Z, "b"));
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 1;
    expected(1, 1) = -1;
    expected(2, 2) = -1;
    expected(3, 3) = 1;
    REQUIRE((zz.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("projector times identity has multiplicative trace") {
    const Operator out = tensor(max_entangled_projector(2, "a", "b"),
                                id2.relabeled({"c"}));
    REQUIRE(out.dim() == 8);
    REQUIRE_THAT(out.trace().real(), Catch::Matchers::WithinAbs(2.0, 1e-14));
  }

  SECTION("duplicate labels are rejected") {
    REQUIRE_THROWS_AS(tensor(id2, id2), std::invalid_argument);
  }
}

TEST_CASE("partial trace", "[operator]") {
  SECTION("maximally entangled projector reduces to I/d") {
    for (int d : {2, 3}) {
      const Operator proj = max_entangled_projector(d, "a", "b");
      const Operator reduced = partial_trace(proj, {"b"});
      const Matrix expected = Matrix::Identity(d, d) / static_cast<double>(d);
      REQUIRE((reduced.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }

  SECTION("complement projector reduces to (d^2-1)/d I") {
    for (int d : {2, 3}) {
      const Operator proj = max_entangled_projector(d, "a", "b");
      const Operator perp = Operator::identity(proj.layout()) - proj;
      const Operator reduced = partial_trace(perp, {"b"});
      const Matrix expected = Matrix::Identity(d, d) *
                              ((static_cast<double>(d) * d - 1.0) / d);
      REQUIRE((reduced.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }

  SECTION("product operators factorize") {
    const Operator a = random_op(SubsystemLayout({"a"}, {3}), 11);
    const Operator b = random_op(SubsystemLayout({"b"}, {2}), 12);
    const Operator reduced = partial_trace(tensor(a, b), {"b"});
    const Matrix expected = b.trace() * a.matrix();
    REQUIRE((reduced.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SECTION("unknown label is rejected") {
    const Operator a = random_op(SubsystemLayout({"a"}, {2}), 13);
    REQUIRE_THROWS_AS(partial_trace(a, {"nope"}), std::invalid_argument);
  }

  SECTION("trace is preserved") {
    const Operator x = random_op(SubsystemLayout({"a", "b", "c"}, {2, 3, 2}), 14);
    const Operator reduced = partial_trace(x, {"a", "c"});
    REQUIRE(std::abs(reduced.trace() - x.trace()) <=
            1e-12 * std::abs(x.trace()));
  }
}

TEST_CASE("trace and replace", "[operator]") {
  SECTION("identity is a fixed point") {
    const Operator id4 = Operator::identity(SubsystemLayout({"a", "b"}, {2, 2}));
    const Operator out = trace_and_replace(id4, "a");
    REQUIRE((out.matrix() - id4.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SECTION("projector flattens to I/4") {
    const Operator proj = max_entangled_projector(2, "A_O", "B_I");
    const Operator out = trace_and_replace(proj, "B_I");
    REQUIRE((out.matrix() - Matrix::Identity(4, 4) * 0.25).cwiseAbs().maxCoeff() <=
            1e-14);
  }

  SECTION("traceless leg annihilates") {
    const Operator zi = tensor(pauli(Pauli::Z, "a"),
                               Operator::identity(SubsystemLayout({"b"}, {2})));
    REQUIRE(trace_and_replace(zi, "a").max_abs() <= 1e-14);
  }

  SECTION("idempotence on random operators") {
    const Operator x = random_op(SubsystemLayout({"a", "b"}, {3, 2}), 15);
    const Operator once = trace_and_replace(x, "b");
    const Operator twice = trace_and_replace(once, "b");
    REQUIRE((once - twice).max_abs() <= 1e-12);
  }
}

TEST_CASE("permute subsystems", "[operator]") {
  const Operator x = random_op(SubsystemLayout({"a", "b", "c"}, {2, 3, 2}), 16);

  SECTION("identity permutation") {
    const Operator out = permute_subsystems(x, {"a", "b", "c"});
    REQUIRE((out - x).max_abs() == 0.0);
  }

  SECTION("swap on a product operator") {
    const Operator a = random_op(SubsystemLayout({"a"}, {2}), 17);
    const Operator b = random_op(SubsystemLayout({"b"}, {3}), 18);
    const Operator swapped = permute_subsystems(tensor(a, b), {"b", "a"});
    REQUIRE((swapped - tensor(b, a)).max_abs() <= 1e-13);
  }

  SECTION("a swap is an involution") {
    const Operator once = permute_subsystems(x, {"c", "b", "a"});
    const Operator twice = permute_subsystems(once, {"a", "b", "c"});
    REQUIRE((twice - x).max_abs() == 0.0);
  }

  SECTION("eigenvalues are preserved") {
    const Operator out = permute_subsystems(x, {"c", "a", "b"});
    Eigen::SelfAdjointEigenSolver<Matrix> sa(x.matrix(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> sb(out.matrix(), Eigen::EigenvaluesOnly);
    REQUIRE((sa.eigenvalues() - sb.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SECTION("non-permutations are rejected") {
    REQUIRE_THROWS_AS(permute_subsystems(x, {"a", "b"}), std::invalid_argument);
    REQUIRE_THROWS_AS(permute_subsystems(x, {"a", "b", "b"}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(permute_subsystems(x, {"a", "b", "z"}),
                      std::invalid_argument);
  }
}

TEST_CASE("maximally entangled projector", "[operator]") {
  SECTION("explicit entries at d = 2") {
    const Operator proj = max_entangled_projector(2, "a", "b");
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    REQUIRE((proj.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("unit trace and idempotence") {
    const int d = GENERATE(2, 3, 4);
    const Operator proj = max_entangled_projector(d, "a", "b");
    REQUIRE_THAT(proj.trace().real(), Catch::Matchers::WithinAbs(1.0, 1e-14));
    const Matrix sq = proj.matrix() * proj.matrix();
    REQUIRE((sq - proj.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SECTION("d < 2 is rejected") {
    REQUIRE_THROWS_AS(max_entangled_projector(1), std::invalid_argument);
  }
}

TEST_CASE("pauli operators", "[operator]") {
  REQUIRE(pauli(Pauli::Z).matrix()(0, 0) == Complex(1, 0));
  REQUIRE(pauli(Pauli::Z).matrix()(1, 1) == Complex(-1, 0));
  REQUIRE(pauli(Pauli::X).matrix()(0, 1) == Complex(1, 0));
  REQUIRE(pauli(Pauli::X).matrix()(1, 0) == Complex(1, 0));
  REQUIRE(pauli(Pauli::Y).is_hermitian());
  const Complex xz = (pauli(Pauli::X).matrix() * pauli(Pauli::Z).matrix()).trace();
  REQUIRE(std::abs(xz) == 0.0);
}

TEST_CASE("positivity test", "[operator]") {
  REQUIRE(is_psd(max_entangled_projector(2, "a", "b")));
  REQUIRE_FALSE(is_psd(pauli(Pauli::Z)));

  SECTION("complement projectors are positive") {
    for (int d : {2, 3}) {
      const Operator proj = max_entangled_projector(d, "a", "b");
      REQUIRE(is_psd(Operator::identity(proj.layout()) - proj));
    }
  }

  SECTION("non-Hermitian input is rejected") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    REQUIRE_THROWS_AS(is_psd(Operator(SubsystemLayout({"a"}, {2}), m)),
                      std::invalid_argument);
  }
}

TEST_CASE("Hilbert-Schmidt inner product", "[operator]") {
  const Operator proj = max_entangled_projector(2, "a", "b");
  const Operator perp = Operator::identity(proj.layout()) - proj;
  REQUIRE_THAT(hs_inner(proj, proj).real(),
               Catch::Matchers::WithinAbs(1.0, 1e-14));
  REQUIRE(std::abs(hs_inner(proj, perp)) <= 1e-14);
  const Operator id4 = Operator::identity(proj.layout());
  REQUIRE_THAT(hs_inner(id4, id4).real(),
               Catch::Matchers::WithinAbs(4.0, 1e-14));
  REQUIRE_THROWS_AS(hs_inner(proj, pauli(Pauli::X)), std::invalid_argument);
}

TEST_CASE("tensor then partial trace returns the scaled factor", "[operator]") {
  const std::uint64_t seed = GENERATE(21, 22, 23);
  const Operator a = random_op(SubsystemLayout({"a", "b"}, {2, 2}), seed);
  const Operator b = random_op(SubsystemLayout({"c"}, {3}), seed + 100);
  const Operator back = partial_trace(tensor(a, b), {"c"});
  REQUIRE((back - b.trace() * a).max_abs() <= 1e-12);
}
