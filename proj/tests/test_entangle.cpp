// Copyright 2026 The qtraj Authors
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

#include <random>

#include "doctest.h"
#include "qtraj/entangle.hpp"
#include "qtraj/error.hpp"
#include "qtraj/master.hpp"
#include "qtraj/qcore.hpp"
#include "support.hpp"

using namespace qtraj;
using qtraj::testing::concurrence_reference;
using qtraj::testing::kron;

namespace {

ComplexVector bell() { return (basis_state("01") + basis_state("10")) / std::sqrt(2.0); }

}  // namespace

TEST_CASE("concurrence examples") {
  CHECK(concurrence(DensityMatrix::from_pure(bell())) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(concurrence(DensityMatrix::from_pure(basis_state("01"))) < 1e-14);
  CHECK(concurrence(DensityMatrix::maximally_mixed(2)) == 0.0);

  const LindbladModel model = LindbladModel::uniform(2, 1.0, 1.0);
  const TimeSeries<DensityMatrix> s =
      integrate_master(model, DensityMatrix::from_pure(bell()), 1e-3, 0.2);
  const double expected = std::exp(-0.4) + std::exp(-0.8) / 2.0 - 0.5;
  CHECK(std::abs(expected - 0.39498) < 1e-5);
  CHECK(std::abs(concurrence(s.values.back()) - expected) < 1e-6);

  CHECK_THROWS_AS(concurrence(ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0)), DimensionError);
  CHECK_THROWS_AS(concurrence(ComplexMatrix(ComplexMatrix::Identity(8, 8) / 8.0)), DimensionError);
}

TEST_CASE("concurrence matches the direct spin-flip eigenvalue formula") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    ComplexMatrix rho;
    if (trial % 2 == 0) {
      rho = qtraj::testing::random_state(gen, 4);
    } else {
      // Mixtures of a random pure state with white noise span C in (0, 1).
      const ComplexVector psi = qtraj::testing::random_ket(gen, 4);
      const double p = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
      rho = p * psi * psi.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
    }
    CHECK(std::abs(concurrence(rho) - concurrence_reference(rho)) < 1e-7);
  }
  // Werner states: C = max(0, (3p - 1)/2).
  for (double p : {0.0, 0.2, 0.34, 0.5, 0.9, 1.0}) {
    const ComplexVector psi = bell();
    const ComplexMatrix rho = p * psi * psi.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
    CHECK(std::abs(concurrence(rho) - std::max(0.0, (3.0 * p - 1.0) / 2.0)) < 1e-12);
  }
}

TEST_CASE("concurrence of pure states equals 2|ad - bc|") {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexVector v = qtraj::testing::random_ket(gen, 4);
    const double expected = 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
    CHECK(std::abs(concurrence(ComplexMatrix(v * v.adjoint())) - expected) < 1e-12);
  }
}

TEST_CASE("concurrence is invariant under Pauli conjugation") {
  std::mt19937_64 gen(23);
  const std::array<PauliLabel, 4> all{PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z};
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rho = qtraj::testing::random_state(gen, 4);
    const double c = concurrence(rho);
    for (PauliLabel a : all) {
      for (PauliLabel b : all) {
        const ComplexMatrix p = kron(pauli_matrix(a), pauli_matrix(b));
        CHECK(std::abs(concurrence(ComplexMatrix(p * rho * p.adjoint())) - c) < 1e-10);
      }
    }
  }
}

TEST_CASE("concurrence is invariant under local unitaries") {
  std::mt19937_64 gen(24);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = trial % 2 == 0
                                  ? qtraj::testing::random_state(gen, 4)
                                  : ComplexMatrix(DensityMatrix::from_pure(bell()).matrix());
    const ComplexMatrix u = kron(qtraj::testing::random_unitary(gen, 2),
                                 qtraj::testing::random_unitary(gen, 2));
    CHECK(std::abs(concurrence(ComplexMatrix(u * rho * u.adjoint())) - concurrence(rho)) < 1e-9);
  }
}

TEST_CASE("product states have zero concurrence") {
  std::mt19937_64 gen(25);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = kron(qtraj::testing::random_state(gen, 2),
                                   qtraj::testing::random_state(gen, 2));
    CHECK(concurrence(rho) < 1e-10);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexVector a = qtraj::testing::random_ket(gen, 2);
    const ComplexVector b = qtraj::testing::random_ket(gen, 2);
    const ComplexMatrix rho = kron(a * a.adjoint(), b * b.adjoint());
    CHECK(concurrence(rho) < 1e-10);
  }
}

TEST_CASE("concurrence stays in [0, 1]") {
  std::mt19937_64 gen(26);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = concurrence(qtraj::testing::random_state(gen, 4));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("trace distance and fidelity") {
  const DensityMatrix psi = DensityMatrix::from_pure(bell());
  CHECK(trace_distance(psi, psi) == 0.0);
  CHECK(fidelity_to_pure(psi, bell()) == doctest::Approx(1.0).epsilon(1e-14));
  const ComplexMatrix g = basis_state("0") * basis_state("0").adjoint();
  const ComplexMatrix e = basis_state("1") * basis_state("1").adjoint();
  CHECK(trace_distance(g, e) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(g, ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(trace_distance(g, ComplexMatrix(ComplexMatrix::Identity(4, 4))), DimensionError);
  CHECK_THROWS_AS(fidelity_to_pure(g, basis_state("00")), DimensionError);

  std::mt19937_64 gen(27);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = qtraj::testing::random_state(gen, 4);
    const ComplexMatrix b = qtraj::testing::random_state(gen, 4);
    const ComplexMatrix c = qtraj::testing::random_state(gen, 4);
    const double ab = trace_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(ab == doctest::Approx(trace_distance(b, a)));
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-12);
    // Pure-state formula sqrt(1 - |<u|v>|^2).
    const ComplexVector u = qtraj::testing::random_ket(gen, 4);
    const ComplexVector v = qtraj::testing::random_ket(gen, 4);
    const double overlap = std::norm(u.dot(v));
    CHECK(std::abs(trace_distance(ComplexMatrix(u * u.adjoint()), ComplexMatrix(v * v.adjoint())) -
                   std::sqrt(1.0 - overlap)) < 1e-10);
    CHECK(std::abs(fidelity_to_pure(ComplexMatrix(u * u.adjoint()), v) - overlap) < 1e-12);
  }
}

TEST_CASE("purity") {
  CHECK(purity(DensityMatrix::maximally_mixed(2).matrix()) == doctest::Approx(0.25));
  CHECK(purity(DensityMatrix::from_pure(bell()).matrix()) == doctest::Approx(1.0));
}
