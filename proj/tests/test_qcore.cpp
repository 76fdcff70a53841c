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

#include <array>
#include <random>

#include "doctest.h"
#include "qtraj/error.hpp"
#include "qtraj/qcore.hpp"
#include "support.hpp"

using namespace qtraj;
using qtraj::testing::kron;
using qtraj::testing::max_abs;

namespace {

ComplexMatrix projector(std::string_view bits) {
  const ComplexVector v = basis_state(bits);
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("pauli matrices satisfy the algebra") {
  const Complex i(0.0, 1.0);
  CHECK(max_abs(pauli::x() * pauli::y() - i * pauli::z()) < 1e-15);
  CHECK(max_abs(pauli::minus() + pauli::plus() - pauli::x()) < 1e-15);
  // sigma_- lowers |e> = |1> to |g> = |0>.
  CHECK(max_abs(pauli::minus() * basis_state("1") - basis_state("0")) < 1e-15);
  CHECK(max_abs(pauli::plus() * pauli::minus() - projector("1")) < 1e-15);
}

TEST_CASE("embed places the operator at the requested slot") {
  CHECK(max_abs(embed(pauli::identity(), 0, 2) - ComplexMatrix::Identity(4, 4)) == 0.0);
  const ComplexMatrix xx = embed(pauli::x(), 0, 2) * embed(pauli::x(), 1, 2);
  CHECK(max_abs(xx - kron(pauli::x(), pauli::x())) == 0.0);
  CHECK(max_abs(embed(pauli::minus(), 1, 2) * basis_state("11") - basis_state("10")) == 0.0);
  CHECK(max_abs(embed(pauli::z(), 1, 3) -
                kron(kron(pauli::identity(), pauli::z()), pauli::identity())) == 0.0);
  CHECK_THROWS_AS(embed(pauli::x(), 2, 2), DomainError);
  CHECK_THROWS_AS(embed(pauli::x(), -1, 2), DomainError);
  CHECK_THROWS_AS(embed(ComplexMatrix::Identity(4, 4), 0, 2), DimensionError);
}

TEST_CASE("embedded operators on different slots commute") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = qtraj::testing::random_matrix(gen, 2);
    const ComplexMatrix b = qtraj::testing::random_matrix(gen, 2);
    const ComplexMatrix ea = embed(a, 0, 3);
    const ComplexMatrix eb = embed(b, 2, 3);
    CHECK(max_abs(ea * eb - eb * ea) < 1e-12);
  }
}

TEST_CASE("tensor_product matches repeated Kronecker products") {
  const std::array<Matrix2c, 3> f{pauli::x(), pauli::y(), pauli::z()};
  CHECK(max_abs(tensor_product(f) - kron(kron(pauli::x(), pauli::y()), pauli::z())) == 0.0);
}

TEST_CASE("dissipator examples") {
  const ComplexMatrix g = projector("0");
  const ComplexMatrix e = projector("1");
  CHECK(max_abs(dissipator(pauli::minus(), g)) == 0.0);
  CHECK(max_abs(dissipator(pauli::minus(), e) - (g - e)) < 1e-15);
  CHECK_THROWS_AS(dissipator(pauli::minus(), ComplexMatrix::Identity(4, 4)), DimensionError);
}

TEST_CASE("dissipator is traceless and Hermitian for random inputs") {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix c = qtraj::testing::random_matrix(gen, 4);
    const ComplexMatrix rho = qtraj::testing::random_state(gen, 4);
    const ComplexMatrix d = dissipator(c, rho);
    CHECK(std::abs(d.trace()) < 1e-12);
    CHECK(hermiticity_defect(d) < 1e-12);
  }
}

TEST_CASE("hermitian_eigenvalues examples") {
  const std::vector<double> id = hermitian_eigenvalues(pauli::identity());
  REQUIRE(id.size() == 2);
  CHECK(id[0] == doctest::Approx(1.0));
  CHECK(id[1] == doctest::Approx(1.0));
  const std::vector<double> z = hermitian_eigenvalues(pauli::z());
  CHECK(z[0] == doctest::Approx(1.0));
  CHECK(z[1] == doctest::Approx(-1.0));

  // Spin-flipped product of the Bell state; it is Hermitian here because
  // the Bell state is invariant under the spin flip.
  const ComplexVector psi = (basis_state("01") + basis_state("10")) / std::sqrt(2.0);
  const ComplexMatrix rho = psi * psi.adjoint();
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  const ComplexMatrix r = rho * yy * rho.conjugate() * yy;
  const std::vector<double> l = hermitian_eigenvalues(r);
  CHECK(l[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(l[static_cast<std::size_t>(k)]) < 1e-12);

  // Characteristic polynomial of the same matrix is x^3 (x - 1).
  CHECK(std::abs(r.determinant()) < 1e-14);
  CHECK(std::abs(r.trace() - 1.0) < 1e-14);

  ComplexMatrix bad = pauli::x();
  bad(0, 1) = 2.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), DomainError);
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("eigenvalues of valid states lie in [0, 1] and sum to one") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho(qtraj::testing::random_state(gen, 8));
    const std::vector<double> l = hermitian_eigenvalues(rho.matrix());
    double sum = 0.0;
    for (std::size_t k = 0; k < l.size(); ++k) {
      CHECK(l[k] >= -1e-9);
      CHECK(l[k] <= 1.0 + 1e-9);
      if (k > 0) CHECK(l[k] <= l[k - 1]);
      sum += l[k];
    }
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
}

TEST_CASE("pauli_multiply examples and group laws") {
  using P = PauliLabel;
  CHECK(pauli_multiply(P::X, P::X) == P::I);
  CHECK(pauli_multiply(P::X, P::Y) == P::Z);
  CHECK(pauli_multiply(P::I, P::Z) == P::Z);
  const std::array<P, 4> all{P::I, P::X, P::Y, P::Z};
  for (P a : all) {
    CHECK(pauli_multiply(a, a) == P::I);
    for (P b : all) {
      // Agrees with matrix multiplication up to a phase.
      const Matrix2c prod = pauli_matrix(a) * pauli_matrix(b);
      const Matrix2c expected = pauli_matrix(pauli_multiply(a, b));
      const Complex phase = (expected.adjoint() * prod).trace() / 2.0;
      CHECK(std::abs(std::abs(phase) - 1.0) < 1e-15);
      CHECK(max_abs(prod - phase * expected) < 1e-15);
      for (P c : all) {
        CHECK(pauli_multiply(pauli_multiply(a, b), c) == pauli_multiply(a, pauli_multiply(b, c)));
      }
    }
  }
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix(projector("01")));
  CHECK(DensityMatrix::maximally_mixed(3).dim() == 8);
  CHECK(DensityMatrix(projector("01")).n_qubits() == 2);

  ComplexMatrix not_unit = projector("0") * 2.0;
  CHECK_THROWS_AS(DensityMatrix{not_unit}, NumericalError);

  ComplexMatrix negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, NumericalError);

  ComplexMatrix asym = projector("0");
  asym(0, 1) = 1e-6;
  CHECK_THROWS_AS(DensityMatrix{asym}, NumericalError);

  CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::Identity(3, 3) / 3.0}, DimensionError);
  CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::Identity(2, 4)}, DimensionError);

  // Tolerances: small negative eigenvalues and tiny asymmetry are accepted.
  ComplexMatrix slightly(2, 2);
  slightly << 1.0 + 5e-10, 0.0, 0.0, -5e-10;
  CHECK_NOTHROW(DensityMatrix{slightly});
}

TEST_CASE("reduced_qubit traces out the other qubits") {
  std::mt19937_64 gen(14);
  const ComplexMatrix a = qtraj::testing::random_state(gen, 2);
  const ComplexMatrix b = qtraj::testing::random_state(gen, 2);
  const ComplexMatrix c = qtraj::testing::random_state(gen, 2);
  const ComplexMatrix rho = kron(kron(a, b), c);
  CHECK(max_abs(reduced_qubit(rho, 0, 3) - a) < 1e-14);
  CHECK(max_abs(reduced_qubit(rho, 1, 3) - b) < 1e-14);
  CHECK(max_abs(reduced_qubit(rho, 2, 3) - c) < 1e-14);
}

TEST_CASE("trace_product equals the trace of the product") {
  std::mt19937_64 gen(15);
  const ComplexMatrix a = qtraj::testing::random_matrix(gen, 4);
  const ComplexMatrix b = qtraj::testing::random_matrix(gen, 4);
  CHECK(std::abs(trace_product(a, b) - (a * b).trace()) < 1e-12);
}

TEST_CASE("hermitize_and_normalize") {
  ComplexMatrix m(2, 2);
  m << 2.0, Complex(0.0, 1.0), 0.0, 2.0;
  const double tr = hermitize_and_normalize(m);
  CHECK(tr == doctest::Approx(4.0));
  CHECK(hermiticity_defect(m) == 0.0);
  CHECK(std::abs(m.trace() - 1.0) < 1e-15);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  CHECK_THROWS_AS(hermitize_and_normalize(zero), NumericalError);
}

TEST_CASE("basis_state uses qubit 0 as the leftmost factor") {
  const ComplexVector v = basis_state("10");
  CHECK(v(2) == Complex(1.0, 0.0));
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK_THROWS(basis_state("012"));
}
