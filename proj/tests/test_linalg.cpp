/*
 * Copyright 2026 The tidsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tidsim/errors.hpp"
#include "tidsim/linalg.hpp"

using namespace tidsim;

TEST_SUITE("linalg") {

TEST_CASE("jacobi matches Eigen's self-adjoint solver on random Hermitian 4x4") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix4 a = test::random_hermitian4(rng);
    const auto e = jacobi_eigh<4>(a);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix4> es(a);
    for (int i = 0; i < 4; ++i) CHECK(e.values[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(e.values[i - 1] <= e.values[i]);
    const ComplexMatrix4 back = reassemble(e, [](double l) { return Complex(l, 0.0); });
    CHECK(max_abs(back - a) < 1e-12);
    const ComplexMatrix4 gram = e.vectors.adjoint() * e.vectors;
    CHECK(max_abs(gram - ComplexMatrix4::Identity()) < 1e-12);
  }
}

TEST_CASE("jacobi on 2x2 and already-diagonal input") {
  Matrix2 m;
  m << 2.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
  const auto e = jacobi_eigh<2>(m);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(3.0));

  ComplexMatrix4 d = ComplexMatrix4::Zero();
  d.diagonal() << 0.4, 0.1, 0.3, 0.2;
  const auto ed = jacobi_eigh<4>(d);
  CHECK(ed.sweeps <= 1);
  CHECK(ed.values[0] == 0.1);
  CHECK(ed.values[3] == 0.4);
}

TEST_CASE("jacobi is deterministic") {
  std::mt19937_64 rng(3);
  const ComplexMatrix4 a = test::random_hermitian4(rng);
  const auto e1 = jacobi_eigh<4>(a);
  const auto e2 = jacobi_eigh<4>(a);
  for (int i = 0; i < 4; ++i) CHECK(e1.values[i] == e2.values[i]);
  CHECK(e1.vectors == e2.vectors);
}

TEST_CASE("jacobi reports non-convergence") {
  std::mt19937_64 rng(5);
  const ComplexMatrix4 a = test::random_hermitian4(rng);
  CHECK_THROWS_AS(jacobi_eigh<4>(a, 1), Error);
}

TEST_CASE("sqrt_psd squares back and clamps negative eigenvalues") {
  std::mt19937_64 rng(9);
  const auto rho = test::random_state(rng);
  const ComplexMatrix4 r = sqrt_psd(rho.matrix());
  CHECK(max_abs(r * r - rho.matrix()) < 1e-12);

  ComplexMatrix4 d = ComplexMatrix4::Zero();
  d.diagonal() << 0.5, -1e-12, 0.25, 0.0;
  const ComplexMatrix4 s = sqrt_psd(d);
  CHECK(s(1, 1).real() == 0.0);
  CHECK(s(0, 0).real() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("entropy in bits") {
  CHECK(entropy_bits(ComplexMatrix4(ComplexMatrix4::Identity() / 4.0)) == doctest::Approx(2.0));
  CHECK(entropy_bits(Matrix2(Matrix2::Identity() / 2.0)) == doctest::Approx(1.0));
  ComplexMatrix4 pure = ComplexMatrix4::Zero();
  pure(0, 0) = 1.0;
  CHECK(entropy_bits(pure) == doctest::Approx(0.0));
  CHECK(eta_bits(0.0) == 0.0);
  CHECK(eta_bits(-1e-15) == 0.0);
  CHECK(eta_bits(0.5) == doctest::Approx(0.5));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto rho = test::random_state(rng);
    CHECK(entropy_bits(rho.matrix()) == doctest::Approx(test::entropy_oracle<4>(rho.matrix())).epsilon(1e-12));
  }
}

TEST_CASE("kron ordering puts the first factor on the left") {
  Matrix2 a = Matrix2::Zero(), b = Matrix2::Identity();
  a(0, 1) = 1.0;
  const ComplexMatrix4 k = kron(a, b);
  CHECK(k(0, 2) == Complex(1.0, 0.0));
  CHECK(k(1, 3) == Complex(1.0, 0.0));
  CHECK(k(0, 1) == Complex(0.0, 0.0));
}

}
