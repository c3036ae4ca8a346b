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
#pragma once

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "tidsim/qstate.hpp"

namespace tidsim::test {

// Uniform over the tetrahedron of physical Bell-diagonal states: Bell weights
// drawn from a flat Dirichlet distribution and mapped back to c.
inline BDParams random_bd(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> w{};
  double sum = 0.0;
  for (auto& x : w) sum += (x = e(rng));
  for (auto& x : w) x /= sum;
  return {w[0] - w[1] + w[2] - w[3], -w[0] + w[1] + w[2] - w[3], w[0] + w[1] - w[2] - w[3]};
}

inline ComplexMatrix4 random_hermitian4(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(n(rng), n(rng));
  return (a + a.adjoint()) / 2.0;
}

// Random mixed state: G G^dagger / tr.
inline DensityMatrix random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(n(rng), n(rng));
  ComplexMatrix4 m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::trusted(m);
}

// Von Neumann entropy in bits from Eigen's solver, independent of the
// library's Jacobi routine.
template <int N>
double entropy_oracle(const Eigen::Matrix<Complex, N, N>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> es(m);
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-300) s -= l * std::log2(l);
  }
  return s;
}

inline double mutual_information_oracle(const DensityMatrix& rho) {
  return entropy_oracle<2>(rho.partial_trace_keep(0)) + entropy_oracle<2>(rho.partial_trace_keep(1)) -
         entropy_oracle<4>(rho.matrix());
}

}  // namespace tidsim::test
