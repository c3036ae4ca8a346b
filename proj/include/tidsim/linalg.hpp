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
#include <complex>

#include <Eigen/Dense>

namespace tidsim {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using ComplexMatrix4 = Eigen::Matrix<Complex, 4, 4>;

template <int N>
struct HermitianEigen {
  std::array<double, N> values;       // ascending
  Eigen::Matrix<Complex, N, N> vectors;  // columns are eigenvectors
  int sweeps = 0;
};

// Cyclic Jacobi diagonalisation of a Hermitian matrix. Pivots are visited in
// row-major (p < q) order every sweep, so results are reproducible bit for
// bit. Only the upper triangle's Hermitian part is used. Throws
// Error(NumericalFailure) when the off-diagonal norm does not reach machine
// precision within the sweep budget.
template <int N>
HermitianEigen<N> jacobi_eigh(const Eigen::Matrix<Complex, N, N>& a, int max_sweeps = 64);

extern template HermitianEigen<2> jacobi_eigh<2>(const Matrix2&, int);
extern template HermitianEigen<4> jacobi_eigh<4>(const ComplexMatrix4&, int);

// V diag(f(lambda)) V^dagger
template <int N, class F>
Eigen::Matrix<Complex, N, N> reassemble(const HermitianEigen<N>& e, F&& f) {
  Eigen::Matrix<Complex, N, N> out = Eigen::Matrix<Complex, N, N>::Zero();
  for (int k = 0; k < N; ++k) {
    out += f(e.values[k]) * e.vectors.col(k) * e.vectors.col(k).adjoint();
  }
  return out;
}

// Square root of a positive semidefinite matrix; eigenvalues below zero are
// clamped to 0 first.
ComplexMatrix4 sqrt_psd(const ComplexMatrix4& a);

// Von Neumann entropy in bits of a Hermitian matrix (0 log 0 := 0).
double entropy_bits(const ComplexMatrix4& rho);
double entropy_bits(const Matrix2& rho);

// -x log2 x with the continuous extension at 0; negative x contributes 0.
double eta_bits(double x) noexcept;

double max_abs(const ComplexMatrix4& a) noexcept;

ComplexMatrix4 kron(const Matrix2& a, const Matrix2& b);

}  // namespace tidsim
