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
#include <string>

#include "tidsim/linalg.hpp"

namespace tidsim {

// Validity slack used throughout. Callers that ingest noisy experimental
// matrices can pass their own.
struct Tolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double psd = 1e-9;
};

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p) noexcept;
Pauli pauli_from_char(char c);  // throws InvalidArgument
const Matrix2& pauli_matrix(Pauli p) noexcept;
ComplexMatrix4 pauli_pair(Pauli a, Pauli b);

// Basis order |00>, |01>, |10>, |11>; qubit 1 is the left tensor factor.
class DensityMatrix {
 public:
  // Throws UnphysicalParams when m is not Hermitian, not unit trace or has an
  // eigenvalue below -tol.psd.
  static DensityMatrix from_matrix(const ComplexMatrix4& m, const Tolerances& tol = {});
  // No checks. For states that are valid by construction (unitary images,
  // convex mixtures, projections).
  static DensityMatrix trusted(const ComplexMatrix4& m) { return DensityMatrix(m); }

  static DensityMatrix maximally_mixed();
  static DensityMatrix pure(const Eigen::Matrix<Complex, 4, 1>& psi);

  const ComplexMatrix4& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  // Reduced states; qubit 0 is the left factor.
  Matrix2 partial_trace_keep(int qubit) const;

 private:
  explicit DensityMatrix(const ComplexMatrix4& m) : m_(m) {}
  ComplexMatrix4 m_;
};

struct BDParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
};

// Bell-basis weights in the order (Phi+, Phi-, Psi+, Psi-):
// (1+c1-c2+c3)/4, (1-c1+c2+c3)/4, (1+c1+c2-c3)/4, (1-c1-c2-c3)/4.
std::array<double, 4> bell_eigenvalues(const BDParams& c) noexcept;
bool is_physical(const BDParams& c, double psd_slack = 1e-9) noexcept;

// (I + sum_i c_i sigma_i x sigma_i) / 4
DensityMatrix bd_state(const BDParams& c, const Tolerances& tol = {});
BDParams bd_params_of(const DensityMatrix& rho);

// Distance from the Bell-diagonal manifold: max-entry deviation between rho
// and bd_state(bd_params_of(rho)).
double bd_residual(const DensityMatrix& rho);

// Uhlmann-Jozsa fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

double pauli_expectation(const DensityMatrix& rho, Pauli a, Pauli b);

double min_eigenvalue(const ComplexMatrix4& m);

// Nested [[re, im], ...] rows, row-major in the computational basis.
std::string to_json(const DensityMatrix& rho, int indent = -1);
DensityMatrix density_matrix_from_json(const std::string& text, const Tolerances& tol = {});
ComplexMatrix4 matrix_from_json(const std::string& text);

}  // namespace tidsim
