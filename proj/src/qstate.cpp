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
#include "tidsim/qstate.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "tidsim/errors.hpp"

namespace tidsim {

namespace {

const std::array<Matrix2, 4>& pauli_table() {
  static const std::array<Matrix2, 4> table = [] {
    std::array<Matrix2, 4> t;
    const Complex i(0.0, 1.0);
    t[0] << 1.0, 0.0, 0.0, 1.0;
    t[1] << 0.0, 1.0, 1.0, 0.0;
    t[2] << 0.0, -i, i, 0.0;
    t[3] << 1.0, 0.0, 0.0, -1.0;
    return t;
  }();
  return table;
}

}  // namespace

char pauli_char(Pauli p) noexcept { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, std::string("unknown Pauli label '") + c + "'");
}

const Matrix2& pauli_matrix(Pauli p) noexcept { return pauli_table()[static_cast<int>(p)]; }

ComplexMatrix4 pauli_pair(Pauli a, Pauli b) { return kron(pauli_matrix(a), pauli_matrix(b)); }

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix4& m, const Tolerances& tol) {
  if (!m.allFinite()) throw Error(ErrorCode::UnphysicalParams, "density matrix has non-finite entries");
  const double herm = max_abs(m - m.adjoint());
  if (herm > tol.hermitian) {
    throw Error(ErrorCode::UnphysicalParams,
                "density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw Error(ErrorCode::UnphysicalParams,
                "density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  const double lo = min_eigenvalue(m);
  if (lo < -tol.psd) {
    throw Error(ErrorCode::UnphysicalParams,
                "density matrix has negative eigenvalue " + std::to_string(lo));
  }
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(ComplexMatrix4::Identity() * 0.25);
}

DensityMatrix DensityMatrix::pure(const Eigen::Matrix<Complex, 4, 1>& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "zero state vector");
  const Eigen::Matrix<Complex, 4, 1> u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

Matrix2 DensityMatrix::partial_trace_keep(int qubit) const {
  Matrix2 r = Matrix2::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int k = 0; k < 2; ++k) {
        r(a, b) += qubit == 0 ? m_(2 * a + k, 2 * b + k) : m_(2 * k + a, 2 * k + b);
      }
    }
  }
  return r;
}

std::array<double, 4> bell_eigenvalues(const BDParams& c) noexcept {
  return {(1.0 + c.c1 - c.c2 + c.c3) / 4.0, (1.0 - c.c1 + c.c2 + c.c3) / 4.0,
          (1.0 + c.c1 + c.c2 - c.c3) / 4.0, (1.0 - c.c1 - c.c2 - c.c3) / 4.0};
}

bool is_physical(const BDParams& c, double psd_slack) noexcept {
  if (!std::isfinite(c.c1) || !std::isfinite(c.c2) || !std::isfinite(c.c3)) return false;
  const auto w = bell_eigenvalues(c);
  return std::all_of(w.begin(), w.end(), [&](double x) { return x >= -psd_slack; });
}

DensityMatrix bd_state(const BDParams& c, const Tolerances& tol) {
  if (!is_physical(c, tol.psd)) {
    const auto w = bell_eigenvalues(c);
    throw Error(ErrorCode::UnphysicalParams,
                "BD parameters (" + std::to_string(c.c1) + ", " + std::to_string(c.c2) + ", " +
                    std::to_string(c.c3) + ") give Bell weight " +
                    std::to_string(*std::min_element(w.begin(), w.end())));
  }
  // Written out entry by entry so the result is exactly Hermitian.
  ComplexMatrix4 m = ComplexMatrix4::Zero();
  m(0, 0) = m(3, 3) = (1.0 + c.c3) / 4.0;
  m(1, 1) = m(2, 2) = (1.0 - c.c3) / 4.0;
  m(0, 3) = m(3, 0) = (c.c1 - c.c2) / 4.0;
  m(1, 2) = m(2, 1) = (c.c1 + c.c2) / 4.0;
  return DensityMatrix::trusted(m);
}

BDParams bd_params_of(const DensityMatrix& rho) {
  return {pauli_expectation(rho, Pauli::X, Pauli::X), pauli_expectation(rho, Pauli::Y, Pauli::Y),
          pauli_expectation(rho, Pauli::Z, Pauli::Z)};
}

double bd_residual(const DensityMatrix& rho) {
  const BDParams c = bd_params_of(rho);
  ComplexMatrix4 m = ComplexMatrix4::Identity();
  m += c.c1 * pauli_pair(Pauli::X, Pauli::X) + c.c2 * pauli_pair(Pauli::Y, Pauli::Y) +
       c.c3 * pauli_pair(Pauli::Z, Pauli::Z);
  return max_abs(rho.matrix() - m / 4.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const ComplexMatrix4 s = sqrt_psd(rho.matrix());
  const ComplexMatrix4 inner = s * sigma.matrix() * s;
  const auto e = jacobi_eigh<4>(inner);
  double tr = 0.0;
  for (double x : e.values) tr += std::sqrt(std::max(x, 0.0));
  return std::clamp(tr * tr, 0.0, 1.0);
}

double pauli_expectation(const DensityMatrix& rho, Pauli a, Pauli b) {
  return (rho.matrix() * pauli_pair(a, b)).trace().real();
}

double min_eigenvalue(const ComplexMatrix4& m) { return jacobi_eigh<4>(m).values[0]; }

std::string to_json(const DensityMatrix& rho, int indent) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows.dump(indent);
}

ComplexMatrix4 matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("density matrix JSON: ") + e.what());
  }
  auto bad = [](const std::string& why) {
    return Error(ErrorCode::ConfigError, "density matrix JSON: " + why);
  };
  if (!j.is_array() || j.size() != 4) throw bad("expected 4 rows");
  ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != 4) throw bad("row " + std::to_string(i) + " needs 4 entries");
    for (int k = 0; k < 4; ++k) {
      const auto& e = row[k];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw bad("entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not [re, im]");
      }
    }
  }
  return m;
}

DensityMatrix density_matrix_from_json(const std::string& text, const Tolerances& tol) {
  return DensityMatrix::from_matrix(matrix_from_json(text), tol);
}

}  // namespace tidsim
