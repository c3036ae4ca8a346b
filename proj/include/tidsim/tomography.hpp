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

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "tidsim/qstate.hpp"

namespace tidsim {

using PauliLabel = std::pair<Pauli, Pauli>;

struct PauliEstimate {
  double expectation = 0.0;
  std::int64_t shots = 0;
};

// Estimates for the 15 non-identity two-qubit Pauli operators.
struct MeasurementRecord {
  std::map<PauliLabel, PauliEstimate> entries;

  bool complete() const;
};

// The 15 labels in the order IX, IY, IZ, XI, XX, ..., ZZ.
const std::array<PauliLabel, 15>& tomography_labels();

// Each operator gets its own stream derive_seed(seed, operator index); the
// estimate is the mean of `shots` +-1 outcomes with P(+1) = (1 + <P>)/2.
MeasurementRecord simulate_measurements(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed);

struct LinearEstimate {
  ComplexMatrix4 rho;
  double min_eigenvalue = 0.0;
  bool physical = true;  // min_eigenvalue >= -1e-9
};

// (II + sum_P m_P P) / 4. Throws IncompleteRecord unless all 15 are present.
LinearEstimate linear_inversion(const MeasurementRecord& m);

// Euclidean projection of a probability-like vector onto the simplex.
std::array<double, 4> project_to_simplex(const std::array<double, 4>& v);

// Frobenius-nearest density matrix: eigendecompose, project the spectrum on
// the probability simplex, reassemble.
DensityMatrix mle_project(const ComplexMatrix4& rho_hat);

struct TomographyResult {
  MeasurementRecord record;
  LinearEstimate linear;
  DensityMatrix reconstructed = DensityMatrix::maximally_mixed();
  double fidelity = 0.0;  // against the measured state
};

TomographyResult run_tomography(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed);

// Columns pauli_1,pauli_2,expectation,shots.
std::string record_to_csv(const MeasurementRecord& m);
MeasurementRecord record_from_csv(const std::string& text);

}  // namespace tidsim
