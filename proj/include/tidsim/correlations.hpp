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

#include <string>
#include <vector>

#include "tidsim/channels.hpp"
#include "tidsim/qstate.hpp"

namespace tidsim {

// All values in bits.
struct CorrelationTriple {
  double classical = 0.0;
  double discord = 0.0;
  double total = 0.0;
  // chi exceeded 1 (unphysical, tomography-noise style input) and was clamped.
  bool chi_clamped = false;
};

double chi(const BDParams& c) noexcept;

// sum_{j=1,2} (1 + (-1)^j x)/2 log2(1 + (-1)^j x), with 0 log 0 = 0 and x
// clamped into [-1, 1].
double binary_correlation_term(double x) noexcept;

double classical_correlation(const BDParams& c) noexcept;

// Mutual information of the BD state, 2 - H(Bell weights).
double total_correlation(const BDParams& c) noexcept;

// Two-term form binary_correlation_term(c1) + binary_correlation_term(c3).
// Equals total_correlation exactly when c2 = -c1 c3, which is the family the
// dephasing flow of (+-1, -+c3, c3) stays in.
double total_correlation_factorized(const BDParams& c) noexcept;

double discord(const BDParams& c) noexcept;

CorrelationTriple correlations(const BDParams& c) noexcept;

// General discord with a projective measurement on qubit 2, maximised over
// a grid_n x grid_n grid of Bloch directions (uniform in cos(theta) over the
// upper hemisphere and in phi) followed by a Nelder-Mead refinement from the
// best grid point. Independent of the BD closed forms.
double discord_bruteforce(const DensityMatrix& rho, int grid_n = 256);

// Quantum mutual information S(A) + S(B) - S(AB) in bits.
double mutual_information(const DensityMatrix& rho);

struct TrajectoryPoint {
  double t = 0.0;
  BDParams c;
  double chi = 0.0;
  CorrelationTriple corr;
};

TrajectoryPoint trajectory_point(double t, const BDParams& c) noexcept;

std::vector<TrajectoryPoint> correlation_trajectory(const BDParams& c0, const DephasingRates& rates,
                                                    const std::vector<double>& times);

// Columns t,C,D,I,chi,c1,c2,c3 with shortest round-trip formatting.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& points);

}  // namespace tidsim
