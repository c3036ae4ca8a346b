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

#include "tidsim/qstate.hpp"

namespace tidsim {

// Independent local dephasing. Each qubit's off-diagonal element decays as
// exp(-gamma_i t); the two-qubit coherences behind c1 and c2 carry both
// factors and decay as exp(-(gamma_h + gamma_c) t) = exp(-2 mean() t).
struct DephasingRates {
  double gamma_h = 0.0;  // qubit 1, 1/s
  double gamma_c = 0.0;  // qubit 2, 1/s

  double mean() const noexcept { return 0.5 * (gamma_h + gamma_c); }

  // gamma_i = 1/T2*_i, so mean() = (T2h + T2c) / (2 T2h T2c).
  static DephasingRates from_t2star(double t2_h, double t2_c);
};

struct KrausPair {
  Matrix2 k0;
  Matrix2 k1;
};

BDParams dephase_bd(const BDParams& c0, const DephasingRates& rates, double t);

// k0 = diag(1, sqrt(1-lambda)), k1 = diag(0, sqrt(lambda)),
// lambda = 1 - exp(-2 gamma t).
KrausPair phase_damp_kraus(double gamma, double t);

double kraus_completeness_error(const KrausPair& k);

// sum_ij (K_i x K_j) rho (K_i x K_j)^dagger. Throws IncompleteKraus when
// either pair misses completeness by more than 1e-10.
DensityMatrix apply_local_channel(const DensityMatrix& rho, const KrausPair& q1, const KrausPair& q2);

// Time at which |c1(t)| reaches |c3| under the coefficient flow with mean
// rate gamma: ln|c1/c3| / (2 gamma). Throws NoTransition if |c1| <= |c3|
// (or c3 == 0, where the crossing never happens) and InvalidArgument for
// gamma <= 0.
double transition_time(const BDParams& c0, double gamma);

}  // namespace tidsim
