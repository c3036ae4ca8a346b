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
#include "tidsim/channels.hpp"

#include <cmath>

#include "tidsim/errors.hpp"

namespace tidsim {

DephasingRates DephasingRates::from_t2star(double t2_h, double t2_c) {
  if (!(t2_h > 0.0) || !(t2_c > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "T2* values must be positive");
  }
  return {1.0 / t2_h, 1.0 / t2_c};
}

BDParams dephase_bd(const BDParams& c0, const DephasingRates& rates, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "dephase_bd: t must be >= 0");
  const double f = std::exp(-(rates.gamma_h + rates.gamma_c) * t);
  return {c0.c1 * f, c0.c2 * f, c0.c3};
}

KrausPair phase_damp_kraus(double gamma, double t) {
  if (!(gamma >= 0.0) || !(t >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "phase_damp_kraus: gamma and t must be >= 0");
  }
  const double keep = std::exp(-2.0 * gamma * t);  // 1 - lambda
  KrausPair k;
  k.k0 << 1.0, 0.0, 0.0, std::sqrt(keep);
  k.k1 << 0.0, 0.0, 0.0, std::sqrt(1.0 - keep);
  return k;
}

double kraus_completeness_error(const KrausPair& k) {
  const Matrix2 sum = k.k0.adjoint() * k.k0 + k.k1.adjoint() * k.k1;
  return (sum - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, const KrausPair& q1, const KrausPair& q2) {
  for (const KrausPair* k : {&q1, &q2}) {
    const double err = kraus_completeness_error(*k);
    if (err > 1e-10) {
      throw Error(ErrorCode::IncompleteKraus,
                  "Kraus pair violates completeness by " + std::to_string(err));
    }
  }
  const Matrix2* a[2] = {&q1.k0, &q1.k1};
  const Matrix2* b[2] = {&q2.k0, &q2.k1};
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (const Matrix2* ka : a) {
    for (const Matrix2* kb : b) {
      const ComplexMatrix4 k = kron(*ka, *kb);
      out += k * rho.matrix() * k.adjoint();
    }
  }
  return DensityMatrix::trusted(0.5 * (out + out.adjoint()));
}

double transition_time(const BDParams& c0, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "transition_time: gamma must be > 0");
  const double a1 = std::abs(c0.c1);
  const double a3 = std::abs(c0.c3);
  if (a3 == 0.0 || a1 <= a3) {
    throw Error(ErrorCode::NoTransition,
                "no classical-to-quantum transition: need |c1| > |c3| > 0 (c1=" +
                    std::to_string(c0.c1) + ", c3=" + std::to_string(c0.c3) + ")");
  }
  return std::log(a1 / a3) / (2.0 * gamma);
}

}  // namespace tidsim
