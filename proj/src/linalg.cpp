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
#include "tidsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tidsim/errors.hpp"

namespace tidsim {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnphysicalParams: return "UnphysicalParams";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::IncompleteKraus: return "IncompleteKraus";
    case ErrorCode::NoTransition: return "NoTransition";
    case ErrorCode::UnknownSequence: return "UnknownSequence";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IncompleteRecord: return "IncompleteRecord";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

template <int N>
HermitianEigen<N> jacobi_eigh(const Eigen::Matrix<Complex, N, N>& input, int max_sweeps) {
  using Mat = Eigen::Matrix<Complex, N, N>;
  Mat a = Mat::Zero();
  for (int i = 0; i < N; ++i) {
    a(i, i) = input(i, i).real();
    for (int j = i + 1; j < N; ++j) {
      a(i, j) = input(i, j);
      a(j, i) = std::conj(input(i, j));
    }
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::NumericalFailure, "jacobi_eigh: non-finite matrix entry");
  }
  Mat v = Mat::Identity();

  const double scale = a.norm();
  const double target = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  int sweep = 0;
  for (;; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off2 += std::norm(a(p, q));
    if (std::sqrt(off2) <= target || off2 == 0.0) break;
    if (sweep == max_sweeps) {
      throw Error(ErrorCode::NumericalFailure, "jacobi_eigh: no convergence after " +
                                                   std::to_string(max_sweeps) + " sweeps");
    }
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const Complex b = a(p, q);
        const double mag = std::abs(b);
        if (mag == 0.0) continue;
        const Complex e = b / mag;
        const Complex ec = std::conj(e);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- A U with U = [[c, s], [-s e*, c e*]] on (p, q).
        for (int k = 0; k < N; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
        }
        // A <- U^dagger A
        for (int k = 0; k < N; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < N; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * ec * vkq;
          v(k, q) = s * vkp + c * ec * vkq;
        }
      }
    }
  }

  std::array<int, N> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen<N> out;
  out.sweeps = sweep;
  for (int k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

template HermitianEigen<2> jacobi_eigh<2>(const Matrix2&, int);
template HermitianEigen<4> jacobi_eigh<4>(const ComplexMatrix4&, int);

ComplexMatrix4 sqrt_psd(const ComplexMatrix4& a) {
  const auto e = jacobi_eigh<4>(a);
  return reassemble<4>(e, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

double eta_bits(double x) noexcept {
  if (x <= 0.0) return 0.0;
  return -x * std::log2(x);
}

double entropy_bits(const ComplexMatrix4& rho) {
  const auto e = jacobi_eigh<4>(rho);
  double s = 0.0;
  for (double x : e.values) s += eta_bits(x);
  return s;
}

double entropy_bits(const Matrix2& rho) {
  const auto e = jacobi_eigh<2>(rho);
  return eta_bits(e.values[0]) + eta_bits(e.values[1]);
}

double max_abs(const ComplexMatrix4& a) noexcept {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

ComplexMatrix4 kron(const Matrix2& a, const Matrix2& b) {
  ComplexMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace tidsim
