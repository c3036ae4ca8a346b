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
#include "tidsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "tidsim/errors.hpp"
#include "tidsim/format.hpp"
#include "tidsim/noise.hpp"

namespace tidsim {

bool MeasurementRecord::complete() const {
  return std::all_of(tomography_labels().begin(), tomography_labels().end(), [&](const PauliLabel& l) {
    auto it = entries.find(l);
    return it != entries.end() && it->second.shots > 0 && std::isfinite(it->second.expectation);
  });
}

const std::array<PauliLabel, 15>& tomography_labels() {
  static const std::array<PauliLabel, 15> labels = [] {
    std::array<PauliLabel, 15> out;
    int k = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (a != 0 || b != 0) out[k++] = {static_cast<Pauli>(a), static_cast<Pauli>(b)};
    return out;
  }();
  return labels;
}

MeasurementRecord simulate_measurements(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw Error(ErrorCode::InvalidArgument, "simulate_measurements: shots must be >= 1");
  MeasurementRecord rec;
  const auto& labels = tomography_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double ev = pauli_expectation(rho, labels[i].first, labels[i].second);
    const double p_plus = std::clamp(0.5 * (1.0 + ev), 0.0, 1.0);
    std::mt19937_64 rng(derive_seed(seed, i));
    std::binomial_distribution<std::int64_t> outcomes(shots, p_plus);
    const std::int64_t ups = outcomes(rng);
    rec.entries[labels[i]] = {2.0 * static_cast<double>(ups) / static_cast<double>(shots) - 1.0, shots};
  }
  return rec;
}

LinearEstimate linear_inversion(const MeasurementRecord& m) {
  if (!m.complete()) {
    throw Error(ErrorCode::IncompleteRecord, "measurement record lacks some of the 15 Pauli operators");
  }
  ComplexMatrix4 rho = ComplexMatrix4::Identity();
  for (const auto& label : tomography_labels()) {
    rho += m.entries.at(label).expectation * pauli_pair(label.first, label.second);
  }
  rho /= 4.0;
  LinearEstimate out;
  out.rho = 0.5 * (rho + rho.adjoint());
  out.min_eigenvalue = min_eigenvalue(out.rho);
  out.physical = out.min_eigenvalue >= -1e-9;
  return out;
}

std::array<double, 4> project_to_simplex(const std::array<double, 4>& v) {
  // Sort-based projection: find the largest k with u_k - (sum_{i<=k} u_i - 1)/k > 0.
  std::array<double, 4> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, shift = 0.0;
  for (int k = 0; k < 4; ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / (k + 1);
    if (u[k] - candidate > 0.0) shift = candidate;
  }
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = std::max(v[i] - shift, 0.0);
  return out;
}

DensityMatrix mle_project(const ComplexMatrix4& rho_hat) {
  if (!rho_hat.allFinite()) throw Error(ErrorCode::NumericalFailure, "mle_project: non-finite input");
  const auto e = jacobi_eigh<4>(rho_hat);
  const auto p = project_to_simplex(e.values);
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (int k = 0; k < 4; ++k) out += p[k] * e.vectors.col(k) * e.vectors.col(k).adjoint();
  return DensityMatrix::trusted(0.5 * (out + out.adjoint()));
}

TomographyResult run_tomography(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed) {
  TomographyResult r;
  r.record = simulate_measurements(rho, shots, seed);
  r.linear = linear_inversion(r.record);
  r.reconstructed = mle_project(r.linear.rho);
  r.fidelity = fidelity(rho, r.reconstructed);
  return r;
}

std::string record_to_csv(const MeasurementRecord& m) {
  std::ostringstream os;
  os << "pauli_1,pauli_2,expectation,shots\n";
  for (const auto& label : tomography_labels()) {
    auto it = m.entries.find(label);
    if (it == m.entries.end()) continue;
    os << pauli_char(label.first) << ',' << pauli_char(label.second) << ','
       << fmt_double(it->second.expectation) << ',' << it->second.shots << '\n';
  }
  return os.str();
}

MeasurementRecord record_from_csv(const std::string& text) {
  MeasurementRecord m;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("pauli_1", 0) == 0) continue;
    std::istringstream ls(line);
    std::string p1, p2, ev, shots;
    if (!std::getline(ls, p1, ',') || !std::getline(ls, p2, ',') || !std::getline(ls, ev, ',') ||
        !std::getline(ls, shots, ',') || p1.size() != 1 || p2.size() != 1) {
      throw Error(ErrorCode::ConfigError, "measurement CSV line " + std::to_string(lineno) + " is malformed");
    }
    try {
      m.entries[{pauli_from_char(p1[0]), pauli_from_char(p2[0])}] = {std::stod(ev), std::stoll(shots)};
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigError, "measurement CSV line " + std::to_string(lineno) + " is malformed");
    }
  }
  return m;
}

}  // namespace tidsim
