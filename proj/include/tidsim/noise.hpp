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
#include <cstdint>
#include <random>
#include <vector>

namespace tidsim {

enum class NoiseKind { White, OrnsteinUhlenbeck };

// Frequency noise delta(t) on one qubit, in rad/s. The accumulated phase is
// the integral of delta, so a single-qubit coherence decays as
// exp(-Var(phase)/2).
//  White: <delta(t) delta(t')> = 2 rate delta(t - t'), coherence exp(-rate t).
//  OU:    <delta(t) delta(t')> = sigma^2 exp(-|t - t'| / tau_c).
struct QubitNoise {
  NoiseKind kind = NoiseKind::White;
  double rate = 0.0;    // white, 1/s
  double sigma = 0.0;   // OU, rad/s
  double tau_c = 1.0;   // OU, s

  static QubitNoise white(double rate);
  static QubitNoise ou(double sigma, double tau_c);

  // Two-sided power spectral density S(omega).
  double spectrum(double omega) const noexcept;
  // Decay exponent of free evolution up to t (half the phase variance).
  double free_exponent(double t) const noexcept;
  bool silent() const noexcept;
};

struct NoiseModel {
  std::array<QubitNoise, 2> qubit{QubitNoise::white(0.0), QubitNoise::white(0.0)};

  static NoiseModel none() { return {}; }
  static NoiseModel white(double gamma_1, double gamma_2);
  static NoiseModel ou(double sigma_1, double sigma_2, double tau_c);
};

// Per-step standard deviation of the white-noise phase increment,
// sqrt(2 gamma dt), giving ensemble coherence exp(-gamma t).
double calibrate_white_noise(double gamma, double time_step);

// OU sigma whose free-evolution exponent at t_match equals rate * t_match,
// i.e. the OU process produces the same coherence as white dephasing with
// `rate` at that instant.
double calibrate_ou_sigma(double rate, double tau_c, double t_match);

// Stationary Gauss-Markov path with ceil(duration / time_step) samples:
// x_{k+1} = x_k e^{-dt/tau_c} + sigma sqrt(1 - e^{-2 dt/tau_c}) xi_k,
// x_0 ~ N(0, sigma^2).
std::vector<double> ou_path(double sigma, double tau_c, double time_step, double duration,
                            std::uint64_t seed);

// Counter-based stream splitting: stream k of base seed s is seeded with
// splitmix64(s + (k + 1) * 0x9E3779B97F4A7C15). Streams are independent of
// how work is scheduled.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

// Piecewise-constant noise sampled on a uniform grid, generated lazily in
// cell order.
class NoiseStream {
 public:
  NoiseStream(const QubitNoise& noise, double time_step, std::mt19937_64& rng);

  // Value (rad/s) on cell k; cells must be requested in nondecreasing order.
  double cell(std::int64_t k);

 private:
  QubitNoise noise_;
  double dt_;
  std::mt19937_64* rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::int64_t current_ = -1;
  double value_ = 0.0;
  double white_scale_ = 0.0;
  double ou_decay_ = 0.0;
  double ou_kick_ = 0.0;
};

}  // namespace tidsim
