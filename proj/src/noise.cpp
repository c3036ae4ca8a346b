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
#include "tidsim/noise.hpp"

#include <cmath>

#include "tidsim/errors.hpp"

namespace tidsim {

QubitNoise QubitNoise::white(double rate) {
  if (!(rate >= 0.0)) throw Error(ErrorCode::InvalidArgument, "white noise rate must be >= 0");
  QubitNoise n;
  n.kind = NoiseKind::White;
  n.rate = rate;
  return n;
}

QubitNoise QubitNoise::ou(double sigma, double tau_c) {
  if (!(sigma >= 0.0) || !(tau_c > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "OU noise needs sigma >= 0 and tau_c > 0");
  }
  QubitNoise n;
  n.kind = NoiseKind::OrnsteinUhlenbeck;
  n.sigma = sigma;
  n.tau_c = tau_c;
  return n;
}

double QubitNoise::spectrum(double omega) const noexcept {
  if (kind == NoiseKind::White) return 2.0 * rate;
  const double wt = omega * tau_c;
  return 2.0 * sigma * sigma * tau_c / (1.0 + wt * wt);
}

double QubitNoise::free_exponent(double t) const noexcept {
  if (kind == NoiseKind::White) return rate * t;
  const double x = t / tau_c;
  // sigma^2 tau_c^2 (x - 1 + e^{-x}); series for small x avoids cancellation.
  const double g = x < 1e-4 ? x * x * (0.5 - x / 6.0 + x * x / 24.0) : x - 1.0 + std::exp(-x);
  return sigma * sigma * tau_c * tau_c * g;
}

bool QubitNoise::silent() const noexcept {
  return kind == NoiseKind::White ? rate == 0.0 : sigma == 0.0;
}

NoiseModel NoiseModel::white(double gamma_1, double gamma_2) {
  return {{QubitNoise::white(gamma_1), QubitNoise::white(gamma_2)}};
}

NoiseModel NoiseModel::ou(double sigma_1, double sigma_2, double tau_c) {
  return {{QubitNoise::ou(sigma_1, tau_c), QubitNoise::ou(sigma_2, tau_c)}};
}

double calibrate_white_noise(double gamma, double time_step) {
  if (!(gamma >= 0.0) || !(time_step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "calibrate_white_noise: gamma >= 0 and time_step > 0");
  }
  return std::sqrt(2.0 * gamma * time_step);
}

double calibrate_ou_sigma(double rate, double tau_c, double t_match) {
  if (!(rate >= 0.0) || !(tau_c > 0.0) || !(t_match > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "calibrate_ou_sigma: need rate >= 0, tau_c > 0, t_match > 0");
  }
  const double unit = QubitNoise::ou(1.0, tau_c).free_exponent(t_match);
  return std::sqrt(rate * t_match / unit);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return splitmix64(base + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

std::vector<double> ou_path(double sigma, double tau_c, double time_step, double duration,
                            std::uint64_t seed) {
  if (!(sigma >= 0.0) || !(tau_c > 0.0) || !(time_step > 0.0) || !(duration > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ou_path: parameters must be positive");
  }
  std::mt19937_64 rng(seed);
  NoiseStream stream(QubitNoise::ou(sigma, tau_c), time_step, rng);
  const auto n = static_cast<std::int64_t>(std::ceil(duration / time_step - 1e-12));
  std::vector<double> path;
  path.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) path.push_back(stream.cell(k));
  return path;
}

NoiseStream::NoiseStream(const QubitNoise& noise, double time_step, std::mt19937_64& rng)
    : noise_(noise), dt_(time_step), rng_(&rng) {
  if (noise_.kind == NoiseKind::White) {
    white_scale_ = calibrate_white_noise(noise_.rate, dt_) / dt_;
  } else {
    ou_decay_ = std::exp(-dt_ / noise_.tau_c);
    ou_kick_ = noise_.sigma * std::sqrt(1.0 - ou_decay_ * ou_decay_);
  }
}

double NoiseStream::cell(std::int64_t k) {
  if (noise_.silent()) return 0.0;
  while (current_ < k) {
    ++current_;
    const double xi = normal_(*rng_);
    if (noise_.kind == NoiseKind::White) {
      value_ = white_scale_ * xi;
    } else if (current_ == 0) {
      value_ = noise_.sigma * xi;
    } else {
      value_ = value_ * ou_decay_ + ou_kick_ * xi;
    }
  }
  return value_;
}

}  // namespace tidsim
