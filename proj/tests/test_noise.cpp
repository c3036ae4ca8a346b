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
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "tidsim/errors.hpp"
#include "tidsim/noise.hpp"

using namespace tidsim;

namespace {

double lag_correlation(const std::vector<double>& x, std::size_t lag) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    den += (x[i] - mean) * (x[i] - mean);
    if (i + lag < x.size()) num += (x[i] - mean) * (x[i + lag] - mean);
  }
  return num / den;
}

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("white-noise calibration") {
  CHECK(calibrate_white_noise(0.0, 1e-5) == 0.0);
  CHECK(calibrate_white_noise(3.8511, 1e-5) == doctest::Approx(std::sqrt(7.7022e-5)));
  CHECK_THROWS_AS(calibrate_white_noise(1.0, 0.0), Error);
}

TEST_CASE("white-noise phase ensemble reproduces exp(-gamma t)") {
  const double gamma = 3.8511, dt = 1e-4, t = 0.1;
  const int steps = static_cast<int>(std::lround(t / dt));
  const int n = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    std::mt19937_64 rng(derive_seed(99, k));
    NoiseStream s(QubitNoise::white(gamma), dt, rng);
    double phase = 0.0;
    for (int i = 0; i < steps; ++i) phase += s.cell(i) * dt;
    const double c = std::cos(phase);
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - std::exp(-0.38511)) < 3 * se + 1e-12);
  CHECK(std::abs(mean - 0.680) < 0.02);
}

TEST_CASE("OU path: zero sigma, stationarity, decorrelation") {
  for (double x : ou_path(0.0, 0.01, 1e-3, 0.1, 5)) CHECK(x == 0.0);

  const double sigma = 2.0, tau_c = 1e-3;
  const auto wide = ou_path(sigma, tau_c, 5 * tau_c, 5 * tau_c * 1e5, 7);
  REQUIRE(wide.size() == 100000);
  CHECK(std::abs(lag_correlation(wide, 1)) < 0.05);
  double m2 = 0.0;
  for (double x : wide) m2 += x * x;
  m2 /= wide.size();
  CHECK(std::abs(m2 - sigma * sigma) < 3 * sigma * sigma * std::sqrt(2.0 / wide.size()));

  const auto fine = ou_path(sigma, tau_c, tau_c / 10, tau_c * 1e4, 8);
  CHECK(lag_correlation(fine, 10) == doctest::Approx(std::exp(-1.0)).epsilon(0.1));
  CHECK(lag_correlation(fine, 5) == doctest::Approx(std::exp(-0.5)).epsilon(0.1));
}

TEST_CASE("OU free exponent and calibration") {
  const auto q = QubitNoise::ou(3.0, 0.01);
  const double t = 0.02, x = t / 0.01;
  CHECK(q.free_exponent(t) == doctest::Approx(9.0 * 1e-4 * (x - 1 + std::exp(-x))));
  // Quasi-static and white limits.
  CHECK(q.free_exponent(1e-7) == doctest::Approx(0.5 * 9.0 * 1e-14).epsilon(1e-3));
  CHECK(QubitNoise::ou(3.0, 1e-6).free_exponent(1.0) == doctest::Approx(9.0 * 1e-6).epsilon(1e-5));

  const double sigma = calibrate_ou_sigma(2.4, 0.01, 0.0463);
  CHECK(QubitNoise::ou(sigma, 0.01).free_exponent(0.0463) == doctest::Approx(2.4 * 0.0463));
  CHECK(QubitNoise::white(2.0).spectrum(123.0) == 4.0);
  CHECK(q.spectrum(0.0) == doctest::Approx(2 * 9.0 * 0.01));
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(0, 0) == splitmix64(0x9E3779B97F4A7C15ULL));
  // splitmix64 reference output for state 0.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("noise stream is deterministic and monotone") {
  std::mt19937_64 a(3), b(3);
  NoiseStream sa(QubitNoise::ou(1.0, 0.01), 1e-4, a), sb(QubitNoise::ou(1.0, 0.01), 1e-4, b);
  const double v5 = sa.cell(5);
  CHECK(sa.cell(5) == v5);
  for (int k = 0; k <= 5; ++k) sb.cell(k);
  CHECK(sb.cell(5) == v5);
}

}
