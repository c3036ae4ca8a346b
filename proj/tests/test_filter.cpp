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
#include <numbers>

#include "tidsim/ddseq.hpp"
#include "tidsim/noise.hpp"

using namespace tidsim;

namespace {

// Half the phase variance by a midpoint double sum over the toggling
// function and the OU autocorrelation.
double exponent_double_sum(const PulseSchedule& s, const QubitNoise& q, double t, int n) {
  const double h = t / n;
  std::vector<int> f(n);
  for (int i = 0; i < n; ++i) f[i] = toggling_function(s, (i + 0.5) * h);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum += f[i] * f[j] * std::exp(-std::abs(i - j) * h / q.tau_c);
  return 0.5 * q.sigma * q.sigma * sum * h * h;
}

}  // namespace

TEST_SUITE("filter") {

TEST_CASE("toggling function") {
  PulseSchedule none;
  none.events = {PulseEvent::delay(1e-3)};
  for (double t : {0.0, 0.3e-3, 1e-3}) CHECK(toggling_function(none, t) == 1);

  const auto xy4 = builtin_sequence("XY4S", 1e-3);
  CHECK(toggling_function(xy4, 0.4e-3) == 1);
  CHECK(toggling_function(xy4, 0.5e-3 + 1e-9) == -1);
  CHECK(toggling_function(xy4, 4e-3) == 1);
  const auto flips = flip_times(builtin_sequence("XY4S", 1e-3, 3));
  REQUIRE(flips.size() == 12);
  CHECK(flips[0] == doctest::Approx(0.5e-3));
  CHECK(flips[4] == doctest::Approx(4.5e-3));
}

TEST_CASE("flip times sit at pulse centres") {
  auto s = builtin_sequence("XY4S", 1e-3);
  for (auto& e : s.events)
    if (e.kind == EventKind::Pulse) e.duration = 20e-6;
  const auto f = flip_times(s);
  CHECK(f[0] == doctest::Approx(0.5e-3 + 10e-6));
  CHECK(f[1] == doctest::Approx(1.5e-3 + 30e-6));
}

TEST_CASE("filter function of free evolution") {
  const double t = 0.02;
  const auto seg = toggling_segments({}, t);
  for (double w : {1e-3, 10.0, 333.0, 5000.0}) {
    const double expect = std::pow(2 * std::sin(w * t / 2) / w, 2);
    CHECK(filter_function_sq(seg, w) == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK(filter_function_sq(seg, 0.0) == doctest::Approx(t * t));
  // A balanced echo has no DC response.
  CHECK(filter_function_sq(toggling_segments({0.01}, 0.02), 0.0) == doctest::Approx(0.0));
}

TEST_CASE("white noise anchor and DD invariance") {
  const auto white = QubitNoise::white(3.8511);
  CHECK(filter_decay_exponent(nullptr, white, 0.1) == doctest::Approx(0.38511));
  const auto q = filter_decay_exponent_quadrature({}, white, 0.1);
  CHECK(q.value == doctest::Approx(0.38511).epsilon(1e-6));
  for (SequenceName n : builtin_sequences()) {
    const auto s = builtin_sequence(n, 0.29e-3, 20);
    const double t = s.total_duration();
    CHECK(filter_decay_exponent(&s, white, t) == doctest::Approx(3.8511 * t).epsilon(1e-12));
    const auto qq = filter_decay_exponent_quadrature(flip_times(s), white, t);
    CHECK(std::abs(qq.value - 3.8511 * t) <= 1e-6 * 3.8511 * t);
  }
}

TEST_CASE("OU: exact route matches the closed form, quadrature and a double sum") {
  const auto ou = QubitNoise::ou(20.0, 0.01);
  for (double t : {1e-3, 0.01, 0.05}) {
    CHECK(filter_decay_exponent(nullptr, ou, t) == doctest::Approx(ou.free_exponent(t)).epsilon(1e-12));
    CHECK(filter_decay_exponent_quadrature({}, ou, t).value == doctest::Approx(ou.free_exponent(t)).epsilon(1e-5));
  }
  for (SequenceName n : builtin_sequences()) {
    const auto s = builtin_sequence(n, 0.5e-3, 3);
    const double t = s.total_duration();
    const double exact = filter_decay_exponent(&s, ou, t);
    const auto quad = filter_decay_exponent_quadrature(flip_times(s), ou, t, 1e-7);
    CHECK(quad.value == doctest::Approx(exact).epsilon(1e-5));
    CHECK(quad.evaluations > 0);
  }
  const auto xy4 = builtin_sequence("XY4S", 1e-3);
  const double exact = filter_decay_exponent(&xy4, ou, 4e-3);
  CHECK(exponent_double_sum(xy4, ou, 4e-3, 1600) == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("quadrature on an arbitrary spectrum") {
  // 1/f-like spectrum regularised at 0; compare two tolerances.
  auto spec = [](double w) { return 50.0 / (1.0 + std::abs(w) / 10.0); };
  const auto flips = flip_times(builtin_sequence("XY8S", 0.2e-3, 5));
  const double t = 8 * 0.2e-3 * 5;
  const auto a = filter_decay_exponent_quadrature(flips, spec, t, 1e-5);
  const auto b = filter_decay_exponent_quadrature(flips, spec, t, 1e-8);
  CHECK(a.value > 0.0);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-4));
}

TEST_CASE("slow OU noise is suppressed by XY16") {
  const double tau = 0.145e-3, tau_c = 10e-3, t = 0.1;
  const auto ou = QubitNoise::ou(calibrate_ou_sigma(2.5, tau_c, 0.0463), tau_c);
  const auto s = builtin_sequence("XY16S", tau, static_cast<int>(std::ceil(t / (16 * tau))));
  const double ratio = filter_decay_exponent(&s, ou, t) / filter_decay_exponent(nullptr, ou, t);
  CHECK(ratio < 0.25);
  const double quad = filter_decay_exponent_quadrature(flip_times(s), ou, t).value;
  CHECK(quad / filter_decay_exponent(nullptr, ou, t) < 0.25);
}

TEST_CASE("exponent is non-negative; free decay is non-decreasing") {
  const auto ou = QubitNoise::ou(30.0, 2e-3);
  const auto s = builtin_sequence("KDDXY", 0.1e-3, 10);
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = s.total_duration() * i / 400;
    // Refocusing can lower the accumulated variance inside a cycle, so only
    // the unpulsed exponent is monotone.
    CHECK(filter_decay_exponent(&s, ou, t) >= 0.0);
    const double x = filter_decay_exponent(nullptr, ou, t);
    CHECK(x >= prev - 1e-15);
    prev = x;
  }
  for (int r = 1; r <= s.repetitions; ++r) {
    const double t = r * s.cycle_duration();
    CHECK(filter_decay_exponent(&s, ou, t) <= filter_decay_exponent(nullptr, ou, t));
  }
}

}
