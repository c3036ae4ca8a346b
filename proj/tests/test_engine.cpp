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
#include <random>

#include "helpers.hpp"
#include "tidsim/channels.hpp"
#include "tidsim/correlations.hpp"
#include "tidsim/engine.hpp"
#include "tidsim/errors.hpp"

using namespace tidsim;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix<Complex, 4, 1> plus_zero() {
  Eigen::Matrix<Complex, 4, 1> psi = Eigen::Matrix<Complex, 4, 1>::Zero();
  psi(0) = psi(2) = 1.0 / std::sqrt(2.0);  // (|00> + |10>)/sqrt2
  return psi;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("noiseless, pulse-free evolution keeps a BD state fixed") {
  SimConfig cfg;
  cfg.initial = bd_state({1, 0.7, -0.7});
  cfg.system.j_hz = 215.0;
  cfg.sample_times = {0.0, 0.01, 0.1};
  const auto out = simulate_trajectory(cfg, 0);
  REQUIRE(out.size() == 3);
  for (const auto& s : out) CHECK(max_abs(s.matrix() - cfg.initial.matrix()) < 1e-12);
}

TEST_CASE("offset rotates qubit-1 coherence by 2 pi nu t") {
  SimConfig cfg;
  cfg.initial = DensityMatrix::pure(plus_zero());
  cfg.system.offset_hz = {100.0, 0.0};
  cfg.sample_times = {2.5e-3};
  const auto rho = simulate_trajectory(cfg, 0).front();
  const Complex coh = rho.partial_trace_keep(0)(0, 1);
  CHECK(std::abs(coh) == doctest::Approx(0.5));
  CHECK(std::abs(std::arg(coh)) == doctest::Approx(kPi / 2));
}

TEST_CASE("ideal XY4S without noise returns the state after every cycle") {
  std::mt19937_64 rng(12);
  SimConfig cfg;
  cfg.initial = test::random_state(rng);
  cfg.system.offset_hz = {37.0, -12.0};
  // Simultaneous pulses leave the ZZ coupling unrefocused, so J stays off.
  cfg.schedule = builtin_sequence("XY4S", 1e-3, 5);
  cfg.time_step = 1e-4;
  for (int k = 0; k <= 5; ++k) cfg.sample_times.push_back(4e-3 * k);
  for (const auto& s : simulate_trajectory(cfg, 0)) CHECK(max_abs(s.matrix() - cfg.initial.matrix()) < 1e-10);
}

TEST_CASE("validation") {
  SimConfig cfg;
  cfg.sample_times = {0.0, 0.1};
  cfg.n_trajectories = 0;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.n_trajectories = 1;
  cfg.schedule = builtin_sequence("XY4S", 1e-4);
  cfg.time_step = 1e-5;
  CHECK_NOTHROW(validate(cfg));
  cfg.time_step = 2e-5;
  try {
    validate(cfg);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
  cfg.schedule.reset();
  cfg.sample_times = {0.1, 0.0};
  CHECK_THROWS_AS(validate(cfg), Error);
}

TEST_CASE("single-trajectory ensemble equals the trajectory") {
  SimConfig cfg;
  cfg.initial = bd_state({1, 0.7, -0.7});
  cfg.noise = NoiseModel::white(2.0, 3.0);
  cfg.time_step = 1e-4;
  cfg.sample_times = {0.0, 0.02, 0.05};
  cfg.base_seed = 5;
  const auto one = simulate_trajectory(cfg, 0);
  const auto ens = ensemble_average(cfg);
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(max_abs(one[i].matrix() - ens[i].matrix()) < 1e-15);
}

TEST_CASE("ensemble output does not depend on the worker count") {
  SimConfig cfg;
  cfg.initial = bd_state({1, 0.7, -0.7});
  cfg.noise = NoiseModel::ou(40.0, 60.0, 5e-3);
  cfg.schedule = builtin_sequence("XY8S", 0.5e-3, 10);
  cfg.error.flip_angle_error = 0.02;
  cfg.error.pulse_duration = {15.1e-6, 26.8e-6};
  cfg.time_step = 5e-5;
  cfg.sample_times = {0.0, 0.01, 0.02, 0.04};
  cfg.n_trajectories = 300;
  cfg.base_seed = 77;
  cfg.workers = 1;
  const auto a = ensemble_statistics(cfg);
  cfg.workers = 3;
  const auto b = ensemble_statistics(cfg);
  for (std::size_t i = 0; i < a.mean.size(); ++i) {
    CHECK(a.mean[i].matrix() == b.mean[i].matrix());
    CHECK(a.pauli_mean[i] == b.pauli_mean[i]);
  }
  for (const auto& m : a.mean) {
    CHECK(max_abs(m.matrix() - m.matrix().adjoint()) < 1e-12);
    CHECK(std::abs(m.matrix().trace() - Complex(1.0, 0.0)) < 1e-10);
    CHECK(min_eigenvalue(m.matrix()) >= -1e-9);
  }
}

TEST_CASE("every trajectory snapshot is a valid state") {
  std::mt19937_64 rng(3);
  SimConfig cfg;
  cfg.initial = test::random_state(rng);
  cfg.noise = NoiseModel::white(5.0, 5.0);
  cfg.schedule = builtin_sequence("KDDXY", 0.2e-3, 20);
  cfg.error.flip_angle_error = 0.05;
  cfg.error.offset_hz = 300.0;
  cfg.error.pulse_duration = {15.1e-6, 26.8e-6};
  cfg.time_step = 2e-5;
  for (int i = 0; i <= 20; ++i) cfg.sample_times.push_back(0.005 * i);
  for (const auto& s : simulate_trajectory(cfg, 4)) {
    CHECK(max_abs(s.matrix() - s.matrix().adjoint()) < 1e-12);
    CHECK(std::abs(s.matrix().trace() - Complex(1.0, 0.0)) < 1e-10);
    CHECK(min_eigenvalue(s.matrix()) >= -1e-9);
  }
}

TEST_CASE("white-noise ensemble reproduces the coefficient flow") {
  const DephasingRates r = DephasingRates::from_t2star(0.41, 0.19);
  SimConfig cfg;
  cfg.initial = bd_state({1, 0.7, -0.7});
  cfg.noise = NoiseModel::white(r.gamma_h, r.gamma_c);
  cfg.time_step = 1e-4;
  cfg.sample_times = {0.0463};
  cfg.n_trajectories = 10000;
  cfg.base_seed = 2024;
  const auto ens = ensemble_statistics(cfg);
  const double c1 = bd_params_of(ens.mean[0]).c1;
  CHECK(std::abs(c1 - 0.70) < 0.02);
  const double expect = std::exp(-2 * r.mean() * 0.0463);
  CHECK(std::abs(c1 - expect) < 3 * ens.pauli_stderr[0][pauli_index(Pauli::X, Pauli::X)]);
  CHECK(bd_params_of(ens.mean[0]).c3 == doctest::Approx(-0.7));
}

TEST_CASE("MC with ideal pulses agrees with the filter-function prediction") {
  struct Case {
    NoiseModel noise;
    const char* seq;
    double tau;
  };
  const double sigma = calibrate_ou_sigma(3.0, 5e-3, 0.05);
  for (const Case& c : {Case{NoiseModel::white(2.4, 5.3), "XY4S", 1e-3},
                        Case{NoiseModel::ou(sigma, sigma, 5e-3), "XY4S", 2e-3},
                        Case{NoiseModel::ou(sigma, sigma, 5e-3), "KDDXY", 1e-3}}) {
    SimConfig cfg;
    cfg.initial = bd_state({1, 0.7, -0.7});
    cfg.noise = c.noise;
    cfg.schedule = builtin_sequence(c.seq, c.tau, 200);
    cfg.time_step = c.tau / 10;
    cfg.sample_times = {0.02, 0.06, 0.1};
    cfg.n_trajectories = 2000;
    cfg.base_seed = 9;
    const auto ens = ensemble_statistics(cfg);
    for (std::size_t i = 0; i < cfg.sample_times.size(); ++i) {
      const double t = cfg.sample_times[i];
      const double chi_f = filter_decay_exponent(&*cfg.schedule, c.noise.qubit[0], t) +
                           filter_decay_exponent(&*cfg.schedule, c.noise.qubit[1], t);
      const double mc = ens.pauli_mean[i][pauli_index(Pauli::X, Pauli::X)];
      const double se = ens.pauli_stderr[i][pauli_index(Pauli::X, Pauli::X)];
      CHECK(std::abs(mc - std::exp(-chi_f)) < 3 * se + 1e-3);
    }
  }
}

TEST_CASE("state stays in the BD subspace under simultaneous ideal pulses") {
  SimConfig cfg;
  cfg.initial = bd_state({1, 0.7, -0.7});
  cfg.noise = NoiseModel::ou(30.0, 50.0, 5e-3);
  cfg.schedule = builtin_sequence("XY16S", 0.5e-3, 20);
  cfg.time_step = 5e-5;
  cfg.sample_times = {0.02, 0.08, 0.16};
  cfg.n_trajectories = 1000;
  const auto ens = ensemble_statistics(cfg);
  for (std::size_t i = 0; i < cfg.sample_times.size(); ++i) {
    for (auto [a, b] : {std::pair{Pauli::X, Pauli::Y}, {Pauli::Y, Pauli::X}, {Pauli::Z, Pauli::I},
                        {Pauli::I, Pauli::Z}, {Pauli::X, Pauli::I}}) {
      const int p = pauli_index(a, b);
      CHECK(std::abs(ens.pauli_mean[i][p]) <= 3 * ens.pauli_stderr[i][p] + 1e-12);
    }
  }
}

TEST_CASE("XY16S extends the plateau under slow OU noise") {
  const BDParams c0{1, 0.7, -0.7};
  const DephasingRates r = DephasingRates::from_t2star(0.41, 0.19);
  const double tbar = transition_time(c0, r.mean());
  const double tau_c = 10e-3, tau = 0.145e-3;
  SimConfig cfg;
  cfg.initial = bd_state(c0);
  cfg.noise.qubit = {QubitNoise::ou(calibrate_ou_sigma(r.gamma_h, tau_c, tbar), tau_c),
                     QubitNoise::ou(calibrate_ou_sigma(r.gamma_c, tau_c, tbar), tau_c)};
  cfg.schedule = builtin_sequence("XY16S", tau, static_cast<int>(std::ceil(2.2 * tbar / (16 * tau))));
  cfg.time_step = tau / 10;
  cfg.sample_times = {0.0, 2.0 * tbar};
  cfg.n_trajectories = 200;
  const auto ens = ensemble_average(cfg);
  const double d0 = correlations(bd_params_of(ens[0])).discord;
  const double d2 = correlations(bd_params_of(ens[1])).discord;
  CHECK(d2 >= 0.98 * d0);

  // Without decoupling the same noise has crossed over by then.
  cfg.schedule.reset();
  const auto free = ensemble_average(cfg);
  CHECK(correlations(bd_params_of(free[1])).discord < 0.98 * d0);
}

}
