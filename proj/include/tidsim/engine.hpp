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
#include <optional>
#include <vector>

#include "tidsim/ddseq.hpp"
#include "tidsim/noise.hpp"
#include "tidsim/qstate.hpp"

namespace tidsim {

// Rotating-frame parameters: H = 2 pi [nu_1 Iz1 + nu_2 Iz2 + J Iz1 Iz2].
struct SpinSystem {
  std::array<double, 2> offset_hz{0.0, 0.0};
  double j_hz = 0.0;
};

struct SimConfig {
  DensityMatrix initial = DensityMatrix::maximally_mixed();
  SpinSystem system;
  NoiseModel noise;
  std::optional<PulseSchedule> schedule;  // pulses hit both qubits at once
  PulseErrorModel error;
  std::vector<double> sample_times;
  int n_trajectories = 1;
  std::uint64_t base_seed = 0;
  double time_step = 1e-5;
  int workers = 0;  // 0: one per hardware thread
};

// Throws ConfigError on: n_trajectories < 1, time_step <= 0, unsorted or
// negative sample times, time_step > tau/10 with a schedule present.
void validate(const SimConfig& cfg);

// One stochastic-unitary trajectory, seeded with derive_seed(base_seed, index).
// Noise is piecewise constant on the time_step grid; each pi pulse applies
// pulse rotations on both qubits (detuned by offset + noise) for the longer
// of the two pulse durations, the shorter pulse idling afterwards. Samples
// that fall inside a finite pulse are taken when it ends.
std::vector<DensityMatrix> simulate_trajectory(const SimConfig& cfg, std::uint64_t traj_index);

struct EnsembleResult {
  std::vector<DensityMatrix> mean;                 // per sample time
  std::vector<std::array<double, 16>> pauli_mean;  // <sigma_a x sigma_b>, index 4a + b
  std::vector<std::array<double, 16>> pauli_stderr;
  int n_trajectories = 0;
};

inline int pauli_index(Pauli a, Pauli b) { return 4 * static_cast<int>(a) + static_cast<int>(b); }

// Trajectories run on cfg.workers threads in blocks of 64; block sums are
// combined in block order, so the result is bit-identical for any worker count.
EnsembleResult ensemble_statistics(const SimConfig& cfg);
std::vector<DensityMatrix> ensemble_average(const SimConfig& cfg);

}  // namespace tidsim
