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
#include "tidsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "tidsim/errors.hpp"

namespace tidsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kBlock = 64;

double smallest_delay(const PulseSchedule& s) {
  if (s.tau > 0.0) return s.tau;
  double best = 0.0;
  for (const auto& e : s.events) {
    if (e.kind == EventKind::Delay && e.duration > 0.0 && (best == 0.0 || e.duration < best)) best = e.duration;
  }
  return best;
}

class Trajectory {
 public:
  Trajectory(const SimConfig& cfg, std::uint64_t index)
      : cfg_(cfg),
        rng_(derive_seed(cfg.base_seed, index)),
        noise_{NoiseStream(cfg.noise.qubit[0], cfg.time_step, rng_),
               NoiseStream(cfg.noise.qubit[1], cfg.time_step, rng_)},
        rho_(cfg.initial.matrix()) {
    out_.reserve(cfg.sample_times.size());
  }

  std::vector<DensityMatrix> run() {
    const double horizon = cfg_.sample_times.empty() ? 0.0 : cfg_.sample_times.back();
    if (cfg_.schedule) {
      const auto& s = *cfg_.schedule;
      for (int r = 0; r < s.repetitions && t_ < horizon; ++r) {
        for (const auto& e : s.events) {
          if (t_ >= horizon && next_ >= cfg_.sample_times.size()) break;
          if (e.kind == EventKind::Delay) {
            evolve_free(t_ + e.duration);
          } else {
            pulse(e);
          }
        }
      }
    }
    evolve_free(horizon);
    return std::move(out_);
  }

 private:
  const SimConfig& cfg_;
  std::mt19937_64 rng_;
  std::array<NoiseStream, 2> noise_;
  ComplexMatrix4 rho_;
  double t_ = 0.0;
  // Pending diagonal evolution: phases of qubit 1, qubit 2 and the J term.
  double phase1_ = 0.0, phase2_ = 0.0, phase_j_ = 0.0;
  std::size_t next_ = 0;
  std::vector<DensityMatrix> out_;

  std::int64_t cell_at(double t) const {
    return static_cast<std::int64_t>(std::floor(t / cfg_.time_step * (1.0 + 1e-12) + 1e-9));
  }

  void flush() {
    if (phase1_ == 0.0 && phase2_ == 0.0 && phase_j_ == 0.0) return;
    // |ab>, Iz eigenvalue +1/2 for 0 and -1/2 for 1.
    double theta[4];
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double ma = a == 0 ? 0.5 : -0.5;
        const double mb = b == 0 ? 0.5 : -0.5;
        theta[2 * a + b] = phase1_ * ma + phase2_ * mb + phase_j_ * ma * mb;
      }
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) rho_(i, j) *= std::polar(1.0, -(theta[i] - theta[j]));
      }
    }
    phase1_ = phase2_ = phase_j_ = 0.0;
  }

  void emit_due() {
    while (next_ < cfg_.sample_times.size() && cfg_.sample_times[next_] <= t_ * (1.0 + 1e-14) + 1e-15) {
      flush();
      const ComplexMatrix4 h = 0.5 * (rho_ + rho_.adjoint());
      out_.push_back(DensityMatrix::trusted(h));
      ++next_;
    }
  }

  void evolve_free(double t_end) {
    emit_due();
    while (t_ < t_end) {
      const std::int64_t k = cell_at(t_);
      double stop = std::min(t_end, (k + 1) * cfg_.time_step);
      if (next_ < cfg_.sample_times.size()) stop = std::min(stop, cfg_.sample_times[next_]);
      if (stop <= t_) stop = std::min(t_end, (k + 1) * cfg_.time_step);
      const double h = stop - t_;
      phase1_ += (kTwoPi * cfg_.system.offset_hz[0] + noise_[0].cell(k)) * h;
      phase2_ += (kTwoPi * cfg_.system.offset_hz[1] + noise_[1].cell(k)) * h;
      phase_j_ += kTwoPi * cfg_.system.j_hz * h;
      t_ = stop;
      emit_due();
    }
  }

  void pulse(const PulseEvent& e) {
    emit_due();
    flush();
    const auto& err = cfg_.error;
    const double length = std::max(e.duration, err.event_duration());
    const std::int64_t k = cell_at(t_);
    const double flip = e.nominal_flip * (1.0 + err.flip_angle_error);
    Matrix2 u[2];
    for (int q = 0; q < 2; ++q) {
      const double nu = cfg_.system.offset_hz[q] + noise_[q].cell(k) / kTwoPi;
      const double tp = std::min(err.pulse_duration[q], length);
      u[q] = rotation_unitary(e.phase, flip, tp, nu + err.offset_hz);
      const double idle = length - tp;
      if (idle > 0.0) u[q] = rotation_unitary(0.0, 0.0, idle, nu) * u[q];
    }
    const ComplexMatrix4 big = kron(u[0], u[1]);
    rho_ = big * rho_ * big.adjoint();
    phase_j_ += kTwoPi * cfg_.system.j_hz * length;
    t_ += length;
    emit_due();
  }
};

struct BlockSums {
  std::vector<ComplexMatrix4> rho;
  std::vector<std::array<double, 16>> sum, sum_sq;
};

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.n_trajectories < 1) throw Error(ErrorCode::ConfigError, "n_trajectories must be >= 1");
  if (!(cfg.time_step > 0.0)) throw Error(ErrorCode::ConfigError, "time_step must be > 0");
  if (!std::is_sorted(cfg.sample_times.begin(), cfg.sample_times.end())) {
    throw Error(ErrorCode::ConfigError, "sample_times must be ascending");
  }
  if (!cfg.sample_times.empty() && cfg.sample_times.front() < 0.0) {
    throw Error(ErrorCode::ConfigError, "sample_times must be >= 0");
  }
  if (cfg.schedule) {
    const double tau = smallest_delay(*cfg.schedule);
    if (tau > 0.0 && cfg.time_step > tau / 10.0 * (1.0 + 1e-12)) {
      throw Error(ErrorCode::ConfigError, "time_step " + std::to_string(cfg.time_step) +
                                              " exceeds tau/10 = " + std::to_string(tau / 10.0));
    }
  }
}

std::vector<DensityMatrix> simulate_trajectory(const SimConfig& cfg, std::uint64_t traj_index) {
  validate(cfg);
  return Trajectory(cfg, traj_index).run();
}

EnsembleResult ensemble_statistics(const SimConfig& cfg) {
  validate(cfg);
  const std::size_t n_samples = cfg.sample_times.size();
  const int n = cfg.n_trajectories;
  const int n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<BlockSums> blocks(n_blocks);

  std::array<ComplexMatrix4, 16> paulis;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) paulis[4 * a + b] = pauli_pair(static_cast<Pauli>(a), static_cast<Pauli>(b));

  std::atomic<int> next_block{0};
  auto work = [&] {
    for (int b = next_block++; b < n_blocks; b = next_block++) {
      BlockSums& s = blocks[b];
      s.rho.assign(n_samples, ComplexMatrix4::Zero());
      s.sum.assign(n_samples, {});
      s.sum_sq.assign(n_samples, {});
      for (int tr = b * kBlock; tr < std::min(n, (b + 1) * kBlock); ++tr) {
        const auto states = Trajectory(cfg, static_cast<std::uint64_t>(tr)).run();
        for (std::size_t i = 0; i < n_samples; ++i) {
          s.rho[i] += states[i].matrix();
          for (int p = 0; p < 16; ++p) {
            const double v = (states[i].matrix() * paulis[p]).trace().real();
            s.sum[i][p] += v;
            s.sum_sq[i][p] += v * v;
          }
        }
      }
    }
  };
  int workers = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n_blocks);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  EnsembleResult out;
  out.n_trajectories = n;
  for (std::size_t i = 0; i < n_samples; ++i) {
    ComplexMatrix4 rho = ComplexMatrix4::Zero();
    std::array<double, 16> sum{}, sum_sq{};
    for (const auto& blk : blocks) {
      rho += blk.rho[i];
      for (int p = 0; p < 16; ++p) {
        sum[p] += blk.sum[i][p];
        sum_sq[p] += blk.sum_sq[i][p];
      }
    }
    rho /= static_cast<double>(n);
    out.mean.push_back(DensityMatrix::trusted(0.5 * (rho + rho.adjoint())));
    std::array<double, 16> mean{}, se{};
    for (int p = 0; p < 16; ++p) {
      mean[p] = sum[p] / n;
      if (n > 1) {
        const double var = std::max(0.0, (sum_sq[p] - n * mean[p] * mean[p]) / (n - 1));
        se[p] = std::sqrt(var / n);
      }
    }
    out.pauli_mean.push_back(mean);
    out.pauli_stderr.push_back(se);
  }
  return out;
}

std::vector<DensityMatrix> ensemble_average(const SimConfig& cfg) { return ensemble_statistics(cfg).mean; }

}  // namespace tidsim
