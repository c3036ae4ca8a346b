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
#include "tidsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tidsim/config.hpp"
#include "tidsim/errors.hpp"
#include "tidsim/format.hpp"
#include "tidsim/tomography.hpp"

namespace tidsim {

namespace fs = std::filesystem;

namespace {

void require_bd(const DensityMatrix& rho, EngineKind e) {
  const double r = bd_residual(rho);
  if (r > 1e-9) {
    throw Error(ErrorCode::ConfigError, std::string(to_string(e)) +
                                            " engine needs a Bell-diagonal initial state (off-manifold residual " +
                                            std::to_string(r) + ")");
  }
}

std::size_t nearest_sample(const std::vector<double>& times, double t) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs(times[i] - t) < std::abs(times[best] - t)) best = i;
  }
  return best;
}

std::string sanitize(const std::string& label) {
  std::string out;
  for (char c : label) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
  return out.empty() ? "scenario" : out;
}

}  // namespace

const char* to_string(EngineKind e) noexcept {
  switch (e) {
    case EngineKind::Analytic: return "analytic";
    case EngineKind::MonteCarlo: return "mc";
    case EngineKind::FilterFunction: return "ff";
  }
  return "?";
}

EngineKind engine_from_string(const std::string& s) {
  if (s == "analytic") return EngineKind::Analytic;
  if (s == "mc" || s == "monte_carlo") return EngineKind::MonteCarlo;
  if (s == "ff" || s == "filter_function") return EngineKind::FilterFunction;
  throw Error(ErrorCode::ConfigError, "unknown engine '" + s + "' (analytic, mc, ff)");
}

double plateau_delta(EngineKind e) noexcept { return e == EngineKind::MonteCarlo ? 0.02 : 1e-6; }

std::optional<Transition> detect_transition(const std::vector<TrajectoryPoint>& points, double delta) {
  if (points.empty() || !(points.front().corr.discord > 1e-12)) return std::nullopt;
  const double floor = (1.0 - delta) * points.front().corr.discord;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].corr.discord < floor) return Transition{points[i - 1].t, false};
  }
  return Transition{points.back().t, true};
}

ScenarioResult run_scenario(const Scenario& s) {
  const SimConfig& cfg = s.sim;
  if (cfg.sample_times.empty()) throw Error(ErrorCode::ConfigError, "scenario has no sample times");
  ScenarioResult r;
  r.label = s.label;
  r.engine = s.engine;

  switch (s.engine) {
    case EngineKind::Analytic: {
      require_bd(cfg.initial, s.engine);
      for (const auto& q : cfg.noise.qubit) {
        if (q.kind != NoiseKind::White) {
          throw Error(ErrorCode::ConfigError, "analytic engine supports white dephasing only");
        }
      }
      const DephasingRates rates{cfg.noise.qubit[0].rate, cfg.noise.qubit[1].rate};
      r.trajectory = correlation_trajectory(bd_params_of(cfg.initial), rates, cfg.sample_times);
      for (const auto& p : r.trajectory) r.states.push_back(bd_state(p.c));
      break;
    }
    case EngineKind::FilterFunction: {
      require_bd(cfg.initial, s.engine);
      const BDParams c0 = bd_params_of(cfg.initial);
      const auto flips = cfg.schedule ? flip_times(*cfg.schedule) : std::vector<double>{};
      for (double t : cfg.sample_times) {
        const double chi_f = filter_decay_exponent(flips, cfg.noise.qubit[0], t) +
                             filter_decay_exponent(flips, cfg.noise.qubit[1], t);
        const double f = std::exp(-chi_f);
        const BDParams c{c0.c1 * f, c0.c2 * f, c0.c3};
        r.trajectory.push_back(trajectory_point(t, c));
        r.states.push_back(bd_state(c));
      }
      break;
    }
    case EngineKind::MonteCarlo: {
      const auto ens = ensemble_statistics(cfg);
      r.states = ens.mean;
      for (std::size_t i = 0; i < r.states.size(); ++i) {
        r.trajectory.push_back(trajectory_point(cfg.sample_times[i], bd_params_of(r.states[i])));
      }
      break;
    }
  }

  r.t_bar = detect_transition(r.trajectory, plateau_delta(s.engine));
  r.final_fidelity = fidelity(cfg.initial, r.states.back());

  if (s.tomography_shots > 0) {
    std::vector<double> when = s.checkpoints;
    if (when.empty()) when = {cfg.sample_times.front(), cfg.sample_times.back()};
    for (std::size_t k = 0; k < when.size(); ++k) {
      const std::size_t i = nearest_sample(cfg.sample_times, when[k]);
      const auto tomo = run_tomography(r.states[i], s.tomography_shots, derive_seed(cfg.base_seed ^ 0x7f4a7c15ULL, k));
      r.tomographs.push_back({cfg.sample_times[i], r.states[i], tomo.reconstructed, tomo.fidelity});
    }
  }
  return r;
}

SweepRow summarize(const Scenario& s, const ScenarioResult& r) {
  SweepRow row;
  row.label = s.label;
  row.engine = s.engine;
  row.t_bar = r.t_bar;
  row.final_fidelity = r.final_fidelity;
  for (double c : s.checkpoints) {
    const std::size_t i = nearest_sample(s.sim.sample_times, c);
    row.discord_at.emplace_back(c, r.trajectory[i].corr.discord);
  }
  return row;
}

std::vector<SweepRow> sweep(const std::vector<Scenario>& scenarios, int parallelism) {
  if (scenarios.empty()) throw Error(ErrorCode::ConfigError, "sweep needs at least one scenario");
  std::vector<SweepRow> rows(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        const auto result = run_scenario(scenarios[i]);
        if (!scenarios[i].out_dir.empty()) write_outputs(scenarios[i], result, scenarios[i].out_dir);
        rows[i] = summarize(scenarios[i], result);
      } catch (const std::exception& e) {
        rows[i] = SweepRow{};
        rows[i].label = scenarios[i].label;
        rows[i].engine = scenarios[i].engine;
        rows[i].error = e.what();
      }
    }
  };
  const int workers = std::clamp(parallelism, 1, static_cast<int>(scenarios.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "label,engine,t_bar,t_bar_censored,final_fidelity,discord_checkpoints,error\n";
  for (const auto& r : rows) {
    os << r.label << ',' << to_string(r.engine) << ',';
    if (r.t_bar) os << fmt_double(r.t_bar->t) << ',' << (r.t_bar->censored ? 1 : 0);
    else os << ',';
    os << ',' << (r.error.empty() ? fmt_double(r.final_fidelity) : std::string()) << ',';
    for (std::size_t k = 0; k < r.discord_at.size(); ++k) {
      if (k) os << ';';
      os << fmt_double(r.discord_at[k].first) << '=' << fmt_double(r.discord_at[k].second);
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << ',' << err << '\n';
  }
  return os.str();
}

std::string plot_data_text(const std::vector<TrajectoryPoint>& points,
                           const std::map<std::string, std::string>& metadata) {
  std::ostringstream os;
  for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << '\n';
  os << "# t C D I\n";
  for (const auto& p : points) {
    os << fmt_double(p.t) << ' ' << fmt_double(p.corr.classical) << ' ' << fmt_double(p.corr.discord) << ' '
       << fmt_double(p.corr.total) << '\n';
  }
  return os.str();
}

void emit_plot_data(const std::vector<TrajectoryPoint>& points,
                    const std::map<std::string, std::string>& metadata, const std::string& path) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "emit_plot_data: empty trajectory");
  write_text_file(path, plot_data_text(points, metadata));
}

std::vector<PlotRow> parse_plot_data(const std::string& text) {
  std::vector<PlotRow> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    PlotRow r{};
    if (!(ls >> r.t >> r.classical >> r.discord >> r.total)) {
      throw Error(ErrorCode::ConfigError, "malformed plot data line '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

std::string summary_json(const Scenario& s, const ScenarioResult& r) {
  nlohmann::json summary;
  summary["label"] = s.label;
  summary["engine"] = to_string(s.engine);
  summary["samples"] = r.trajectory.size();
  summary["final_fidelity"] = r.final_fidelity;
  if (r.t_bar) {
    summary["t_bar"] = r.t_bar->t;
    summary["t_bar_censored"] = r.t_bar->censored;
  } else {
    summary["t_bar"] = nullptr;
  }
  if (s.sim.schedule) {
    summary["sequence"] = s.sim.schedule->name;
    summary["cycle_s"] = s.sim.schedule->cycle_duration();
    summary["repetitions"] = s.sim.schedule->repetitions;
  }
  return summary.dump(2) + "\n";
}

void write_outputs(const Scenario& s, const ScenarioResult& r, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory '" + dir + "': " + ec.message());
  const std::string stem = (fs::path(dir) / sanitize(s.label)).string();

  write_text_file(stem + "_trajectory.csv", trajectory_csv(r.trajectory));

  std::map<std::string, std::string> meta;
  meta["label"] = s.label;
  meta["engine"] = to_string(s.engine);
  meta["sequence"] = s.sim.schedule ? s.sim.schedule->name : "none";
  meta["noise"] = s.sim.noise.qubit[0].kind == NoiseKind::White ? "white" : "ornstein_uhlenbeck";
  meta["t_bar"] = r.t_bar ? fmt_double(r.t_bar->t) + (r.t_bar->censored ? " (censored)" : "") : "none";
  emit_plot_data(r.trajectory, meta, stem + ".dat");

  write_text_file(stem + "_summary.json", summary_json(s, r));

  if (!r.tomographs.empty()) {
    nlohmann::json tomo = nlohmann::json::array();
    for (const auto& t : r.tomographs) {
      tomo.push_back({{"t", t.t},
                      {"fidelity", t.fidelity},
                      {"state", nlohmann::json::parse(to_json(t.state))},
                      {"reconstructed", nlohmann::json::parse(to_json(t.reconstructed))}});
    }
    write_text_file(stem + "_tomographs.json", tomo.dump(2) + "\n");
  }
}

std::vector<double> linear_grid(double t_max, int points) {
  if (points < 1 || !(t_max >= 0.0)) throw Error(ErrorCode::ConfigError, "sample grid needs points >= 1 and t_max >= 0");
  std::vector<double> out;
  if (points == 1) return {0.0};
  for (int i = 0; i < points; ++i) out.push_back(t_max * i / (points - 1));
  return out;
}

std::vector<double> cycle_grid(double cycle, int every, double t_max) {
  if (!(cycle > 0.0) || every < 1) throw Error(ErrorCode::ConfigError, "cycle grid needs cycle > 0 and every >= 1");
  std::vector<double> out;
  const double step = cycle * every;
  for (int k = 0; k * step <= t_max * (1.0 + 1e-12); ++k) out.push_back(k * step);
  return out;
}

}  // namespace tidsim
