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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tidsim/correlations.hpp"
#include "tidsim/engine.hpp"

namespace tidsim {

enum class EngineKind { Analytic, MonteCarlo, FilterFunction };

const char* to_string(EngineKind e) noexcept;
EngineKind engine_from_string(const std::string& s);  // analytic | mc | ff (long forms too)

struct Scenario {
  std::string label = "scenario";
  EngineKind engine = EngineKind::Analytic;
  SimConfig sim;  // sample_times live here
  std::int64_t tomography_shots = 0;  // 0 disables tomographs
  std::vector<double> checkpoints;    // times for discord read-out and tomographs
  std::string out_dir;                // empty: nothing written
};

struct Tomograph {
  double t = 0.0;
  DensityMatrix state = DensityMatrix::maximally_mixed();
  DensityMatrix reconstructed = DensityMatrix::maximally_mixed();
  double fidelity = 0.0;
};

struct Transition {
  double t = 0.0;
  bool censored = false;  // the plateau lasted through the last sample
};

struct ScenarioResult {
  std::string label;
  EngineKind engine = EngineKind::Analytic;
  std::vector<TrajectoryPoint> trajectory;
  std::vector<DensityMatrix> states;
  std::optional<Transition> t_bar;
  double final_fidelity = 1.0;  // F(initial, state at the last sample)
  std::vector<Tomograph> tomographs;
};

// Plateau tolerance used for transition detection.
double plateau_delta(EngineKind e) noexcept;

// Last sample of the initial run where D(t) >= (1 - delta) D(0), i.e. the
// sample before the plateau criterion first fails. nullopt when D(0) is 0.
std::optional<Transition> detect_transition(const std::vector<TrajectoryPoint>& points, double delta);

// Throws ConfigError when the engine cannot serve the scenario (analytic
// and ff need a Bell-diagonal initial state, analytic needs white noise).
ScenarioResult run_scenario(const Scenario& s);

// label, engine, t_bar, final fidelity and schedule facts.
std::string summary_json(const Scenario& s, const ScenarioResult& r);

// Writes <label>_trajectory.csv, <label>.dat, <label>_summary.json and, with
// tomography enabled, <label>_tomographs.json into dir. Throws IoError.
void write_outputs(const Scenario& s, const ScenarioResult& r, const std::string& dir);

struct SweepRow {
  std::string label;
  EngineKind engine = EngineKind::Analytic;
  std::optional<Transition> t_bar;
  std::vector<std::pair<double, double>> discord_at;  // (checkpoint, D)
  double final_fidelity = 0.0;
  std::string error;  // non-empty when the scenario failed
};

// Rows in input order; a failing scenario yields a row with `error` set.
std::vector<SweepRow> sweep(const std::vector<Scenario>& scenarios, int parallelism = 1);
std::string sweep_csv(const std::vector<SweepRow>& rows);
SweepRow summarize(const Scenario& s, const ScenarioResult& r);

// Gnuplot-ready text: '#' header lines with the metadata, a '#' column line,
// then whitespace-separated rows "t C D I".
std::string plot_data_text(const std::vector<TrajectoryPoint>& points,
                           const std::map<std::string, std::string>& metadata);
void emit_plot_data(const std::vector<TrajectoryPoint>& points,
                    const std::map<std::string, std::string>& metadata, const std::string& path);

struct PlotRow {
  double t, classical, discord, total;
};
std::vector<PlotRow> parse_plot_data(const std::string& text);

// Evenly spaced grid of `points` samples over [0, t_max].
std::vector<double> linear_grid(double t_max, int points);
// Multiples of `every` cycles up to t_max.
std::vector<double> cycle_grid(double cycle, int every, double t_max);

}  // namespace tidsim
