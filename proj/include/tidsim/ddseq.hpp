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
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tidsim/linalg.hpp"
#include "tidsim/noise.hpp"

namespace tidsim {

enum class EventKind { Delay, Pulse };

struct PulseEvent {
  EventKind kind = EventKind::Delay;
  double duration = 0.0;  // s; pulses in nominal schedules are instantaneous
  double phase = 0.0;     // rad in [0, 2pi), pulses only
  double nominal_flip = std::numbers::pi;

  static PulseEvent delay(double seconds);
  static PulseEvent pulse(double phase_rad);
};

struct PulseSchedule {
  std::string name;
  double tau = 0.0;
  std::vector<PulseEvent> events;  // one cycle
  int repetitions = 1;

  int pulses_per_cycle() const noexcept;
  double cycle_duration() const noexcept;  // sum of event durations
  double total_duration() const noexcept { return repetitions * cycle_duration(); }
  // Delay lengths between pulses read the same forwards and backwards.
  bool is_time_symmetric(double tol = 1e-15) const;
};

// Structural equality with tolerance on durations and phases.
bool same_structure(const PulseSchedule& a, const PulseSchedule& b, double tol = 1e-12);

enum class SequenceName { XY4S, XY8S, XY16S, KDDXY };

const char* to_string(SequenceName name) noexcept;
SequenceName sequence_from_string(const std::string& name);  // throws UnknownSequence
const std::vector<SequenceName>& builtin_sequences();
int expected_pulse_count(SequenceName name) noexcept;

// One cycle of the named sequence, tau/2 edge delays and tau between pulses.
PulseSchedule builtin_sequence(SequenceName name, double tau, int repetitions = 1);
PulseSchedule builtin_sequence(const std::string& name, double tau, int repetitions = 1);

struct PulseErrorModel {
  double flip_angle_error = 0.0;              // actual flip = nominal (1 + eps)
  double offset_hz = 0.0;                     // resonance offset during pulses
  std::array<double, 2> pulse_duration{0.0, 0.0};  // per qubit, s

  // Simultaneous pulses: the longer one sets the event length.
  double event_duration() const noexcept;
  // 15.1 us on qubit 1 (1H) and 26.8 us on qubit 2 (13C).
  static PulseErrorModel nmr_chloroform();
};

// Length of one cycle: delays plus, for every pulse, the longer of its own
// duration and err.event_duration().
double schedule_timing(const PulseSchedule& s, const PulseErrorModel& err);

// Single-qubit rotation exp(-i [(flip/t_p)/2 (cos phi sx + sin phi sy)
// + pi detuning_hz sz] t_p). t_p == 0 gives the ideal instantaneous rotation.
Matrix2 rotation_unitary(double phase, double flip, double duration, double detuning_hz);

// Pulse on qubit `qubit` (0 or 1) with nominal flip pi.
Matrix2 pulse_unitary(double phase, const PulseErrorModel& err, int qubit);

// Equality up to a global phase, max-entry metric.
double distance_up_to_phase(const Matrix2& a, const Matrix2& b);

// {"name", "tau_s", "events": [{"kind", "duration_s", "phase_rad"}], "repetitions"}
std::string schedule_to_json(const PulseSchedule& s, int indent = 2);
PulseSchedule schedule_from_json(const std::string& text);

// ---- DSL -----------------------------------------------------------------
//   schedule := "[" item+ "]" ("^" (INT | "N"))? ;
//   item     := delay | pulse ;
//   delay    := "tau" ("/" INT)? | NUMBER unit ;
//   pulse    := "P(" phase ")" ;
//   phase    := "x" | "y" | "-x" | "-y" | NUMBER "deg" | NUMBER "rad" ;
//   unit     := "s" | "ms" | "us" ;
// '#' starts a comment running to the end of the line.
struct DslBindings {
  std::optional<double> tau;        // value of `tau`
  std::optional<int> repetitions;   // value of `N`
  std::string name = "custom";
};

// Throws SyntaxError (with line/column) for malformed text, including unknown
// phase tokens, and Error(SemanticError) for negative delays, an unbound tau
// or N, and non-positive repetition counts.
PulseSchedule parse_dsl(const std::string& text, const DslBindings& bindings);

// Canonical DSL text. Delays that are tau/k print symbolically, phases on the
// x/y axes print as x, y, -x, -y and everything else as radians.
std::string print_dsl(const PulseSchedule& s);

// ---- Toggling frame and filter functions ---------------------------------

// Sign switching times: centres of every pi pulse over all repetitions.
std::vector<double> flip_times(const PulseSchedule& s);

// +1 before the first pulse centre, sign flips at each centre (strictly
// before t). After the schedule ends the last sign persists.
int toggling_function(const PulseSchedule& s, double t);

// Piecewise-constant toggling function on [0, t].
struct TogglingSegments {
  std::vector<double> edges;  // size n + 1, edges.front() == 0, edges.back() == t
  std::vector<int> signs;     // size n
};
TogglingSegments toggling_segments(const std::vector<double>& flips, double t);

// |F(omega, t)|^2 for F = int_0^t f(t') e^{i omega t'} dt'.
double filter_function_sq(const TogglingSegments& seg, double omega);

// chi_f(t) = (1/2pi) int_0^inf S(omega) |F(omega, t)|^2 d omega, the exponent
// of the coherence multiplier exp(-chi_f). Free evolution gives rate * t for
// white noise. Evaluated in closed form from the noise autocorrelation and
// the piecewise-constant toggling function. `s == nullptr` is free evolution.
double filter_decay_exponent(const PulseSchedule* s, const QubitNoise& noise, double t);
double filter_decay_exponent(const std::vector<double>& flips, const QubitNoise& noise, double t);

// Same integral by adaptive Gauss-Kronrod quadrature in frequency, for an
// arbitrary spectrum. Above a cutoff the oscillating |F|^2 is replaced by its
// mean plus the leading oscillatory correction; the cutoff grows until the
// neglected remainder is below a tenth of the requested tolerance.
struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double cutoff = 0.0;
  int evaluations = 0;
};
QuadratureResult filter_decay_exponent_quadrature(const std::vector<double>& flips,
                                                  const std::function<double(double)>& spectrum,
                                                  double t, double rel_tol = 1e-6);
QuadratureResult filter_decay_exponent_quadrature(const std::vector<double>& flips,
                                                  const QubitNoise& noise, double t,
                                                  double rel_tol = 1e-6);

}  // namespace tidsim
