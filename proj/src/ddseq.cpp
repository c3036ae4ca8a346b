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
#include "tidsim/ddseq.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

#include "tidsim/errors.hpp"

namespace tidsim {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double phi) {
  double w = std::fmod(phi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

// Phases of one cycle, in order.
std::vector<double> sequence_phases(SequenceName name) {
  const double x = 0.0, y = kPi / 2.0, mx = kPi, my = 3.0 * kPi / 2.0;
  switch (name) {
    case SequenceName::XY4S:
      return {x, y, x, y};
    case SequenceName::XY8S:
      return {x, y, x, y, y, x, y, x};
    case SequenceName::XY16S:
      return {x, y, x, y, y, x, y, x, mx, my, mx, my, my, mx, my, mx};
    case SequenceName::KDDXY: {
      std::vector<double> out;
      auto kdd = [&](double phi) {
        for (double p : {kPi / 6.0 + phi, phi, kPi / 2.0 + phi, phi, kPi / 6.0 + phi}) {
          out.push_back(wrap_phase(p));
        }
      };
      for (int rep = 0; rep < 2; ++rep) {
        kdd(0.0);
        kdd(kPi / 2.0);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

PulseEvent PulseEvent::delay(double seconds) {
  PulseEvent e;
  e.kind = EventKind::Delay;
  e.duration = seconds;
  return e;
}

PulseEvent PulseEvent::pulse(double phase_rad) {
  PulseEvent e;
  e.kind = EventKind::Pulse;
  e.phase = wrap_phase(phase_rad);
  return e;
}

int PulseSchedule::pulses_per_cycle() const noexcept {
  return static_cast<int>(std::count_if(events.begin(), events.end(),
                                        [](const PulseEvent& e) { return e.kind == EventKind::Pulse; }));
}

double PulseSchedule::cycle_duration() const noexcept {
  double total = 0.0;
  for (const auto& e : events) total += e.duration;
  return total;
}

bool PulseSchedule::is_time_symmetric(double tol) const {
  // Free time between consecutive pulses, including both edges.
  std::vector<double> gaps{0.0};
  for (const auto& e : events) {
    if (e.kind == EventKind::Pulse) {
      gaps.push_back(0.0);
    } else {
      gaps.back() += e.duration;
    }
  }
  for (std::size_t i = 0, j = gaps.size() - 1; i < j; ++i, --j) {
    if (std::abs(gaps[i] - gaps[j]) > tol * std::max(1.0, std::abs(gaps[i]))) return false;
  }
  return true;
}

bool same_structure(const PulseSchedule& a, const PulseSchedule& b, double tol) {
  if (a.repetitions != b.repetitions || a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const auto& x = a.events[i];
    const auto& y = b.events[i];
    if (x.kind != y.kind) return false;
    if (std::abs(x.duration - y.duration) > tol) return false;
    if (x.kind == EventKind::Pulse) {
      const double d = std::abs(wrap_phase(x.phase - y.phase + kPi) - kPi);
      if (d > tol || std::abs(x.nominal_flip - y.nominal_flip) > tol) return false;
    }
  }
  return true;
}

const char* to_string(SequenceName name) noexcept {
  switch (name) {
    case SequenceName::XY4S: return "XY4S";
    case SequenceName::XY8S: return "XY8S";
    case SequenceName::XY16S: return "XY16S";
    case SequenceName::KDDXY: return "KDDXY";
  }
  return "?";
}

SequenceName sequence_from_string(const std::string& name) {
  std::string key;
  for (char ch : name) {
    if (std::isalnum(static_cast<unsigned char>(ch))) key += static_cast<char>(std::toupper(ch));
  }
  if (key == "XY4S" || key == "XY4") return SequenceName::XY4S;
  if (key == "XY8S" || key == "XY8") return SequenceName::XY8S;
  if (key == "XY16S" || key == "XY16") return SequenceName::XY16S;
  if (key == "KDDXY" || key == "KDD") return SequenceName::KDDXY;
  throw Error(ErrorCode::UnknownSequence, "unknown sequence '" + name + "'");
}

const std::vector<SequenceName>& builtin_sequences() {
  static const std::vector<SequenceName> all = {SequenceName::XY4S, SequenceName::XY8S,
                                                SequenceName::XY16S, SequenceName::KDDXY};
  return all;
}

int expected_pulse_count(SequenceName name) noexcept {
  switch (name) {
    case SequenceName::XY4S: return 4;
    case SequenceName::XY8S: return 8;
    case SequenceName::XY16S: return 16;
    case SequenceName::KDDXY: return 20;
  }
  return 0;
}

PulseSchedule builtin_sequence(SequenceName name, double tau, int repetitions) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "builtin_sequence: tau must be > 0");
  if (repetitions < 1) throw Error(ErrorCode::InvalidArgument, "builtin_sequence: repetitions must be >= 1");
  PulseSchedule s;
  s.name = to_string(name);
  s.tau = tau;
  s.repetitions = repetitions;
  const auto phases = sequence_phases(name);
  s.events.push_back(PulseEvent::delay(tau / 2.0));
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (i > 0) s.events.push_back(PulseEvent::delay(tau));
    s.events.push_back(PulseEvent::pulse(phases[i]));
  }
  s.events.push_back(PulseEvent::delay(tau / 2.0));
  return s;
}

PulseSchedule builtin_sequence(const std::string& name, double tau, int repetitions) {
  return builtin_sequence(sequence_from_string(name), tau, repetitions);
}

double PulseErrorModel::event_duration() const noexcept {
  return std::max(pulse_duration[0], pulse_duration[1]);
}

PulseErrorModel PulseErrorModel::nmr_chloroform() {
  PulseErrorModel m;
  m.pulse_duration = {15.1e-6, 26.8e-6};
  return m;
}

double schedule_timing(const PulseSchedule& s, const PulseErrorModel& err) {
  double total = 0.0;
  for (const auto& e : s.events) {
    total += e.kind == EventKind::Pulse ? std::max(e.duration, err.event_duration()) : e.duration;
  }
  return total;
}

Matrix2 rotation_unitary(double phase, double flip, double duration, double detuning_hz) {
  const double ax = 0.5 * flip * std::cos(phase);
  const double ay = 0.5 * flip * std::sin(phase);
  const double az = kPi * detuning_hz * duration;
  const double norm = std::sqrt(ax * ax + ay * ay + az * az);
  Matrix2 u = Matrix2::Identity();
  if (norm == 0.0) return u;
  const double c = std::cos(norm);
  const double s = std::sin(norm) / norm;
  const Complex i(0.0, 1.0);
  // cos|a| I - i sin|a| (a/|a|) . sigma
  u(0, 0) = c - i * s * az;
  u(1, 1) = c + i * s * az;
  u(0, 1) = -i * s * Complex(ax, -ay);
  u(1, 0) = -i * s * Complex(ax, ay);
  return u;
}

Matrix2 pulse_unitary(double phase, const PulseErrorModel& err, int qubit) {
  if (qubit != 0 && qubit != 1) throw Error(ErrorCode::InvalidArgument, "pulse_unitary: qubit must be 0 or 1");
  return rotation_unitary(phase, kPi * (1.0 + err.flip_angle_error), err.pulse_duration[qubit],
                          err.offset_hz);
}

double distance_up_to_phase(const Matrix2& a, const Matrix2& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

std::string schedule_to_json(const PulseSchedule& s, int indent) {
  nlohmann::json j;
  j["name"] = s.name;
  j["tau_s"] = s.tau;
  j["repetitions"] = s.repetitions;
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : s.events) {
    nlohmann::json ev;
    ev["kind"] = e.kind == EventKind::Pulse ? "pulse" : "delay";
    ev["duration_s"] = e.duration;
    if (e.kind == EventKind::Pulse) ev["phase_rad"] = e.phase;
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);
  return j.dump(indent);
}

PulseSchedule schedule_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PulseSchedule s;
    s.name = j.value("name", std::string("custom"));
    s.tau = j.value("tau_s", 0.0);
    s.repetitions = j.value("repetitions", 1);
    if (s.repetitions < 1) throw Error(ErrorCode::SemanticError, "schedule repetitions must be >= 1");
    for (const auto& ev : j.at("events")) {
      const std::string kind = ev.at("kind").get<std::string>();
      const double d = ev.value("duration_s", 0.0);
      if (d < 0.0) throw Error(ErrorCode::SemanticError, "negative event duration in schedule JSON");
      if (kind == "delay") {
        s.events.push_back(PulseEvent::delay(d));
      } else if (kind == "pulse") {
        PulseEvent p = PulseEvent::pulse(ev.value("phase_rad", 0.0));
        p.duration = d;
        s.events.push_back(p);
      } else {
        throw Error(ErrorCode::SemanticError, "unknown event kind '" + kind + "'");
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("schedule JSON: ") + e.what());
  }
}

}  // namespace tidsim
