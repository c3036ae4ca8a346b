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
#include "tidsim/tidsim.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "tidsim/config.hpp"
#include "tidsim/correlations.hpp"
#include "tidsim/ddseq.hpp"
#include "tidsim/errors.hpp"
#include "tidsim/harness.hpp"
#include "tidsim/tomography.hpp"

struct tidsim_state {
  tidsim::DensityMatrix rho;
};

struct tidsim_schedule {
  tidsim::PulseSchedule schedule;
};

struct tidsim_result {
  tidsim::Scenario scenario;
  tidsim::ScenarioResult result;
};

namespace {

thread_local std::string g_last_error;

tidsim_status status_of(tidsim::ErrorCode c) {
  using tidsim::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return TIDSIM_ERR_INVALID_ARGUMENT;
    case ErrorCode::UnphysicalParams: return TIDSIM_ERR_UNPHYSICAL_PARAMS;
    case ErrorCode::NumericalFailure: return TIDSIM_ERR_NUMERICAL_FAILURE;
    case ErrorCode::IncompleteKraus: return TIDSIM_ERR_INCOMPLETE_KRAUS;
    case ErrorCode::NoTransition: return TIDSIM_ERR_NO_TRANSITION;
    case ErrorCode::UnknownSequence: return TIDSIM_ERR_UNKNOWN_SEQUENCE;
    case ErrorCode::SyntaxError: return TIDSIM_ERR_SYNTAX;
    case ErrorCode::SemanticError: return TIDSIM_ERR_SEMANTIC;
    case ErrorCode::ConfigError: return TIDSIM_ERR_CONFIG;
    case ErrorCode::IncompleteRecord: return TIDSIM_ERR_INCOMPLETE_RECORD;
    case ErrorCode::IoError: return TIDSIM_ERR_IO;
  }
  return TIDSIM_ERR_INTERNAL;
}

tidsim_status fail(tidsim_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
tidsim_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return TIDSIM_OK;
  } catch (const tidsim::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TIDSIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TIDSIM_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define TIDSIM_REQUIRE(cond, msg) \
  if (!(cond)) return fail(TIDSIM_ERR_INVALID_ARGUMENT, msg)

tidsim::Overrides overrides_of(const tidsim_options* o) {
  tidsim::Overrides ov;
  if (!o) return ov;
  if (o->out_dir) ov.out_dir = o->out_dir;
  if (o->engine) ov.engine = o->engine;
  if (o->sequence) ov.sequence = o->sequence;
  if (o->has_seed) ov.seed = o->seed;
  if (o->trajectories > 0) ov.trajectories = o->trajectories;
  if (o->tau > 0.0) ov.tau = o->tau;
  return ov;
}

std::string base_dir_of(const char* path) {
  const auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? std::string(".") : parent.string();
}

tidsim::QubitNoise qubit_noise(const tidsim_noise& n) {
  switch (n.kind) {
    case TIDSIM_NOISE_WHITE: return tidsim::QubitNoise::white(n.rate);
    case TIDSIM_NOISE_OU: return tidsim::QubitNoise::ou(n.sigma, n.tau_c);
  }
  throw tidsim::Error(tidsim::ErrorCode::InvalidArgument, "unknown noise kind");
}

}  // namespace

extern "C" {

const char* tidsim_version(void) { return "0.1.0"; }

const char* tidsim_status_name(tidsim_status s) {
  switch (s) {
    case TIDSIM_OK: return "ok";
    case TIDSIM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case TIDSIM_ERR_UNPHYSICAL_PARAMS: return "UnphysicalParams";
    case TIDSIM_ERR_NUMERICAL_FAILURE: return "NumericalFailure";
    case TIDSIM_ERR_INCOMPLETE_KRAUS: return "IncompleteKraus";
    case TIDSIM_ERR_NO_TRANSITION: return "NoTransition";
    case TIDSIM_ERR_UNKNOWN_SEQUENCE: return "UnknownSequence";
    case TIDSIM_ERR_SYNTAX: return "SyntaxError";
    case TIDSIM_ERR_SEMANTIC: return "SemanticError";
    case TIDSIM_ERR_CONFIG: return "ConfigError";
    case TIDSIM_ERR_INCOMPLETE_RECORD: return "IncompleteRecord";
    case TIDSIM_ERR_IO: return "IoError";
    case TIDSIM_ERR_INTERNAL: return "Internal";
  }
  return "unknown";
}

const char* tidsim_last_error(void) { return g_last_error.c_str(); }

void tidsim_string_free(char* s) { std::free(s); }

// ---- states ---------------------------------------------------------------

tidsim_status tidsim_state_from_bd(double c1, double c2, double c3, tidsim_state** out) {
  TIDSIM_REQUIRE(out, "out is NULL");
  return guarded([&] { *out = new tidsim_state{tidsim::bd_state({c1, c2, c3})}; });
}

tidsim_status tidsim_state_from_json(const char* json, tidsim_state** out) {
  TIDSIM_REQUIRE(json && out, "NULL argument");
  return guarded([&] { *out = new tidsim_state{tidsim::density_matrix_from_json(json)}; });
}

tidsim_status tidsim_state_load(const char* path, tidsim_state** out) {
  TIDSIM_REQUIRE(path && out, "NULL argument");
  return guarded([&] {
    try {
      *out = new tidsim_state{tidsim::density_matrix_from_json(tidsim::read_text_file(path))};
    } catch (const tidsim::Error& e) {
      throw tidsim::Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

void tidsim_state_free(tidsim_state* s) { delete s; }

tidsim_status tidsim_state_to_json(const tidsim_state* s, char** out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  return guarded([&] { *out = dup_string(tidsim::to_json(s->rho, 2)); });
}

tidsim_status tidsim_state_get(const tidsim_state* s, double re[16], double im[16]) {
  TIDSIM_REQUIRE(s && re && im, "NULL argument");
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      re[4 * i + j] = s->rho(i, j).real();
      im[4 * i + j] = s->rho(i, j).imag();
    }
  }
  g_last_error.clear();
  return TIDSIM_OK;
}

tidsim_status tidsim_state_bd_params(const tidsim_state* s, double c[3], double* residual) {
  TIDSIM_REQUIRE(s && c, "NULL argument");
  return guarded([&] {
    const auto p = tidsim::bd_params_of(s->rho);
    c[0] = p.c1;
    c[1] = p.c2;
    c[2] = p.c3;
    if (residual) *residual = tidsim::bd_residual(s->rho);
  });
}

tidsim_status tidsim_fidelity(const tidsim_state* a, const tidsim_state* b, double* out) {
  TIDSIM_REQUIRE(a && b && out, "NULL argument");
  return guarded([&] { *out = tidsim::fidelity(a->rho, b->rho); });
}

tidsim_status tidsim_pauli_expectation(const tidsim_state* s, char a, char b, double* out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  return guarded([&] {
    *out = tidsim::pauli_expectation(s->rho, tidsim::pauli_from_char(a), tidsim::pauli_from_char(b));
  });
}

// ---- correlations -----------------------------------------------------------

tidsim_status tidsim_correlations_bd(double c1, double c2, double c3, tidsim_correlations* out) {
  TIDSIM_REQUIRE(out, "out is NULL");
  return guarded([&] {
    const tidsim::BDParams c{c1, c2, c3};
    if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(c3)) {
      throw tidsim::Error(tidsim::ErrorCode::InvalidArgument, "non-finite correlation coefficient");
    }
    const auto t = tidsim::correlations(c);
    *out = {t.classical, t.discord, t.total, t.chi_clamped ? 1 : 0};
  });
}

tidsim_status tidsim_discord_bruteforce(const tidsim_state* s, int grid_n, double* out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  return guarded([&] { *out = tidsim::discord_bruteforce(s->rho, grid_n > 0 ? grid_n : 256); });
}

tidsim_status tidsim_mutual_information(const tidsim_state* s, double* out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  return guarded([&] { *out = tidsim::mutual_information(s->rho); });
}

tidsim_status tidsim_transition_time(double c1, double c2, double c3, double gamma, double* out) {
  TIDSIM_REQUIRE(out, "out is NULL");
  return guarded([&] { *out = tidsim::transition_time({c1, c2, c3}, gamma); });
}

// ---- schedules --------------------------------------------------------------

int tidsim_sequence_count(void) { return static_cast<int>(tidsim::builtin_sequences().size()); }

const char* tidsim_sequence_name(int index) {
  const auto& all = tidsim::builtin_sequences();
  if (index < 0 || index >= static_cast<int>(all.size())) return nullptr;
  return tidsim::to_string(all[index]);
}

int tidsim_sequence_pulse_count(int index) {
  const auto& all = tidsim::builtin_sequences();
  if (index < 0 || index >= static_cast<int>(all.size())) return -1;
  return tidsim::expected_pulse_count(all[index]);
}

tidsim_status tidsim_schedule_builtin(const char* name, double tau, int repetitions, tidsim_schedule** out) {
  TIDSIM_REQUIRE(name && out, "NULL argument");
  return guarded([&] { *out = new tidsim_schedule{tidsim::builtin_sequence(std::string(name), tau, repetitions)}; });
}

tidsim_status tidsim_schedule_compile(const char* dsl, double tau, int repetitions, const char* name,
                                      tidsim_schedule** out) {
  TIDSIM_REQUIRE(dsl && out, "NULL argument");
  return guarded([&] {
    tidsim::DslBindings b;
    if (tau > 0.0) b.tau = tau;
    if (repetitions > 0) b.repetitions = repetitions;
    if (name) b.name = name;
    *out = new tidsim_schedule{tidsim::parse_dsl(dsl, b)};
  });
}

void tidsim_schedule_free(tidsim_schedule* s) { delete s; }

tidsim_status tidsim_schedule_to_json(const tidsim_schedule* s, char** out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  return guarded([&] { *out = dup_string(tidsim::schedule_to_json(s->schedule)); });
}

tidsim_status tidsim_schedule_to_dsl(const tidsim_schedule* s, char** out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  return guarded([&] { *out = dup_string(tidsim::print_dsl(s->schedule)); });
}

tidsim_status tidsim_schedule_pulse_count(const tidsim_schedule* s, int* out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  *out = s->schedule.pulses_per_cycle();
  g_last_error.clear();
  return TIDSIM_OK;
}

tidsim_status tidsim_schedule_cycle_time(const tidsim_schedule* s, double pulse_1, double pulse_2, double* out) {
  TIDSIM_REQUIRE(s && out, "NULL argument");
  TIDSIM_REQUIRE(pulse_1 >= 0.0 && pulse_2 >= 0.0, "pulse durations must be >= 0");
  return guarded([&] {
    tidsim::PulseErrorModel err;
    err.pulse_duration = {pulse_1, pulse_2};
    *out = tidsim::schedule_timing(s->schedule, err);
  });
}

tidsim_status tidsim_filter_exponent(const tidsim_schedule* s, const tidsim_noise* noise, double t, double* out) {
  TIDSIM_REQUIRE(noise && out, "NULL argument");
  TIDSIM_REQUIRE(t >= 0.0, "t must be >= 0");
  return guarded([&] { *out = tidsim::filter_decay_exponent(s ? &s->schedule : nullptr, qubit_noise(*noise), t); });
}

// ---- tomography -------------------------------------------------------------

tidsim_status tidsim_tomography_run(const tidsim_state* s, int64_t shots, uint64_t seed,
                                    tidsim_tomography* summary, tidsim_state** reconstructed, char** record_csv) {
  TIDSIM_REQUIRE(s, "state is NULL");
  TIDSIM_REQUIRE(shots >= 1, "shots must be >= 1");
  return guarded([&] {
    const auto r = tidsim::run_tomography(s->rho, shots, seed);
    std::string csv = record_csv ? tidsim::record_to_csv(r.record) : std::string();
    if (summary) *summary = {r.fidelity, r.linear.min_eigenvalue, r.linear.physical ? 1 : 0};
    if (record_csv) *record_csv = dup_string(csv);
    if (reconstructed) *reconstructed = new tidsim_state{r.reconstructed};
  });
}

// ---- scenarios and sweeps ---------------------------------------------------

void tidsim_options_init(tidsim_options* o) {
  if (!o) return;
  *o = tidsim_options{};
}

tidsim_status tidsim_scenario_run_file(const char* path, const tidsim_options* options, tidsim_result** out) {
  TIDSIM_REQUIRE(path && out, "NULL argument");
  return guarded([&] {
    auto doc = tidsim::load_config_file(path);
    tidsim::apply_overrides(doc, overrides_of(options));
    auto r = std::make_unique<tidsim_result>();
    r->scenario = tidsim::scenario_from_json(doc, base_dir_of(path));
    r->result = tidsim::run_scenario(r->scenario);
    if (!r->scenario.out_dir.empty()) tidsim::write_outputs(r->scenario, r->result, r->scenario.out_dir);
    *out = r.release();
  });
}

void tidsim_result_free(tidsim_result* r) { delete r; }

size_t tidsim_result_size(const tidsim_result* r) { return r ? r->result.trajectory.size() : 0; }

tidsim_status tidsim_result_point(const tidsim_result* r, size_t i, double* t, double c[3],
                                  tidsim_correlations* corr) {
  TIDSIM_REQUIRE(r, "result is NULL");
  TIDSIM_REQUIRE(i < r->result.trajectory.size(), "sample index out of range");
  const auto& p = r->result.trajectory[i];
  if (t) *t = p.t;
  if (c) {
    c[0] = p.c.c1;
    c[1] = p.c.c2;
    c[2] = p.c.c3;
  }
  if (corr) *corr = {p.corr.classical, p.corr.discord, p.corr.total, p.corr.chi_clamped ? 1 : 0};
  g_last_error.clear();
  return TIDSIM_OK;
}

tidsim_status tidsim_result_transition(const tidsim_result* r, double* t, int* censored) {
  TIDSIM_REQUIRE(r, "result is NULL");
  if (!r->result.t_bar) return fail(TIDSIM_ERR_NO_TRANSITION, "no discord at t = 0");
  if (t) *t = r->result.t_bar->t;
  if (censored) *censored = r->result.t_bar->censored ? 1 : 0;
  g_last_error.clear();
  return TIDSIM_OK;
}

tidsim_status tidsim_result_final_fidelity(const tidsim_result* r, double* out) {
  TIDSIM_REQUIRE(r && out, "NULL argument");
  *out = r->result.final_fidelity;
  g_last_error.clear();
  return TIDSIM_OK;
}

tidsim_status tidsim_result_summary_json(const tidsim_result* r, char** out) {
  TIDSIM_REQUIRE(r && out, "NULL argument");
  return guarded([&] { *out = dup_string(tidsim::summary_json(r->scenario, r->result)); });
}

tidsim_status tidsim_result_trajectory_csv(const tidsim_result* r, char** out) {
  TIDSIM_REQUIRE(r && out, "NULL argument");
  return guarded([&] { *out = dup_string(tidsim::trajectory_csv(r->result.trajectory)); });
}

tidsim_status tidsim_sweep_run_file(const char* path, const tidsim_options* options, int parallelism, char** csv,
                                    int* failed) {
  TIDSIM_REQUIRE(path && csv, "NULL argument");
  return guarded([&] {
    const auto doc = tidsim::load_config_file(path);
    const auto ov = overrides_of(options);
    const std::string base = base_dir_of(path);
    // Scenarios that fail to parse keep their slot as an error row.
    std::vector<tidsim::Scenario> scenarios;
    std::vector<tidsim::SweepRow> rows;
    std::vector<std::size_t> slot;
    for (auto d : tidsim::sweep_documents(doc)) {
      tidsim::SweepRow row;
      row.label = d.is_object() ? d.value("label", std::string("scenario")) : std::string("scenario");
      try {
        tidsim::apply_overrides(d, ov);
        scenarios.push_back(tidsim::scenario_from_json(d, base));
        slot.push_back(rows.size());
      } catch (const tidsim::Error& e) {
        row.error = e.what();
      }
      rows.push_back(row);
    }
    if (!scenarios.empty()) {
      const auto done = tidsim::sweep(scenarios, parallelism < 1 ? 1 : parallelism);
      for (std::size_t k = 0; k < done.size(); ++k) rows[slot[k]] = done[k];
    }
    if (failed) {
      *failed = 0;
      for (const auto& row : rows) *failed += row.error.empty() ? 0 : 1;
    }
    *csv = dup_string(tidsim::sweep_csv(rows));
  });
}

}  // extern "C"
