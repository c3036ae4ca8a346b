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
// Command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tidsim/tidsim.h"

namespace {

struct Failure {
  tidsim_status status;
};

void check(tidsim_status s) {
  if (s != TIDSIM_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  tidsim_string_free(s);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    std::cerr << "tidsim: error: cannot write '" << path << "'\n";
    throw Failure{TIDSIM_ERR_IO};
  }
}

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "tidsim: error: cannot open '" << path << "'\n";
    throw Failure{TIDSIM_ERR_IO};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Shared scenario flags.
struct RunFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int trajectories = 0;
  std::string engine;
  std::string sequence;
  double tau = 0.0;

  void add_to(CLI::App* app) {
    app->add_option("--config", config, "Scenario file (TOML or JSON)")->required()->check(CLI::ExistingFile);
    app->add_option("--out", out, "Output directory");
    app->add_option("--seed", seed, "Monte-Carlo base seed");
    app->add_option("--trajectories", trajectories, "Monte-Carlo trajectory count")->check(CLI::PositiveNumber);
    app->add_option("--engine", engine, "analytic | mc | ff")
        ->check(CLI::IsMember({"analytic", "mc", "ff", "monte_carlo", "filter_function"}));
    app->add_option("--sequence", sequence, "Builtin sequence name, none, or a DSL file");
    app->add_option("--tau", tau, "Inter-pulse delay in seconds")->check(CLI::PositiveNumber);
  }

  tidsim_options options() const {
    tidsim_options o;
    tidsim_options_init(&o);
    if (!out.empty()) o.out_dir = out.c_str();
    if (!engine.empty()) o.engine = engine.c_str();
    if (!sequence.empty()) o.sequence = sequence.c_str();
    if (seed) {
      o.has_seed = 1;
      o.seed = *seed;
    }
    o.trajectories = trajectories;
    o.tau = tau;
    return o;
  }
};

int cmd_simulate(const RunFlags& f, bool print_csv) {
  const tidsim_options o = f.options();
  tidsim_result* r = nullptr;
  check(tidsim_scenario_run_file(f.config.c_str(), &o, &r));
  char* text = nullptr;
  tidsim_status s = print_csv ? tidsim_result_trajectory_csv(r, &text) : tidsim_result_summary_json(r, &text);
  tidsim_result_free(r);
  check(s);
  std::cout << take(text);
  return 0;
}

int cmd_sweep(const RunFlags& f, int jobs) {
  const tidsim_options o = f.options();
  char* csv = nullptr;
  int failed = 0;
  check(tidsim_sweep_run_file(f.config.c_str(), &o, jobs, &csv, &failed));
  const std::string table = take(csv);
  std::cout << table;
  if (!f.out.empty()) write_file(f.out + "/sweep.csv", table);
  if (failed > 0) {
    std::cerr << "tidsim: " << failed << " scenario(s) failed, see the error column\n";
    return 1;
  }
  return 0;
}

int cmd_discord(const std::vector<double>& c, const std::string& matrix, int grid) {
  if (!matrix.empty()) {
    tidsim_state* rho = nullptr;
    check(tidsim_state_load(matrix.c_str(), &rho));
    double d = 0.0, i = 0.0;
    tidsim_status s = tidsim_discord_bruteforce(rho, grid, &d);
    if (s == TIDSIM_OK) s = tidsim_mutual_information(rho, &i);
    tidsim_state_free(rho);
    check(s);
    std::cout << "C " << fmt(i - d) << "\nD " << fmt(d) << "\nI " << fmt(i) << '\n';
    return 0;
  }
  tidsim_correlations t{};
  check(tidsim_correlations_bd(c[0], c[1], c[2], &t));
  std::cout << "C " << fmt(t.classical) << "\nD " << fmt(t.discord) << "\nI " << fmt(t.total) << '\n';
  if (t.chi_clamped) std::cerr << "tidsim: warning: max|c_i| > 1 was clamped\n";
  return 0;
}

int cmd_tomo(const std::vector<double>& c, const std::string& matrix, std::int64_t shots, std::uint64_t seed,
             const std::string& out) {
  tidsim_state* rho = nullptr;
  if (!matrix.empty()) {
    check(tidsim_state_load(matrix.c_str(), &rho));
  } else {
    check(tidsim_state_from_bd(c[0], c[1], c[2], &rho));
  }
  tidsim_tomography summary{};
  tidsim_state* rec = nullptr;
  char* csv = nullptr;
  tidsim_status s = tidsim_tomography_run(rho, shots, seed, &summary, &rec, &csv);
  tidsim_state_free(rho);
  check(s);
  const std::string record = take(csv);
  char* json = nullptr;
  s = tidsim_state_to_json(rec, &json);
  tidsim_state_free(rec);
  check(s);
  const std::string reconstructed = take(json);
  std::cout << "fidelity " << fmt(summary.fidelity) << "\nlinear_min_eigenvalue " << fmt(summary.linear_min_eigenvalue)
            << "\nlinear_physical " << summary.linear_physical << '\n';
  if (!out.empty()) {
    write_file(out + "/tomography_record.csv", record);
    write_file(out + "/reconstructed.json", reconstructed + "\n");
  } else {
    std::cout << reconstructed << '\n';
  }
  return 0;
}

int cmd_compile(const std::string& file, const std::string& sequence, double tau, int reps, const std::string& name,
                const std::string& format) {
  tidsim_schedule* sch = nullptr;
  if (!sequence.empty()) {
    check(tidsim_schedule_builtin(sequence.c_str(), tau, reps > 0 ? reps : 1, &sch));
  } else {
    const std::string text = read_all(file);
    check(tidsim_schedule_compile(text.c_str(), tau, reps, name.empty() ? nullptr : name.c_str(), &sch));
  }
  char* out = nullptr;
  tidsim_status s = format == "dsl" ? tidsim_schedule_to_dsl(sch, &out) : tidsim_schedule_to_json(sch, &out);
  tidsim_schedule_free(sch);
  check(s);
  std::string text = take(out);
  std::cout << text << (text.empty() || text.back() != '\n' ? "\n" : "");
  return 0;
}

int cmd_list(double tau) {
  const int n = tidsim_sequence_count();
  std::cout << "name,pulses" << (tau > 0.0 ? ",cycle_s" : "") << '\n';
  for (int i = 0; i < n; ++i) {
    std::cout << tidsim_sequence_name(i) << ',' << tidsim_sequence_pulse_count(i);
    if (tau > 0.0) {
      tidsim_schedule* sch = nullptr;
      check(tidsim_schedule_builtin(tidsim_sequence_name(i), tau, 1, &sch));
      double cycle = 0.0;
      tidsim_status s = tidsim_schedule_cycle_time(sch, 15.1e-6, 26.8e-6, &cycle);
      tidsim_schedule_free(sch);
      check(s);
      std::cout << ',' << cycle;
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-diagonal discord dynamics under dephasing and dynamical decoupling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tidsim_version());

  RunFlags sim_flags;
  bool sim_csv = false;
  auto* simulate = app.add_subcommand("simulate", "Run one scenario");
  sim_flags.add_to(simulate);
  simulate->add_flag("--csv", sim_csv, "Print the correlation trajectory instead of the summary");

  RunFlags sweep_flags;
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run every scenario of a sweep file");
  sweep_flags.add_to(sweep);
  sweep->add_option("--jobs", jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);

  std::vector<double> c;
  std::string matrix;
  int grid = 0;
  auto* discord = app.add_subcommand("discord", "Classical correlation, discord and mutual information");
  auto* c_opt = discord->add_option("--c", c, "Bell-diagonal coefficients c1 c2 c3")->expected(3);
  auto* m_opt = discord->add_option("--matrix", matrix, "Density matrix JSON file")->check(CLI::ExistingFile);
  discord->add_option("--grid", grid, "Measurement grid for the numerical optimisation");
  c_opt->excludes(m_opt);
  discord->callback([&] {
    if (c.empty() && matrix.empty()) throw CLI::ValidationError("discord", "give --c or --matrix");
  });

  std::vector<double> tc;
  std::string tmatrix, tout;
  std::int64_t shots = 100000;
  std::uint64_t tseed = 1;
  auto* tomo = app.add_subcommand("tomo", "Simulated Pauli tomography with projection onto physical states");
  auto* tc_opt = tomo->add_option("--c", tc, "Bell-diagonal coefficients c1 c2 c3")->expected(3);
  auto* tm_opt = tomo->add_option("--matrix", tmatrix, "Density matrix JSON file")->check(CLI::ExistingFile);
  tc_opt->excludes(tm_opt);
  tomo->add_option("--shots", shots, "Shots per Pauli operator")->check(CLI::PositiveNumber);
  tomo->add_option("--seed", tseed, "Seed");
  tomo->add_option("--out", tout, "Directory for the record CSV and reconstructed state");

  std::string dsl_file, seq_name, cname, format = "json";
  double ctau = 0.0;
  int reps = 0;
  auto* compile = app.add_subcommand("compile", "Compile a pulse-sequence DSL file (or a builtin) to JSON");
  auto* file_opt = compile->add_option("file", dsl_file, "DSL file, - for stdin");
  auto* seq_opt = compile->add_option("--sequence", seq_name, "Builtin sequence instead of a file");
  file_opt->excludes(seq_opt);
  compile->add_option("--tau", ctau, "Value bound to tau (s)");
  compile->add_option("--repetitions,-N", reps, "Value bound to N");
  compile->add_option("--name", cname, "Schedule name");
  compile->add_option("--format", format, "json | dsl")->check(CLI::IsMember({"json", "dsl"}));
  compile->callback([&] {
    if (dsl_file.empty() && seq_name.empty()) throw CLI::ValidationError("compile", "give a DSL file or --sequence");
  });

  double ltau = 0.0;
  auto* list = app.add_subcommand("list-sequences", "Builtin sequences");
  list->add_option("--tau", ltau, "Also print the cycle time for this tau with 15.1/26.8 us pulses");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(sim_flags, sim_csv);
    if (*sweep) return cmd_sweep(sweep_flags, jobs);
    if (*discord) return cmd_discord(c, matrix, grid);
    if (*tomo) return cmd_tomo(tc.empty() ? std::vector<double>{1.0, 0.7, -0.7} : tc, tmatrix, shots, tseed, tout);
    if (*compile) return cmd_compile(dsl_file, seq_name, ctau, reps, cname, format);
    if (*list) return cmd_list(ltau);
  } catch (const Failure& f) {
    const char* msg = tidsim_last_error();
    if (msg && *msg) std::cerr << "tidsim: error: " << tidsim_status_name(f.status) << ": " << msg << '\n';
    return 2;
  }
  return 0;
}
