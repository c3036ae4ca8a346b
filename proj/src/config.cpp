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
#include "tidsim/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "tidsim/channels.hpp"
#include "tidsim/errors.hpp"

namespace tidsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json from_toml(const toml::node& node) {
  if (auto t = node.as_table()) {
    json out = json::object();
    for (auto&& [k, v] : *t) out[std::string(k.str())] = from_toml(v);
    return out;
  }
  if (auto a = node.as_array()) {
    json out = json::array();
    for (auto&& v : *a) out.push_back(from_toml(v));
    return out;
  }
  if (auto v = node.as_string()) return v->get();
  if (auto v = node.as_integer()) return v->get();
  if (auto v = node.as_floating_point()) return v->get();
  if (auto v = node.as_boolean()) return v->get();
  throw Error(ErrorCode::ConfigError, "unsupported TOML value (dates and times are not accepted)");
}

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

double number(const json& j, const std::string& what) {
  if (!j.is_number()) config_error(what + " must be a number");
  return j.get<double>();
}

std::array<double, 2> pair_of(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), j.get<double>()};
  if (!j.is_array() || j.size() != 2) config_error(what + " must be a number or a 2-element array");
  return {number(j[0], what), number(j[1], what)};
}

std::string resolve(const std::string& path, const std::string& base) {
  fs::path p(path);
  return p.is_absolute() ? p.string() : (fs::path(base) / p).string();
}

void merge_into(json& target, const json& patch) {
  if (!patch.is_object() || !target.is_object()) {
    target = patch;
    return;
  }
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (target.contains(it.key()) && target[it.key()].is_object() && it.value().is_object()) {
      merge_into(target[it.key()], it.value());
    } else {
      target[it.key()] = it.value();
    }
  }
}

DensityMatrix initial_state(const json& j, const std::string& base) {
  if (!j.is_object()) config_error("[initial] must be a table");
  if (j.contains("c")) {
    const json& c = j["c"];
    if (!c.is_array() || c.size() != 3) config_error("initial.c must hold three numbers");
    return bd_state({number(c[0], "initial.c"), number(c[1], "initial.c"), number(c[2], "initial.c")});
  }
  if (j.contains("matrix")) return density_matrix_from_json(j["matrix"].dump());
  if (j.contains("matrix_file")) {
    return density_matrix_from_json(read_text_file(resolve(j["matrix_file"].get<std::string>(), base)));
  }
  config_error("[initial] needs c, matrix or matrix_file");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

json parse_config_text(const std::string& text, const std::string& hint) {
  const std::string ext = fs::path(hint).extension().string();
  bool as_json = ext == ".json";
  if (ext.empty() || (ext != ".toml" && ext != ".json")) {
    const auto first = text.find_first_not_of(" \t\r\n");
    as_json = first != std::string::npos && (text[first] == '{' || text[first] == '[');
  }
  if (as_json) {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      config_error(std::string("JSON config: ") + e.what());
    }
  }
  try {
    return from_toml(toml::parse(text, hint));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML config " << e.source().begin << ": " << e.description();
    config_error(os.str());
  }
}

json load_config_file(const std::string& path) { return parse_config_text(read_text_file(path), path); }

void apply_overrides(json& s, const Overrides& o) {
  if (o.seed) s["mc"]["seed"] = *o.seed;
  if (o.trajectories) s["mc"]["trajectories"] = *o.trajectories;
  if (o.engine) s["engine"] = *o.engine;
  if (o.sequence) {
    json seq = s.contains("sequence") && s["sequence"].is_object() ? s["sequence"] : json::object();
    seq.erase("name");
    seq.erase("dsl");
    seq.erase("dsl_file");
    std::string v = *o.sequence;
    bool builtin = v == "none";
    if (!builtin) {
      try {
        sequence_from_string(v);
        builtin = true;
      } catch (const Error&) {
      }
    }
    if (builtin) {
      seq["name"] = v;
    } else if (fs::exists(v)) {
      seq["dsl_file"] = fs::absolute(v).string();
    } else {
      throw Error(ErrorCode::UnknownSequence, "'" + v + "' is neither a builtin sequence nor a DSL file");
    }
    s["sequence"] = seq;
  }
  if (o.tau) s["sequence"]["tau"] = *o.tau;
  if (o.out_dir) s["output"]["dir"] = *o.out_dir;
}

Scenario scenario_from_json(const json& doc, const std::string& base) {
  if (!doc.is_object()) config_error("scenario must be a table/object");
  Scenario s;
  try {
    s.label = doc.value("label", std::string("scenario"));
    s.engine = engine_from_string(doc.value("engine", std::string("analytic")));
    SimConfig& cfg = s.sim;

    cfg.initial = initial_state(doc.contains("initial") ? doc["initial"] : json{{"c", {1.0, 0.7, -0.7}}}, base);

    if (doc.contains("system")) {
      const json& sys = doc["system"];
      if (sys.contains("offset_hz")) cfg.system.offset_hz = pair_of(sys["offset_hz"], "system.offset_hz");
      if (sys.contains("j_hz")) cfg.system.j_hz = number(sys["j_hz"], "system.j_hz");
    }

    if (doc.contains("pulse_error")) {
      const json& pe = doc["pulse_error"];
      cfg.error.flip_angle_error = pe.value("flip_angle_error", 0.0);
      cfg.error.offset_hz = pe.value("offset_hz", 0.0);
      if (pe.contains("duration")) cfg.error.pulse_duration = pair_of(pe["duration"], "pulse_error.duration");
      if (cfg.error.pulse_duration[0] < 0.0 || cfg.error.pulse_duration[1] < 0.0) {
        config_error("pulse_error.duration must be >= 0");
      }
    }

    // Schedule (without repetitions; those follow from the sample horizon).
    std::optional<PulseSchedule> schedule;
    if (doc.contains("sequence")) {
      const json& sq = doc["sequence"];
      const std::optional<double> tau =
          sq.contains("tau") ? std::optional<double>(number(sq["tau"], "sequence.tau")) : std::nullopt;
      if (sq.contains("dsl") || sq.contains("dsl_file")) {
        const std::string text = sq.contains("dsl") ? sq["dsl"].get<std::string>()
                                                    : read_text_file(resolve(sq["dsl_file"].get<std::string>(), base));
        DslBindings b;
        b.tau = tau;
        b.repetitions = 1;
        b.name = sq.value("label", std::string("custom"));
        schedule = parse_dsl(text, b);
      } else if (sq.contains("name") && sq["name"].get<std::string>() != "none") {
        if (!tau) config_error("sequence.tau is required for builtin sequences");
        schedule = builtin_sequence(sq["name"].get<std::string>(), *tau);
      }
    }
    if (schedule) {
      for (auto& e : schedule->events) {
        if (e.kind == EventKind::Pulse) e.duration = std::max(e.duration, cfg.error.event_duration());
      }
    }

    // Sample grid.
    const json sampling = doc.contains("sampling") ? doc["sampling"] : json::object();
    const double t_max = sampling.value("t_max", 0.3);
    if (sampling.contains("times")) {
      cfg.sample_times = sampling["times"].get<std::vector<double>>();
    } else if (schedule) {
      cfg.sample_times = cycle_grid(schedule->cycle_duration(), sampling.value("every_cycles", 5), t_max);
    } else {
      cfg.sample_times = linear_grid(t_max, sampling.value("points", 50));
    }
    if (cfg.sample_times.empty()) config_error("empty sample grid");
    if (schedule) {
      const double horizon = cfg.sample_times.back();
      schedule->repetitions =
          std::max(1, static_cast<int>(std::ceil(horizon / schedule->cycle_duration() - 1e-9)));
      cfg.schedule = schedule;
    }

    // Noise.
    const json noise = doc.contains("noise") ? doc["noise"] : json{{"kind", "white"}, {"t2star", {0.41, 0.19}}};
    const std::string kind = noise.value("kind", std::string("white"));
    auto rates_from = [&](const std::string& rate_key, const std::string& t2_key) -> std::optional<std::array<double, 2>> {
      if (noise.contains(rate_key)) return pair_of(noise[rate_key], "noise." + rate_key);
      if (noise.contains(t2_key)) {
        const auto t2 = pair_of(noise[t2_key], "noise." + t2_key);
        const auto r = DephasingRates::from_t2star(t2[0], t2[1]);
        return std::array<double, 2>{r.gamma_h, r.gamma_c};
      }
      return std::nullopt;
    };
    if (kind == "white") {
      const auto r = rates_from("rate", "t2star");
      cfg.noise = r ? NoiseModel::white((*r)[0], (*r)[1]) : NoiseModel::none();
    } else if (kind == "ou" || kind == "ornstein_uhlenbeck") {
      if (!noise.contains("tau_c")) config_error("noise.tau_c is required for OU noise");
      const auto tau_c = pair_of(noise["tau_c"], "noise.tau_c");
      std::array<double, 2> sigma{0.0, 0.0};
      if (noise.contains("sigma")) {
        sigma = pair_of(noise["sigma"], "noise.sigma");
      } else if (const auto match = rates_from("match_rate", "match_t2star")) {
        // Same free-evolution coherence as white dephasing at match_time.
        double t_match = 0.0;
        const json& mt = noise.contains("match_time") ? noise["match_time"] : json("transition");
        if (mt.is_string() && mt.get<std::string>() == "transition") {
          const BDParams c = bd_params_of(cfg.initial);
          t_match = transition_time(c, 0.5 * ((*match)[0] + (*match)[1]));
        } else {
          t_match = number(mt, "noise.match_time");
        }
        for (int q = 0; q < 2; ++q) sigma[q] = calibrate_ou_sigma((*match)[q], tau_c[q], t_match);
      } else {
        config_error("OU noise needs sigma or match_rate/match_t2star");
      }
      cfg.noise.qubit = {QubitNoise::ou(sigma[0], tau_c[0]), QubitNoise::ou(sigma[1], tau_c[1])};
    } else if (kind == "none") {
      cfg.noise = NoiseModel::none();
    } else {
      config_error("unknown noise kind '" + kind + "'");
    }

    // Monte-Carlo settings.
    const json mc = doc.contains("mc") ? doc["mc"] : json::object();
    cfg.n_trajectories = mc.value("trajectories", 1000);
    cfg.base_seed = mc.value("seed", static_cast<std::uint64_t>(1));
    cfg.workers = mc.value("workers", 0);
    double dt = 1e-5;
    if (cfg.schedule) {
      double shortest = cfg.schedule->tau;
      if (!(shortest > 0.0)) {
        for (const auto& e : cfg.schedule->events) {
          if (e.kind == EventKind::Delay && e.duration > 0.0 && (shortest <= 0.0 || e.duration < shortest)) {
            shortest = e.duration;
          }
        }
      }
      if (shortest > 0.0) dt = std::min(dt, shortest / 10.0);
    }
    cfg.time_step = mc.value("time_step", dt);

    if (doc.contains("tomography")) {
      s.tomography_shots = doc["tomography"].value("shots", static_cast<std::int64_t>(0));
    }
    if (doc.contains("checkpoints")) s.checkpoints = doc["checkpoints"].get<std::vector<double>>();
    if (doc.contains("output")) s.out_dir = doc["output"].value("dir", std::string());
  } catch (const json::exception& e) {
    config_error("scenario '" + s.label + "': " + e.what());
  }
  if (s.engine == EngineKind::MonteCarlo) validate(s.sim);
  return s;
}

std::vector<json> sweep_documents(const json& doc) {
  const json common = doc.contains("common") ? doc["common"] : json::object();
  const char* key = doc.contains("scenario") ? "scenario" : (doc.contains("scenarios") ? "scenarios" : nullptr);
  std::vector<json> out;
  if (!key) {
    out.push_back(doc);
    return out;
  }
  const json& list = doc[key];
  if (!list.is_array() || list.empty()) config_error(std::string(key) + " must be a non-empty array");
  for (const auto& item : list) {
    json merged = common;
    merge_into(merged, item);
    out.push_back(std::move(merged));
  }
  return out;
}

}  // namespace tidsim
