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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tidsim/harness.hpp"

namespace tidsim {

// Parses TOML or JSON text into a JSON document. `hint` is a file name or
// extension; without one, text starting with '{' or '[' is read as JSON.
nlohmann::json parse_config_text(const std::string& text, const std::string& hint = "");
nlohmann::json load_config_file(const std::string& path);

std::string read_text_file(const std::string& path);   // throws IoError
void write_text_file(const std::string& path, const std::string& text);

// Command-line style overrides applied on top of a scenario document.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> trajectories;
  std::optional<std::string> engine;
  std::optional<std::string> sequence;  // builtin name, "none", or a DSL file path
  std::optional<double> tau;
  std::optional<std::string> out_dir;
};
void apply_overrides(nlohmann::json& scenario, const Overrides& o);

// Relative file references (matrix_file, dsl_file) resolve against base_dir.
Scenario scenario_from_json(const nlohmann::json& doc, const std::string& base_dir = ".");

// A sweep document holds `scenario` (TOML [[scenario]]) or `scenarios`, each
// deep-merged over the optional `common` table. A document without either
// key is a single scenario.
std::vector<nlohmann::json> sweep_documents(const nlohmann::json& doc);

}  // namespace tidsim
