// Copyright 2026 The ergospin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/disorder.hpp"
#include "ergospin/ffunction.hpp"
#include "ergospin/interaction.hpp"
#include "ergospin/tolerances.hpp"

namespace ergospin::runner {

inline constexpr const char* kVersion = "0.1.0";

/// Study kinds understood by the runner.
const std::vector<std::string>& study_kinds();

/// Schema-validated experiment description. \c resolved echoes the input with
/// every default filled in.
struct ExperimentConfig {
  nlohmann::json resolved;
  int dim = 1;
  int k = 2;
  std::vector<Germ> germs;
  FFunction f;
  Law law;
  EnsembleSpec ensemble;
  std::string kind;
  nlohmann::json study;
  std::string output;
  Tolerances tol;

  Interaction interaction(std::uint64_t seed) const;
};

/// Throws ConfigError carrying the JSON pointer of the offending key.
ExperimentConfig parse_config(const nlohmann::json& j);

/// Applies KEY=VALUE overrides; KEY is a dotted path ("study.time") or a JSON
/// pointer ("/study/time"); VALUE is parsed as JSON, falling back to a string.
nlohmann::json apply_overrides(nlohmann::json j, const std::vector<std::string>& overrides);

struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Schema check plus dense-dimension estimates, without running anything.
Diagnostics validate(const nlohmann::json& j);

struct RunResult {
  bool certificates_passed = true;
  std::vector<std::string> artifacts;  ///< file names relative to the output directory
  nlohmann::json manifest;
};

/// Runs the configured study with \p jobs workers and writes CSV, JSON and
/// manifest.json into \p out. Re-running with the same config reproduces the
/// CSV and JSON bytes exactly.
RunResult run(const ExperimentConfig& config, const std::filesystem::path& out, int jobs);

std::string sha256_hex(const std::string& bytes);

/// Shortest round-trip decimal, or inf/-inf/nan.
std::string format_double(double v);

}  // namespace ergospin::runner
