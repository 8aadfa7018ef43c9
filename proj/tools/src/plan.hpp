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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/gns.hpp"
#include "ergospin/lattice.hpp"
#include "ergospin/operators.hpp"
#include "ergospin_runner/runner.hpp"

namespace ergospin::runner {

/// Typed study parameters; only the fields of the configured kind are set.
struct StudyPlan {
  std::string kind;
  Volume volume;
  Volume inner;
  Volume outer;
  std::vector<Volume> volumes;
  LocalOperator a;
  LocalOperator b;
  LocalOperator observable;
  std::vector<double> times;
  double time = 0.0;
  Site center;
  std::vector<int> radii;
  Matrix perturbation;
  int condition_trials = 0;
  std::uint64_t condition_seed = 1;
  std::vector<int> n_values;
  Site z;
  int base_radius = 0;
  Site anchor;
  Site shift;
  std::vector<Interval> intervals;
  int pair_box_radius = 0;
  int truncation_radius = 0;
  bool has_volume = false;
};

/// Parses and validates the "study" object, filling defaults into \p resolved.
/// Errors are ConfigError with pointers below "/study".
StudyPlan plan_study(const nlohmann::json& study, int dim, int k, nlohmann::json& resolved);

/// Volumes: {"chain": L, "start": s}, {"box": {"center": [...], "radius": r}},
/// or an explicit array of coordinate arrays.
Volume parse_volume(const nlohmann::json& j, const std::string& ptr, int dim);
Site parse_site(const nlohmann::json& j, const std::string& ptr, int dim);

}  // namespace ergospin::runner

namespace ergospin::runner {

/// Result of one study on one disorder realisation.
struct SeedOutcome {
  std::uint64_t seed = 0;
  std::vector<std::vector<std::string>> rows;  ///< CSV rows without the seed column
  nlohmann::json detail;
  bool passed = true;
};

std::vector<std::string> csv_header(const std::string& kind);

SeedOutcome run_seed(const ExperimentConfig& config, const StudyPlan& plan, std::uint64_t seed);

std::string format_site(const Site& s);

}  // namespace ergospin::runner
