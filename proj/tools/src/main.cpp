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
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ergospin/errors.hpp"
#include "ergospin_runner/runner.hpp"

namespace {

enum Exit { kPass = 0, kCertificateFailure = 1, kUsage = 2, kResource = 3 };

nlohmann::json load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ergospin::ConfigError("", "cannot read config file '" + path + "'");
  auto j = nlohmann::json::parse(f, nullptr, false);
  if (j.is_discarded()) throw ergospin::ConfigError("", "'" + path + "' is not valid JSON");
  return j;
}

int default_jobs() {
  if (const char* env = std::getenv("ERGOSPIN_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergospin: disordered quantum spin experiments"};
  app.set_version_flag("--version", ergospin::runner::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  int jobs = default_jobs();

  auto* run = app.add_subcommand("run", "run a study and write CSV, JSON and manifest.json");
  run->add_option("-c,--config", config_path, "experiment config (JSON)")->required();
  run->add_option("-j,--jobs", jobs, "worker threads (default: ERGOSPIN_JOBS or 1)")->check(CLI::PositiveNumber);
  run->add_option("-o,--out", out_dir, "output directory (default: config 'output')");
  run->add_option("--override", overrides, "KEY=VALUE, dotted path or JSON pointer");

  auto* val = app.add_subcommand("validate", "check a config and estimate dense dimensions");
  val->add_option("-c,--config", config_path, "experiment config (JSON)")->required();
  val->add_option("--override", overrides, "KEY=VALUE, dotted path or JSON pointer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const auto j = ergospin::runner::apply_overrides(load(config_path), overrides);
    if (*val) {
      const auto d = ergospin::runner::validate(j);
      for (const auto& w : d.warnings) std::cout << "warning: " << w << "\n";
      for (const auto& e : d.errors) std::cerr << "error: " << e << "\n";
      if (d.ok()) std::cout << "config ok\n";
      return d.ok() ? kPass : kUsage;
    }
    const auto config = ergospin::runner::parse_config(j);
    const std::string out = out_dir.empty() ? config.output : out_dir;
    const auto result = ergospin::runner::run(config, out, jobs);
    for (const auto& a : result.artifacts) std::cout << out << "/" << a << "\n";
    std::cout << (result.certificates_passed ? "all certificates passed" : "certificate failure") << "\n";
    return result.certificates_passed ? kPass : kCertificateFailure;
  } catch (const ergospin::ConfigError& e) {
    std::cerr << "config error at '" << e.pointer() << "': " << e.what() << "\n";
    return kUsage;
  } catch (const ergospin::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const ergospin::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  }
}
