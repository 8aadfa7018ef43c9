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
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include <Eigen/Core>
#include <openssl/evp.h>

#include "ergospin/errors.hpp"
#include "ergospin_runner/runner.hpp"
#include "plan.hpp"

namespace ergospin::runner {

namespace {

using nlohmann::json;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ResourceError("cannot open '" + path.string() + "' for writing");
  f << bytes;
  if (!f) throw ResourceError("failed writing '" + path.string() + "'");
}

std::vector<SeedOutcome> run_all(const ExperimentConfig& c, const StudyPlan& plan, int jobs) {
  const auto& seeds = c.ensemble.seeds;
  std::vector<SeedOutcome> results(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        results[i] = run_seed(c, plan, seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(n, seeds.size()); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw ResourceError("SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

RunResult run(const ExperimentConfig& c, const std::filesystem::path& out, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  json ignored;
  const StudyPlan plan = plan_study(c.study, c.dim, c.k, ignored);
  const auto results = run_all(c, plan, jobs);

  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw ResourceError("cannot create output directory '" + out.string() + "': " + ec.message());

  RunResult rr;
  std::string csv = "seed";
  for (const auto& h : csv_header(plan.kind)) csv += "," + h;
  csv += "\n";
  json records = json::array();
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      csv += std::to_string(r.seed);
      for (const auto& cell : row) csv += "," + csv_escape(cell);
      csv += "\n";
    }
    records.push_back({{"seed", r.seed}, {"passed", r.passed}, {"result", r.detail}});
    rr.certificates_passed = rr.certificates_passed && r.passed;
  }
  const json summary{{"kind", plan.kind}, {"passed", rr.certificates_passed}, {"records", records}};
  const std::string json_bytes = summary.dump(2) + "\n";

  const std::string csv_name = plan.kind + ".csv";
  const std::string json_name = plan.kind + ".json";
  write_file(out / csv_name, csv);
  write_file(out / json_name, json_bytes);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rr.manifest = {
      {"config", c.resolved},
      {"seeds", c.ensemble.seeds},
      {"passed", rr.certificates_passed},
      {"checksums", {{csv_name, sha256_hex(csv)}, {json_name, sha256_hex(json_bytes)}}},
      {"versions",
       {{"ergospin", kVersion},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
        {"compiler", __VERSION__}}},
      {"jobs", std::max(1, jobs)},
      {"wall_clock_seconds", wall}};
  write_file(out / "manifest.json", rr.manifest.dump(2) + "\n");
  rr.artifacts = {csv_name, json_name, "manifest.json"};
  return rr;
}

}  // namespace ergospin::runner
