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
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ergospin/errors.hpp"
#include "ergospin_runner/runner.hpp"
#include "plan.hpp"

namespace ergospin::runner {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& ptr) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(ptr + "/" + key, "unknown key");
  }
}

const json& require(const json& j, const char* key, const std::string& ptr) {
  if (!j.contains(key)) throw ConfigError(ptr + "/" + key, "required key is missing");
  return j.at(key);
}

long long integer(const json& v, const std::string& ptr, long long lo, long long hi) {
  if (!v.is_number_integer()) throw ConfigError(ptr, "must be an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi) {
    throw ConfigError(ptr, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

double number(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw ConfigError(ptr, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(ptr, "must be finite");
  return x;
}

std::vector<int> int_list(const json& v, const std::string& ptr, int lo) {
  if (!v.is_array() || v.empty()) throw ConfigError(ptr, "must be a non-empty array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(static_cast<int>(integer(v[i], ptr + "/" + std::to_string(i), lo, 1 << 20)));
  }
  return out;
}

LocalOperator parse_observable(const json& j, const std::string& ptr, int dim, int k) {
  if (!j.is_object()) throw ConfigError(ptr, "observable must be an object {site, op}");
  reject_unknown(j, {"site", "op"}, ptr);
  const Site x = parse_site(require(j, "site", ptr), ptr + "/site", dim);
  const json& op = require(j, "op", ptr);
  if (!op.is_string()) throw ConfigError(ptr + "/op", "must be a string");
  const std::string name = op.get<std::string>();
  if (name == "identity") return LocalOperator::identity(Volume{x}, k);
  if (k != 2) throw ConfigError(ptr + "/op", "Pauli observables require k = 2");
  if (name == "x") return LocalOperator::at_site(x, pauli::x());
  if (name == "y") return LocalOperator::at_site(x, pauli::y());
  if (name == "z") return LocalOperator::at_site(x, pauli::z());
  throw ConfigError(ptr + "/op", "unknown observable '" + name + "' (identity, x, y, z)");
}

std::vector<double> parse_times(const json& j, const std::string& ptr) {
  std::vector<double> out;
  if (j.is_array()) {
    if (j.empty()) throw ConfigError(ptr, "time list is empty");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }
  if (!j.is_object()) throw ConfigError(ptr, "times must be an array or {start, stop, count}");
  reject_unknown(j, {"start", "stop", "count"}, ptr);
  const double start = number(require(j, "start", ptr), ptr + "/start");
  const double stop = number(require(j, "stop", ptr), ptr + "/stop");
  const auto count = integer(require(j, "count", ptr), ptr + "/count", 1, 100000);
  for (long long i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

Matrix parse_perturbation(const json& j, const std::string& ptr, int k) {
  if (!j.is_string()) throw ConfigError(ptr, "must be one of x, y, z");
  if (k != 2) throw ConfigError(ptr, "Pauli perturbations require k = 2");
  const std::string s = j.get<std::string>();
  if (s == "x") return pauli::x();
  if (s == "y") return pauli::y();
  if (s == "z") return pauli::z();
  throw ConfigError(ptr, "must be one of x, y, z");
}

}  // namespace

const std::vector<std::string>& study_kinds() {
  static const std::vector<std::string> kinds{"lr_certify",      "thermo_trace",  "gauge_check",
                                              "ground_state_scan", "cesaro_defect", "gns_determinism",
                                              "fnorm_report"};
  return kinds;
}

Site parse_site(const json& j, const std::string& ptr, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ConfigError(ptr, "site must be an array of " + std::to_string(dim) + " integers");
  }
  std::vector<int> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    c.push_back(static_cast<int>(integer(j[i], ptr + "/" + std::to_string(i), -(1 << 19), 1 << 19)));
  }
  return Site(std::move(c));
}

Volume parse_volume(const json& j, const std::string& ptr, int dim) {
  if (j.is_array()) {
    std::vector<Site> sites;
    for (std::size_t i = 0; i < j.size(); ++i) sites.push_back(parse_site(j[i], ptr + "/" + std::to_string(i), dim));
    if (sites.empty()) throw ConfigError(ptr, "volume is empty");
    try {
      return Volume(std::move(sites));
    } catch (const InputError& e) {
      throw ConfigError(ptr, e.what());
    }
  }
  if (!j.is_object()) throw ConfigError(ptr, "volume must be an array, {chain} or {box}");
  if (j.contains("chain")) {
    reject_unknown(j, {"chain", "start"}, ptr);
    if (dim != 1) throw ConfigError(ptr + "/chain", "chains need dimension 1");
    const auto length = integer(j.at("chain"), ptr + "/chain", 1, 64);
    const auto start = j.contains("start") ? integer(j.at("start"), ptr + "/start", -(1 << 19), 1 << 19) : 0;
    return chain(static_cast<int>(length), static_cast<int>(start));
  }
  if (j.contains("box")) {
    reject_unknown(j, {"box"}, ptr);
    const json& b = j.at("box");
    const std::string bp = ptr + "/box";
    if (!b.is_object()) throw ConfigError(bp, "must be {center, radius}");
    reject_unknown(b, {"center", "radius"}, bp);
    const Site c = b.contains("center") ? parse_site(b.at("center"), bp + "/center", dim) : Site::origin(dim);
    const auto r = integer(require(b, "radius", bp), bp + "/radius", 0, 64);
    return ball(c, static_cast<int>(r));
  }
  throw ConfigError(ptr, "volume object needs 'chain' or 'box'");
}

StudyPlan plan_study(const json& study, int dim, int k, json& resolved) {
  const std::string ptr = "/study";
  if (!study.is_object()) throw ConfigError(ptr, "study must be an object");
  const json& kind_v = require(study, "kind", ptr);
  if (!kind_v.is_string()) throw ConfigError(ptr + "/kind", "must be a string");
  StudyPlan p;
  p.kind = kind_v.get<std::string>();
  const auto& kinds = study_kinds();
  if (std::find(kinds.begin(), kinds.end(), p.kind) == kinds.end()) {
    throw ConfigError(ptr + "/kind", "unknown study kind '" + p.kind + "'");
  }
  resolved = study;
  auto at = [&](const char* key) { return ptr + "/" + key; };
  auto def = [&](const char* key, const json& value) {
    if (!resolved.contains(key)) resolved[key] = value;
    return resolved.at(key);
  };

  if (p.kind == "lr_certify") {
    reject_unknown(study, {"kind", "volume", "a", "b", "times"}, ptr);
    p.volume = parse_volume(require(study, "volume", ptr), at("volume"), dim);
    p.a = parse_observable(require(study, "a", ptr), at("a"), dim, k);
    p.b = parse_observable(require(study, "b", ptr), at("b"), dim, k);
    p.times = parse_times(require(study, "times", ptr), at("times"));
    if (p.a.support().intersects(p.b.support())) throw ConfigError(at("b"), "supports of a and b must be disjoint");
    if (!p.a.support().is_subset_of(p.volume)) throw ConfigError(at("a"), "site outside the volume");
    if (!p.b.support().is_subset_of(p.volume)) throw ConfigError(at("b"), "site outside the volume");
    p.has_volume = true;
  } else if (p.kind == "thermo_trace") {
    reject_unknown(study, {"kind", "center", "radii", "observable", "time"}, ptr);
    p.center = parse_site(def("center", Site::origin(dim).coords()), at("center"), dim);
    p.radii = int_list(require(study, "radii", ptr), at("radii"), 0);
    for (std::size_t i = 1; i < p.radii.size(); ++i) {
      if (p.radii[i] <= p.radii[i - 1]) throw ConfigError(at("radii"), "radii must be strictly increasing");
    }
    p.observable = parse_observable(require(study, "observable", ptr), at("observable"), dim, k);
    p.time = number(require(study, "time", ptr), at("time"));
    if (!p.observable.support().is_subset_of(ball(p.center, p.radii.front()))) {
      throw ConfigError(at("observable"), "observable must lie inside the smallest box");
    }
    p.volume = ball(p.center, p.radii.back());
    p.has_volume = true;
  } else if (p.kind == "gauge_check") {
    reject_unknown(study, {"kind", "perturbation", "inner", "outer", "observable", "time"}, ptr);
    p.perturbation = parse_perturbation(def("perturbation", "z"), at("perturbation"), k);
    p.inner = parse_volume(require(study, "inner", ptr), at("inner"), dim);
    p.outer = parse_volume(require(study, "outer", ptr), at("outer"), dim);
    if (!p.inner.is_subset_of(p.outer)) throw ConfigError(at("inner"), "must lie inside 'outer'");
    p.observable = parse_observable(require(study, "observable", ptr), at("observable"), dim, k);
    if (!p.observable.support().is_subset_of(p.inner)) {
      throw ConfigError(at("observable"), "observable must lie inside 'inner'");
    }
    p.time = number(require(study, "time", ptr), at("time"));
    p.volume = p.outer;
    p.has_volume = true;
  } else if (p.kind == "ground_state_scan") {
    reject_unknown(study, {"kind", "volumes", "condition_trials", "condition_seed"}, ptr);
    const json& vs = require(study, "volumes", ptr);
    if (!vs.is_array() || vs.empty()) throw ConfigError(at("volumes"), "must be a non-empty array of volumes");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      p.volumes.push_back(parse_volume(vs[i], at("volumes") + "/" + std::to_string(i), dim));
    }
    p.condition_trials = static_cast<int>(integer(def("condition_trials", 0), at("condition_trials"), 0, 100000));
    p.condition_seed = static_cast<std::uint64_t>(integer(def("condition_seed", 1), at("condition_seed"), 0, (1LL << 62)));
    p.volume = p.volumes.front();
    for (const auto& v : p.volumes) {
      if (v.size() > p.volume.size()) p.volume = v;
    }
    p.has_volume = true;
  } else if (p.kind == "cesaro_defect") {
    reject_unknown(study, {"kind", "n_values", "z", "observable", "base_radius", "anchor"}, ptr);
    p.n_values = int_list(require(study, "n_values", ptr), at("n_values"), 0);
    p.z = parse_site(def("z", Site::unit(dim, 0).coords()), at("z"), dim);
    p.observable = parse_observable(require(study, "observable", ptr), at("observable"), dim, k);
    p.base_radius = static_cast<int>(integer(require(study, "base_radius", ptr), at("base_radius"), 0, 32));
    p.anchor = parse_site(def("anchor", Site::origin(dim).coords()), at("anchor"), dim);
    if (!translate(p.observable.support(), p.z).is_subset_of(ball(p.anchor, p.base_radius))) {
      throw ConfigError(at("base_radius"), "observable shifted by z must lie inside b_anchor(base_radius)");
    }
    p.volume = ball(p.anchor, p.base_radius);
    p.has_volume = true;
  } else if (p.kind == "gns_determinism") {
    reject_unknown(study, {"kind", "volume", "shift", "intervals"}, ptr);
    p.volume = parse_volume(require(study, "volume", ptr), at("volume"), dim);
    p.shift = parse_site(def("shift", Site::unit(dim, 0).coords()), at("shift"), dim);
    const json& iv = require(study, "intervals", ptr);
    if (!iv.is_array() || iv.empty()) throw ConfigError(at("intervals"), "must be a non-empty array of [lo, hi]");
    for (std::size_t i = 0; i < iv.size(); ++i) {
      const std::string ip = at("intervals") + "/" + std::to_string(i);
      if (!iv[i].is_array() || iv[i].size() != 2) throw ConfigError(ip, "interval must be [lo, hi]");
      const double lo = number(iv[i][0], ip + "/0");
      const double hi = number(iv[i][1], ip + "/1");
      if (!(lo <= hi)) throw ConfigError(ip, "needs lo <= hi");
      p.intervals.push_back({lo, hi});
    }
    p.has_volume = true;
  } else if (p.kind == "fnorm_report") {
    reject_unknown(study, {"kind", "pair_box_radius", "truncation_radius", "volume"}, ptr);
    p.pair_box_radius = static_cast<int>(integer(def("pair_box_radius", 4), at("pair_box_radius"), 0, 200));
    p.truncation_radius = static_cast<int>(integer(def("truncation_radius", 100), at("truncation_radius"), 1, 2000));
    if (study.contains("volume")) {
      p.volume = parse_volume(study.at("volume"), at("volume"), dim);
      p.has_volume = true;
    }
  }
  return p;
}

Interaction ExperimentConfig::interaction(std::uint64_t seed) const {
  return Interaction(dim, k, germs, DisorderField(seed, law));
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  reject_unknown(j, {"dimension", "k", "interaction", "ffunction", "disorder", "study", "output", "tolerances"}, "");
  ExperimentConfig c;
  c.resolved = j;
  c.dim = j.contains("dimension") ? static_cast<int>(integer(j.at("dimension"), "/dimension", 1, 3)) : 1;
  c.k = j.contains("k") ? static_cast<int>(integer(j.at("k"), "/k", 2, 16)) : 2;
  c.resolved["dimension"] = c.dim;
  c.resolved["k"] = c.k;

  c.germs = germs_from_json(require(j, "interaction", ""), c.dim, c.k, "/interaction");

  const json& fj = require(j, "ffunction", "");
  if (!fj.is_object()) throw ConfigError("/ffunction", "must be an object");
  reject_unknown(fj, {"family", "epsilon"}, "/ffunction");
  if (fj.contains("family") && (!fj.at("family").is_string() || fj.at("family") != "power_law")) {
    throw ConfigError("/ffunction/family", "only 'power_law' is supported");
  }
  const double eps = number(require(fj, "epsilon", "/ffunction"), "/ffunction/epsilon");
  if (!(eps > 0.0)) throw ConfigError("/ffunction/epsilon", "must be positive");
  c.f = FFunction::power_law(c.dim, eps);
  c.resolved["ffunction"] = {{"family", "power_law"}, {"epsilon", eps}};

  const json& dj = require(j, "disorder", "");
  if (!dj.is_object()) throw ConfigError("/disorder", "must be an object");
  reject_unknown(dj, {"law", "seed", "seeds", "n_samples"}, "/disorder");
  try {
    c.law = law_from_json(require(dj, "law", "/disorder"));
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError("/disorder/law", e.what());
  }
  std::vector<std::uint64_t> seeds;
  if (dj.contains("seeds")) {
    if (dj.contains("seed") || dj.contains("n_samples")) {
      throw ConfigError("/disorder/seeds", "give either 'seeds' or 'seed' with 'n_samples'");
    }
    const json& s = dj.at("seeds");
    if (!s.is_array() || s.empty()) throw ConfigError("/disorder/seeds", "must be a non-empty array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      seeds.push_back(static_cast<std::uint64_t>(integer(s[i], "/disorder/seeds/" + std::to_string(i), 0, (1LL << 62))));
    }
  } else {
    const auto seed = static_cast<std::uint64_t>(integer(require(dj, "seed", "/disorder"), "/disorder/seed", 0, (1LL << 62)));
    const auto n = dj.contains("n_samples") ? integer(dj.at("n_samples"), "/disorder/n_samples", 1, 1000000) : 1;
    for (long long i = 0; i < n; ++i) seeds.push_back(seed + static_cast<std::uint64_t>(i));
    c.resolved["disorder"]["n_samples"] = n;
  }
  try {
    c.ensemble = EnsembleSpec::from_seeds(seeds);
  } catch (const InputError& e) {
    throw ConfigError("/disorder/seeds", e.what());
  }
  c.resolved["disorder"]["law"] = to_json(c.law);

  c.output = "ergospin_out";
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("/output", "must be a string");
    c.output = j.at("output").get<std::string>();
  }
  c.resolved["output"] = c.output;

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("/tolerances", "must be an object");
    for (const auto& [key, v] : t.items()) {
      const std::string tp = "/tolerances/" + key;
      if (key == "algebraic") c.tol.algebraic = number(v, tp);
      else if (key == "spectral") c.tol.spectral = number(v, tp);
      else if (key == "certificate_slack") c.tol.certificate_slack = number(v, tp);
      else if (key == "null_space") c.tol.null_space = number(v, tp);
      else if (key == "intertwining") c.tol.intertwining = number(v, tp);
      else if (key == "gauge_identity") c.tol.gauge_identity = number(v, tp);
      else if (key == "isometry") c.tol.isometry = number(v, tp);
      else if (key == "ground_condition") c.tol.ground_condition = number(v, tp);
      else if (key == "degeneracy") c.tol.degeneracy = number(v, tp);
      else if (key == "dense_cap") c.tol.dense_cap = static_cast<std::size_t>(integer(v, tp, 2, 1LL << 16));
      else if (key == "gns_max_sites") c.tol.gns_max_sites = static_cast<std::size_t>(integer(v, tp, 1, 6));
      else throw ConfigError(tp, "unknown tolerance");
    }
  }
  c.resolved["tolerances"] = {{"algebraic", c.tol.algebraic},
                              {"spectral", c.tol.spectral},
                              {"certificate_slack", c.tol.certificate_slack},
                              {"null_space", c.tol.null_space},
                              {"intertwining", c.tol.intertwining},
                              {"gauge_identity", c.tol.gauge_identity},
                              {"isometry", c.tol.isometry},
                              {"ground_condition", c.tol.ground_condition},
                              {"degeneracy", c.tol.degeneracy},
                              {"dense_cap", c.tol.dense_cap},
                              {"gns_max_sites", c.tol.gns_max_sites}};

  json study_resolved;
  const StudyPlan plan = plan_study(require(j, "study", ""), c.dim, c.k, study_resolved);
  c.kind = plan.kind;
  c.study = study_resolved;
  c.resolved["study"] = study_resolved;
  if (c.kind == "gauge_check") {
    for (const auto& g : c.germs) {
      if (g.random) throw ConfigError("/interaction", "gauge_check needs a deterministic interaction");
    }
  }
  return c;
}

json apply_overrides(json j, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("", "override '" + o + "' is not KEY=VALUE");
    std::string key = o.substr(0, eq);
    const std::string value = o.substr(eq + 1);
    if (key.front() != '/') {
      std::string ptr;
      std::stringstream ss(key);
      std::string part;
      while (std::getline(ss, part, '.')) ptr += "/" + part;
      key = ptr;
    }
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;
    try {
      j[json::json_pointer(key)] = parsed;
    } catch (const json::exception& e) {
      throw ConfigError(key, std::string("cannot apply override: ") + e.what());
    }
  }
  return j;
}

Diagnostics validate(const json& j) {
  Diagnostics d;
  try {
    const ExperimentConfig c = parse_config(j);
    json ignored;
    const StudyPlan p = plan_study(c.study, c.dim, c.k, ignored);
    std::vector<Volume> vols = p.volumes;
    if (p.has_volume) vols.push_back(p.volume);
    for (const auto& v : vols) {
      const long double dim = std::pow(static_cast<long double>(c.k), static_cast<long double>(v.size()));
      if (dim > static_cast<long double>(c.tol.dense_cap)) {
        d.warnings.push_back("volume of " + std::to_string(v.size()) + " sites needs dense dimension " +
                             std::to_string(static_cast<long double>(dim)) + ", above the cap " +
                             std::to_string(c.tol.dense_cap));
      }
    }
    if (c.kind == "gns_determinism" && p.volume.size() > c.tol.gns_max_sites) {
      d.warnings.push_back("GNS volume of " + std::to_string(p.volume.size()) + " sites exceeds gns_max_sites " +
                           std::to_string(c.tol.gns_max_sites));
    }
    if (c.kind == "cesaro_defect") {
      const long double dim = std::pow(static_cast<long double>(c.k), static_cast<long double>(p.volume.size()));
      if (dim > static_cast<long double>(c.tol.dense_cap)) {
        d.warnings.push_back("Cesaro base boxes exceed the dense cap");
      }
    }
  } catch (const ConfigError& e) {
    d.errors.push_back(e.what());
  } catch (const InputError& e) {
    d.errors.push_back(std::string(": ") + e.what());
  }
  return d;
}

}  // namespace ergospin::runner
