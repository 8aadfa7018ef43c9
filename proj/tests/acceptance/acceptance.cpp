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
// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ergospin/dynamics.hpp"
#include "ergospin/errors.hpp"
#include "ergospin/ffunction.hpp"
#include "ergospin/gns.hpp"
#include "ergospin/groundstate.hpp"
#include "ergospin/interaction.hpp"
#include "ergospin_runner/runner.hpp"

using namespace ergospin;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Standard model: XY chain, mu = 1, gamma = 0.3, centred uniform z-field.
Interaction standard_model(std::uint64_t seed) {
  return Interaction(1, 2, {germs::xy(1, 1.0, 0.3), germs::field(1, 'z')},
                     DisorderField(seed, law::Uniform{-1.0, 1.0}));
}

std::vector<std::uint64_t> seeds(std::uint64_t first, int n) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < n; ++i) out.push_back(first + static_cast<std::uint64_t>(i));
  return out;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Verdict covariance_exactness() {
  double worst = 0.0;
  int checks = 0;
  const Volume lambda = chain(6);
  for (auto seed : seeds(1, 20)) {
    const Interaction phi = standard_model(seed);
    const Matrix h0 = assemble(phi, lambda).op.matrix();
    for (int x : {-3, -1, 1, 3}) {
      const Hamiltonian hx = assemble(phi.shifted(Site{x}), translate(lambda, Site{x}));
      // tau_{-x} moves the support back without touching the matrix.
      const LocalOperator back = translate_op(hx.op, Site{-x});
      if (back.support() != lambda) return {false, "translated support mismatch"};
      worst = std::max(worst, operator_norm(h0 - back.matrix()));
      ++checks;
    }
  }
  return {worst <= 1e-14, fmt("max ||H - tau_{-x} H_shift|| = %.3g over %.0f checks", worst, checks)};
}

Verdict lieb_robinson() {
  const FFunction f = FFunction::power_law(1, 1.0);
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::x());
  const LocalOperator b = LocalOperator::at_site(Site{7}, pauli::x());
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.1 * i);
  int passed = 0;
  bool zero_at_origin = true;
  double worst_ratio = 0.0;
  for (auto seed : seeds(100, 50)) {
    const auto c = lr_certify(standard_model(seed), f, chain(8), a, b, times);
    passed += c.passed;
    zero_at_origin = zero_at_origin && c.lhs.front() == 0.0 && c.rhs.front() == 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) worst_ratio = std::max(worst_ratio, c.lhs[i] / c.rhs[i]);
  }
  return {passed == 50 && zero_at_origin,
          fmt("%.0f/50 certificates pass, max lhs/rhs = %.3g", passed, worst_ratio) +
              (zero_at_origin ? ", both sides exactly 0 at t=0" : ", t=0 sides not exactly 0")};
}

Verdict duhamel() {
  const FFunction f = FFunction::power_law(1, 1.0);
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::z());
  bool ok = true;
  double worst_ratio = 0.0;
  std::string deltas;
  for (auto seed : seeds(200, 2)) {
    const auto tr = thermo_trace(standard_model(seed), f, a, 0.5, BoxSequence(Site{0}, {2, 3, 4, 5}));
    ok = ok && tr.passed;
    const double ratio = tr.deltas.back() / tr.deltas.front();
    worst_ratio = std::max(worst_ratio, ratio);
    ok = ok && ratio < 0.1;
    for (double d : tr.deltas) deltas += fmt("%.3g ", d);
    deltas += "| ";
  }
  return {ok, "deltas " + deltas + fmt("max last/first = %.3g", worst_ratio)};
}

Verdict rough_bound() {
  const FFunction f = FFunction::power_law(1, 1.0);
  int violations = 0;
  double worst = 0.0;
  for (auto seed : seeds(300, 50)) {
    const Interaction phi = standard_model(seed);
    const auto rb = rough_norm_bound(phi, f, chain(6));
    const double norm = op_norm(assemble(phi, chain(6)).op);
    violations += norm > rb.paper_form;
    worst = std::max(worst, norm / rb.paper_form);
  }
  return {violations == 0, fmt("%.0f violations in 50 seeds, max ||H||/bound = %.3g", violations, worst)};
}

Verdict fnorm_arithmetic() {
  // Oracle: 2 zeta(3) - 1 from direct summation plus an integral tail estimate.
  double zeta = 0.0;
  const int n = 200000;
  for (int k = 1; k <= n; ++k) zeta += std::pow(static_cast<double>(k), -3.0);
  zeta += 0.5 / (static_cast<double>(n) * n);
  const double oracle = 2.0 * zeta - 1.0;
  const auto est = uniform_norm(FFunction::power_law(1, 1.0), 100);
  const double err = std::abs(est.value - oracle);
  return {err < 1e-4 && est.upper() >= oracle,
          fmt("value %.10f, 2zeta(3)-1 = %.10f, |diff| = %.3g, tail bound %.3g", est.value, oracle, err,
              est.tail_bound)};
}

Verdict ground_condition() {
  const Interaction phi = standard_model(400);
  const Hamiltonian h = assemble(phi, chain(8));
  const auto gs = ground_state(h);
  const auto rep = ground_state_condition(gs.state, phi, 200, 401);
  const auto es = hermitian_eigensystem(h.op.matrix(), true);
  const Vector top = es.complex_vectors().col(es.values.size() - 1);
  const StateFunctional excited(chain(8), 2, top * top.adjoint(), 1e-10);
  const auto control = ground_state_condition(excited, phi, 200, 401);
  const bool ok = rep.worst_violation >= -1e-8 && rep.boundary_slack == 0.0 && control.worst_violation < -1e-3;
  return {ok, fmt("ground worst %.3g (200 trials), excited-state control worst %.3g", rep.worst_violation,
                  control.worst_violation)};
}

Verdict cesaro() {
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::z());
  bool ok = true;
  double max_scaled = 0.0;
  double max_slack = 0.0;
  for (auto seed : seeds(500, 4)) {
    for (int n : {1, 2, 4, 8}) {
      const auto d = covariance_defect(standard_model(seed), n, Site{1}, a, 3, Site{0});
      const double bound = op_norm(a) * 2.0 / (2 * n + 1);
      ok = ok && d.defect <= bound + d.slack + 1e-12;
      max_scaled = std::max(max_scaled, d.defect * (2 * n + 1));
      max_slack = std::max(max_slack, d.slack);
    }
  }
  ok = ok && max_scaled <= 2.0 * op_norm(a) + 1e-9;
  return {ok, fmt("max defect*(2n+1) = %.4g (bound 2||a||), max restriction slack = %.3g", max_scaled, max_slack)};
}

struct GnsResults {
  double isometry = 0.0;
  double relative_residual = 0.0;
  double spectrum = 0.0;
  bool counts_equal = true;
  int pairs = 0;
  int intervals = 0;
};

GnsResults gns_study() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> num(-10, 80);
  std::uniform_int_distribution<int> len(1, 40);
  std::vector<Interval> iv;
  for (int i = 0; i < 10; ++i) {
    // Rational endpoints p/7 and p/7 + q/5.
    const double lo = num(rng) / 7.0;
    iv.push_back({lo, lo + len(rng) / 5.0});
  }
  GnsResults r;
  r.intervals = static_cast<int>(iv.size());
  for (int x : {1, 2}) {
    const auto rep = determinism_study(standard_model(0), chain(3), EnsembleSpec::from_seeds(seeds(600, 20)), iv,
                                       Site{x});
    for (const auto& rec : rep.records) {
      r.isometry = std::max(r.isometry, rec.isometry_residual);
      r.relative_residual = std::max(r.relative_residual, rec.residual / rec.h_norm);
      r.spectrum = std::max(r.spectrum, rec.spectrum_distance);
      r.counts_equal = r.counts_equal && rec.counts_equal;
      ++r.pairs;
    }
  }
  return r;
}

Verdict gns_intertwining(const GnsResults& r) {
  return {r.isometry <= 1e-10 && r.relative_residual <= 1e-8 && r.spectrum <= 1e-8,
          fmt("%.0f (seed, shift) pairs: max |U*U - 1| = %.3g, residual/||H|| = %.3g, spectra %.3g", r.pairs,
              r.isometry, r.relative_residual, r.spectrum)};
}

Verdict spectral_counting_shift(const GnsResults& r) {
  return {r.counts_equal, fmt("counts identical for %.0f pairs x %.0f rational intervals", r.pairs, r.intervals)};
}

Verdict gauge() {
  const Interaction phi(1, 2, {germs::xy(1, 1.0, 0.3)}, {});
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> site(-100, 100);
  std::uniform_int_distribution<std::uint64_t> seed(1, 1u << 30);
  std::uniform_real_distribution<double> time(-5.0, 5.0);
  double worst_norm = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int x = site(rng);
    const Volume z{Site{x}, Site{x + 1}};
    const DisorderField lam(seed(rng), law::Gaussian{0.0, 1.0});
    const double t = time(rng);
    worst_norm = std::max(worst_norm,
                          std::abs(op_norm(gauge_transform(phi, pauli::z(), lam, z, t)) - op_norm(phi.evaluate(z))));
  }
  double worst_residual = 0.0;
  const LocalOperator a = LocalOperator::at_site(Site{1}, pauli::x());
  for (std::uint64_t s : {1011u, 1012u}) {
    const DisorderField lam(s, law::Gaussian{0.0, 1.0});
    const auto g = gauge_identity_check(phi, pauli::z(), lam, chain(4), chain(6, -1), a, 0.7);
    worst_residual = std::max(worst_residual, g.residual);
  }
  return {worst_norm <= 1e-12 && worst_residual <= 1e-9,
          fmt("max | ||Phi~(Z,t)|| - ||Phi(Z)|| | = %.3g over 100 draws, gauge residual (L=4 in L=6) = %.3g",
              worst_norm, worst_residual)};
}

Verdict self_averaging() {
  const auto pts = energy_density_scan(standard_model(0), {4, 6, 8, 10}, EnsembleSpec::from_seeds(seeds(700, 100)));
  bool ok = true;
  std::string stds;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    stds += fmt("L=%.0f: %.4g  ", pts[i].length, pts[i].stddev);
    if (i > 0) ok = ok && pts[i].stddev < pts[i - 1].stddev;
  }
  return {ok, "std of E0/L over 100 seeds: " + stds};
}

Verdict determinism_closure() {
  namespace fs = std::filesystem;
  const nlohmann::json cfg = nlohmann::json::parse(R"({
    "interaction": {"germs": [{"kind": "xy", "mu": 1.0, "gamma": 0.3}, {"kind": "field"}]},
    "ffunction": {"epsilon": 1.0},
    "disorder": {"law": {"uniform": [-1.0, 1.0]}, "seed": 1200, "n_samples": 6},
    "study": {"kind": "gns_determinism", "volume": {"chain": 3}, "shift": [1],
              "intervals": [[-0.5, 0.5], [0.25, 3.0], [1.0, 6.0]]}
  })");
  const auto config = runner::parse_config(cfg);
  const fs::path root = fs::temp_directory_path() / "ergospin_acceptance";
  fs::remove_all(root);
  runner::run(config, root / "first", 1);
  runner::run(config, root / "second", 2);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  bool same = true;
  std::size_t bytes = 0;
  for (const char* name : {"gns_determinism.csv", "gns_determinism.json"}) {
    const std::string a = slurp(root / "first" / name);
    same = same && !a.empty() && a == slurp(root / "second" / name);
    bytes += a.size();
  }
  fs::remove_all(root);
  return {same, fmt("two runs (1 and 2 workers) byte-identical: %.0f bytes compared", static_cast<double>(bytes))};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0 means no runtime limit
    std::function<Verdict()> run;
  };
  GnsResults gns;
  const std::vector<Criterion> criteria{
      {1, "covariance exactness", 10, covariance_exactness},
      {2, "Lieb-Robinson certification", 300, lieb_robinson},
      {3, "Duhamel convergence", 120, duhamel},
      {4, "rough norm bound", 0, rough_bound},
      {5, "F-norm arithmetic", 0, fnorm_arithmetic},
      {6, "ground-state condition", 0, ground_condition},
      {7, "Cesaro covariance defect", 0, cesaro},
      {8, "GNS intertwining", 120,
       [&] {
         gns = gns_study();
         return gns_intertwining(gns);
       }},
      {9, "spectral counting shift-invariance", 0, [&] { return spectral_counting_shift(gns); }},
      {10, "gauge identity", 0, gauge},
      {11, "self-averaging trend", 600, self_averaging},
      {12, "determinism closure", 0, determinism_closure},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      v.pass = false;
      v.detail += fmt(" (runtime limit %.0f s exceeded)", c.limit_seconds);
    }
    failures += !v.pass;
    std::printf("[%s] %2d %-36s %8.2f s  %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
