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

#include "ergospin/dynamics.hpp"
#include "ergospin/errors.hpp"
#include "ergospin/ffunction.hpp"
#include "ergospin/gns.hpp"
#include "ergospin/groundstate.hpp"
#include "ergospin/interaction.hpp"
#include "plan.hpp"

namespace ergospin::runner {

namespace {

using nlohmann::json;

std::string fmt(double v) { return format_double(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(long long v) { return std::to_string(v); }

GnsOptions gns_options(const Tolerances& tol) {
  GnsOptions o;
  o.null_space = tol.null_space;
  o.max_sites = tol.gns_max_sites;
  return o;
}

// The convolution witness scans y in b_0(R) and z in b_0(3R); keep that finite in higher dimension.
int witness_radius(int dim, int truncation) {
  const int cap = dim == 1 ? truncation : (dim == 2 ? 12 : 4);
  return std::min(truncation, cap);
}

SeedOutcome lr(const ExperimentConfig& c, const StudyPlan& p, const Interaction& phi) {
  SeedOutcome out;
  const auto cert = lr_certify(phi, c.f, p.volume, p.a, p.b, p.times, static_cast<long long>(c.tol.dense_cap),
                               c.tol.certificate_slack);
  for (std::size_t i = 0; i < cert.time_grid.size(); ++i) {
    out.rows.push_back({fmt(cert.time_grid[i]), fmt(cert.lhs[i]), fmt(cert.rhs[i]), fmt(cert.lhs[i] <= cert.rhs[i] + c.tol.certificate_slack)});
  }
  out.detail = to_json(cert);
  out.passed = cert.passed;
  return out;
}

SeedOutcome trace(const ExperimentConfig& c, const StudyPlan& p, const Interaction& phi) {
  SeedOutcome out;
  const auto tr = thermo_trace(phi, c.f, p.observable, p.time, BoxSequence(p.center, p.radii),
                               static_cast<long long>(c.tol.dense_cap), c.tol.certificate_slack);
  for (std::size_t i = 0; i < tr.deltas.size(); ++i) {
    out.rows.push_back({fmt(static_cast<long long>(p.radii[i])), fmt(static_cast<long long>(p.radii[i + 1])),
                        fmt(tr.deltas[i]), fmt(tr.duhamel_bounds[i]),
                        fmt(tr.deltas[i] <= tr.duhamel_bounds[i] + c.tol.certificate_slack)});
  }
  out.detail = to_json(tr);
  out.passed = tr.passed;
  return out;
}

SeedOutcome gauge(const ExperimentConfig& c, const StudyPlan& p, const Interaction& phi, std::uint64_t seed) {
  SeedOutcome out;
  const DisorderField field(seed, c.law);
  const auto g = gauge_identity_check(phi, p.perturbation, field, p.inner, p.outer, p.observable, p.time,
                                      static_cast<long long>(c.tol.dense_cap));
  const bool ok = g.residual <= c.tol.gauge_identity * std::max(1.0, g.direct);
  out.rows.push_back({fmt(g.direct), fmt(g.gauged), fmt(g.residual), fmt(static_cast<long long>(g.steps)),
                      fmt(g.integration_error), fmt(ok)});
  out.detail = to_json(g);
  out.passed = ok;
  return out;
}

SeedOutcome scan(const ExperimentConfig& c, const StudyPlan& p, const Interaction& phi, std::uint64_t seed) {
  SeedOutcome out;
  out.detail = json::array();
  for (const auto& v : p.volumes) {
    const Hamiltonian h = assemble(phi, v, static_cast<long long>(c.tol.dense_cap));
    const auto gs = ground_state(h, c.tol.degeneracy * std::max(1.0, op_norm(h.op)));
    json d{{"volume", v},
           {"energy", gs.energy},
           {"energy_density", gs.energy / static_cast<double>(v.size())},
           {"gap", gs.gap},
           {"multiplicity", gs.multiplicity}};
    double worst = 0.0;
    bool ok = true;
    if (p.condition_trials > 0) {
      const auto rep = ground_state_condition(gs.state, phi, p.condition_trials, p.condition_seed ^ seed,
                                              c.tol.ground_condition);
      worst = rep.worst_violation;
      ok = rep.passed;
      d["condition"] = to_json(rep);
    }
    out.passed = out.passed && ok;
    out.rows.push_back({fmt(static_cast<long long>(v.size())), fmt(gs.energy),
                        fmt(gs.energy / static_cast<double>(v.size())), fmt(gs.gap),
                        fmt(static_cast<long long>(gs.multiplicity)), fmt(worst), fmt(ok)});
    out.detail.push_back(std::move(d));
  }
  return out;
}

SeedOutcome cesaro(const ExperimentConfig& c, const StudyPlan& p, const Interaction& phi) {
  SeedOutcome out;
  out.detail = json::array();
  for (int n : p.n_values) {
    const auto d = covariance_defect(phi, n, p.z, p.observable, p.base_radius, p.anchor,
                                     static_cast<long long>(c.tol.dense_cap), c.tol.certificate_slack);
    out.rows.push_back({fmt(static_cast<long long>(n)), fmt(d.defect), fmt(d.bound), fmt(d.slack), fmt(d.passed)});
    out.detail.push_back(to_json(d));
    out.passed = out.passed && d.passed;
  }
  return out;
}

SeedOutcome gns(const ExperimentConfig& c, const StudyPlan& p, const Interaction& phi, std::uint64_t seed) {
  SeedOutcome out;
  const auto rep = determinism_study(phi, p.volume, EnsembleSpec::from_seeds({seed}), p.intervals, p.shift,
                                     gns_options(c.tol));
  const auto& r = rep.records.front();
  const double rel = r.residual / std::max(1.0, r.h_norm);
  const bool ok = r.counts_equal && rel <= c.tol.intertwining;
  for (std::size_t i = 0; i < p.intervals.size(); ++i) {
    out.rows.push_back({fmt(p.intervals[i].lo), fmt(p.intervals[i].hi), fmt(static_cast<long long>(r.counts_src[i])),
                        fmt(static_cast<long long>(r.counts_dst[i])), fmt(rel), fmt(r.ground_energy_density),
                        fmt(ok)});
  }
  out.detail = to_json(r);
  out.passed = ok;
  return out;
}

SeedOutcome fnorm(const ExperimentConfig& c, const StudyPlan& p, const Interaction& phi) {
  SeedOutcome out;
  const auto nf = f_norm(phi, c.f, p.pair_box_radius);
  const auto un = uniform_norm(c.f, p.truncation_radius);
  const auto cf = convolution_constant(c.f, witness_radius(c.dim, p.truncation_radius));
  json d{{"f_norm", to_json(nf)}, {"uniform_norm", to_json(un)}, {"convolution", to_json(cf)}};
  std::string paper = "", exact = "";
  if (p.has_volume) {
    const auto rb = rough_norm_bound(nf.value, c.f, p.volume);
    d["rough_bound"] = {{"paper_form", json_number(rb.paper_form)}, {"exact_count", json_number(rb.exact_count)}};
    paper = fmt(rb.paper_form);
    exact = fmt(rb.exact_count);
  }
  out.rows.push_back({fmt(nf.value), fmt(un.value), fmt(un.tail_bound), fmt(cf.witness), fmt(cf.analytic_bound),
                      paper, exact});
  out.detail = std::move(d);
  return out;
}

}  // namespace

std::string format_site(const Site& s) {
  std::string out;
  for (int i = 0; i < s.dim(); ++i) {
    if (i) out += ';';
    out += std::to_string(s[i]);
  }
  return out;
}

std::vector<std::string> csv_header(const std::string& kind) {
  if (kind == "lr_certify") return {"time", "lhs", "rhs", "passed"};
  if (kind == "thermo_trace") return {"radius_inner", "radius_outer", "delta", "duhamel_bound", "passed"};
  if (kind == "gauge_check") return {"direct", "gauged", "residual", "steps", "integration_error", "passed"};
  if (kind == "ground_state_scan") {
    return {"sites", "energy", "energy_density", "gap", "multiplicity", "worst_condition", "passed"};
  }
  if (kind == "cesaro_defect") return {"n", "defect", "bound", "slack", "passed"};
  if (kind == "gns_determinism") {
    return {"lo", "hi", "count_src", "count_dst", "relative_residual", "energy_density", "passed"};
  }
  if (kind == "fnorm_report") {
    return {"f_norm", "uniform_norm", "tail_bound", "cf_witness", "cf_analytic", "rough_paper_form", "rough_exact"};
  }
  throw InputError("unknown study kind '" + kind + "'");
}

SeedOutcome run_seed(const ExperimentConfig& c, const StudyPlan& p, std::uint64_t seed) {
  const Interaction phi = c.interaction(seed);
  SeedOutcome out;
  if (p.kind == "lr_certify") out = lr(c, p, phi);
  else if (p.kind == "thermo_trace") out = trace(c, p, phi);
  else if (p.kind == "gauge_check") out = gauge(c, p, phi, seed);
  else if (p.kind == "ground_state_scan") out = scan(c, p, phi, seed);
  else if (p.kind == "cesaro_defect") out = cesaro(c, p, phi);
  else if (p.kind == "gns_determinism") out = gns(c, p, phi, seed);
  else if (p.kind == "fnorm_report") out = fnorm(c, p, phi);
  else throw InputError("unknown study kind '" + p.kind + "'");
  out.seed = seed;
  return out;
}

}  // namespace ergospin::runner
