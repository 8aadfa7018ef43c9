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
#include "ergospin/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ergospin/errors.hpp"
#include "ergospin/linalg.hpp"

namespace ergospin {

namespace {

Site offset_of(const DisorderField& f, int dim) {
  return f.offset().empty() ? Site::origin(dim) : Site(f.offset());
}

std::string describe(const Volume& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << '(';
    for (int j = 0; j < v[i].dim(); ++j) os << (j ? "," : "") << v[i][j];
    os << ')';
  }
  os << '}';
  return os.str();
}

}  // namespace

GroundStateResult ground_state(const Hamiltonian& h, std::optional<double> tol_gap) {
  if (!h.op.is_self_adjoint()) throw ConstructionError("Hamiltonian is not self-adjoint");
  const auto es = hermitian_eigensystem(h.op.matrix(), true);
  const RealVector& e = es.values;
  const Eigen::Index d = e.size();
  const double norm = std::max(std::abs(e(0)), std::abs(e(d - 1)));
  const double tol = tol_gap.value_or(1e-10 * norm);
  if (tol < 0.0) throw InputError("gap tolerance must be non-negative");

  GroundStateResult r;
  r.energy = e(0);
  Eigen::Index m = 1;
  while (m < d && e(m) - e(0) <= tol) ++m;
  r.multiplicity = static_cast<int>(m);
  r.degenerate = m > 1;
  r.gap = m < d ? e(m) - e(0) : 0.0;

  Matrix rho;
  if (es.real) {
    const RealMatrix v0 = es.real_vectors.leftCols(m);
    rho = (v0 * v0.transpose() / static_cast<double>(m)).cast<Complex>();
  } else {
    const Matrix v0 = es.vectors.leftCols(m);
    rho = v0 * v0.adjoint() / static_cast<double>(m);
  }
  rho = 0.5 * (rho + rho.adjoint());
  r.state = StateFunctional(h.volume, h.op.k(), std::move(rho), 1e-10);
  return r;
}

StateFunctional thermal_state(const Hamiltonian& h, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InputError("beta must be finite and >= 0");
  const auto es = hermitian_eigensystem(h.op.matrix(), true);
  Vector w(es.values.size());
  double z = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double x = std::exp(-beta * (es.values(i) - es.values(0)));
    w(i) = x;
    z += x;
  }
  Matrix rho = reconstruct(es, w / z);
  rho = 0.5 * (rho + rho.adjoint());
  return StateFunctional(h.volume, h.op.k(), std::move(rho), 1e-10);
}

DerivationImage derivation(const Interaction& interaction, const Volume& env, const LocalOperator& a) {
  const auto terms = interaction.terms_meeting(a.support());
  Volume support = a.support();
  for (const auto& [z, t] : terms) {
    if (!z.is_subset_of(env)) {
      throw InputError("interaction term on " + describe(z) + " is not inside the environment volume");
    }
    support = support.join(z);
  }
  const LocalOperator ea = embed(a, support);
  const Eigen::Index d = ea.dimension();
  Matrix hz = Matrix::Zero(d, d);
  for (const auto& [z, t] : terms) accumulate_embedded(hz, support, t);
  const Complex i(0.0, 1.0);
  Matrix out = i * (hz * ea.matrix() - ea.matrix() * hz);
  return DerivationImage{a, LocalOperator(support, a.k(), std::move(out))};
}

ConditionValue condition_value(const StateFunctional& state, const Interaction& interaction,
                               const LocalOperator& a) {
  const Volume& lambda = state.volume();
  if (!a.support().is_subset_of(lambda)) throw InputError("observable must lie in the state's volume");
  ConditionValue out;
  const double norm_a = op_norm(a);
  Volume support = a.support();
  std::vector<const LocalOperator*> used;
  const auto terms = interaction.terms_meeting(a.support());
  for (const auto& [z, t] : terms) {
    if (z.is_subset_of(lambda)) {
      used.push_back(&t);
      support = support.join(z);
    } else {
      out.slack += 2.0 * op_norm(t) * norm_a * norm_a;
    }
  }
  const LocalOperator ea = embed(a, support);
  const Eigen::Index d = ea.dimension();
  Matrix hz = Matrix::Zero(d, d);
  for (const auto* t : used) accumulate_embedded(hz, support, *t);
  const Complex i(0.0, 1.0);
  const Matrix delta = i * (hz * ea.matrix() - ea.matrix() * hz);
  const LocalOperator probe(support, a.k(), ea.matrix().adjoint() * delta);
  out.value = (-i * state(probe)).real();
  return out;
}

std::vector<Site> interior_sites(const Volume& v, int range) {
  std::vector<Site> out;
  for (const auto& x : v) {
    bool inside = true;
    for_each_in_ball(x, range, [&](const Site& y) { inside = inside && v.contains(y); });
    if (inside) out.push_back(x);
  }
  return out;
}

LocalOperator random_observable(const Site& x, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  }
  m /= operator_norm(m);
  return LocalOperator::at_site(x, m);
}

GroundConditionReport ground_state_condition(const StateFunctional& state, const Interaction& interaction,
                                             int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw InputError("trials must be >= 1");
  const auto sites = interior_sites(state.volume(), interaction.range());
  if (sites.empty()) throw InputError("state volume has no interior sites for this interaction range");
  std::mt19937_64 rng(seed);
  GroundConditionReport r;
  r.trials = trials;
  r.worst_violation = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Site& x = sites[static_cast<std::size_t>(rng() % sites.size())];
    const LocalOperator a = random_observable(x, state.k(), rng());
    const ConditionValue v = condition_value(state, interaction, a);
    r.values.push_back(v.value);
    r.worst_violation = std::min(r.worst_violation, v.value);
    r.boundary_slack = std::max(r.boundary_slack, v.slack);
  }
  r.passed = r.worst_violation >= -tol - r.boundary_slack;
  return r;
}

AveragedState cesaro_average(const Interaction& interaction, int n, const Volume& eval_volume,
                             int base_radius, const Site& anchor, long long cap) {
  if (n < 0) throw InputError("averaging radius must be non-negative");
  if (base_radius < 0) throw InputError("base box radius must be non-negative");
  const int dim = interaction.dim();
  const Site center = anchor - offset_of(interaction.field(), dim);
  if (!eval_volume.is_subset_of(ball(center, base_radius))) {
    throw InputError("evaluation volume escapes the base box b_{anchor - offset}(R)");
  }
  AveragedState out;
  out.n = n;
  Matrix sum;
  std::size_t count = 0;
  for_each_in_ball(Site::origin(dim), n, [&](const Site& p) {
    const Interaction shifted = interaction.shifted(p);
    const Volume box = ball(anchor - offset_of(shifted.field(), dim), base_radius);
    const GroundStateResult gs = ground_state(assemble(shifted, box, cap));
    const StateFunctional pulled = gs.state.translated(p).restrict_to(eval_volume);
    if (sum.size() == 0) {
      sum = pulled.rho();
    } else {
      sum += pulled.rho();
    }
    ++count;
    out.base_states.emplace(p, pulled);
  });
  Matrix rho = sum / static_cast<double>(count);
  rho = 0.5 * (rho + rho.adjoint());
  out.combined = StateFunctional(eval_volume, interaction.k(), std::move(rho), 1e-10);
  return out;
}

CovarianceDefect covariance_defect(const Interaction& interaction, int n, const Site& z,
                                   const LocalOperator& a, int base_radius, const Site& anchor,
                                   long long cap, double tol) {
  const Volume x = a.support();
  const Volume xz = translate(x, z);
  const LocalOperator az = translate_op(a, z);
  const AveragedState shifted = cesaro_average(interaction.shifted(z), n, x, base_radius, anchor, cap);
  const AveragedState plain = cesaro_average(interaction, n, xz, base_radius, anchor, cap);

  CovarianceDefect d;
  d.n = n;
  const Complex lhs = shifted.combined(a);
  const Complex rhs = plain.combined(az);
  d.defect = std::abs(lhs - rhs);

  const Volume b0 = ball(Site::origin(interaction.dim()), n);
  const Volume bz = ball(z, n);
  d.bound = op_norm(a) * static_cast<double>(symmetric_difference(b0, bz).size()) /
            static_cast<double>(b0.size());

  // Both averages share the summands g(q) = gamma_{theta_{q+z} w} o tau_{-q}(a);
  // only the boundary terms survive the difference.
  Complex boundary = 0.0;
  for (const auto& [p, st] : shifted.base_states) {
    if (!b0.contains(p + z)) boundary += st(a);
  }
  for (const auto& [p, st] : plain.base_states) {
    if (!b0.contains(p - z)) boundary -= st(az);
  }
  d.slack = std::abs(d.defect - std::abs(boundary) / static_cast<double>(b0.size()));
  d.passed = d.defect <= d.bound + d.slack + tol;
  return d;
}

nlohmann::json to_json(const CovarianceDefect& d) {
  return {{"n", d.n}, {"defect", d.defect}, {"bound", d.bound}, {"slack", d.slack}, {"passed", d.passed}};
}

nlohmann::json to_json(const GroundConditionReport& r) {
  return {{"worst_violation", r.worst_violation},
          {"boundary_slack", r.boundary_slack},
          {"trials", r.trials},
          {"passed", r.passed}};
}

}  // namespace ergospin
