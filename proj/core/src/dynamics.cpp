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
#include "ergospin/dynamics.hpp"

#include <cmath>
#include <limits>

#include "ergospin/errors.hpp"

namespace ergospin {

namespace {

double f_double_sum(const FFunction& f, const Volume& x, const Volume& y) {
  double s = 0.0;
  for (const auto& p : x) {
    for (const auto& q : y) s += f(distance(p, q));
  }
  return s;
}

Vector phases(const RealVector& e, double t) {
  Vector p(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) p(i) = std::polar(1.0, t * e(i));
  return p;
}

Matrix hermitian_exp(const Matrix& k, double s) {
  // e^{i s K} for Hermitian K.
  const auto es = hermitian_eigensystem(k, true);
  return reconstruct(es, phases(es.values, s));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

Propagator::Propagator(const Hamiltonian& h) : volume_(h.volume), k_(h.op.k()) {
  if (!h.op.is_self_adjoint()) throw ConstructionError("Hamiltonian is not self-adjoint");
  es_ = hermitian_eigensystem(h.op.matrix(), true);
}

Matrix Propagator::to_eigenbasis(const Matrix& a) const {
  if (es_.real) return times_real(real_times(es_.real_vectors.transpose(), a), es_.real_vectors);
  return es_.vectors.adjoint() * a * es_.vectors;
}

Matrix Propagator::from_eigenbasis(const Matrix& a) const {
  if (es_.real) return times_real(real_times(es_.real_vectors, a), es_.real_vectors.transpose());
  return es_.vectors * a * es_.vectors.adjoint();
}

LocalOperator Propagator::evolve(const LocalOperator& a, double t) const {
  return evolve(a, std::vector<double>{t}).front();
}

std::vector<LocalOperator> Propagator::evolve(const LocalOperator& a,
                                              const std::vector<double>& times) const {
  if (a.k() != k_) throw InputError("observable and Hamiltonian have different on-site dimensions");
  const LocalOperator ea = embed(a, volume_);
  std::vector<LocalOperator> out;
  out.reserve(times.size());
  Matrix rotated;
  for (double t : times) {
    if (t == 0.0) {
      out.push_back(ea);
      continue;
    }
    if (rotated.size() == 0) rotated = to_eigenbasis(ea.matrix());
    const Vector p = phases(es_.values, t);
    Matrix m = p.asDiagonal() * rotated * p.conjugate().asDiagonal();
    out.emplace_back(volume_, k_, from_eigenbasis(m));
  }
  return out;
}

Matrix Propagator::unitary(double t) const { return reconstruct(es_, phases(es_.values, -t)); }

EvolvedObservable evolve(const Hamiltonian& h, const LocalOperator& a, double t) {
  const Propagator p(h);
  return EvolvedObservable{a, h.volume, t, p.evolve(a, t)};
}

double lr_bound(double norm_a, double norm_b, double f_norm, double cf, double f_sum, double t) {
  if (t == 0.0 || f_norm == 0.0 || f_sum == 0.0 || norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return norm_a * norm_b / cf * std::expm1(f_norm * cf * std::abs(t)) * f_sum;
}

LRCertificate lr_certify(const Interaction& interaction, const FFunction& f, const Volume& lambda,
                         const LocalOperator& a, const LocalOperator& b,
                         const std::vector<double>& times, long long cap, double slack) {
  if (a.support().intersects(b.support())) throw InputError("observable supports must be disjoint");
  if (!a.support().is_subset_of(lambda) || !b.support().is_subset_of(lambda)) {
    throw InputError("observable supports must lie inside the volume");
  }
  const Hamiltonian h = assemble(interaction, lambda, cap);
  const Propagator prop(h);

  LRCertificate c;
  c.a_support = a.support();
  c.b_support = b.support();
  c.time_grid = times;
  c.f_norm = f_norm(interaction, f, lambda).value;
  c.cf_bound = convolution_bound(f);
  c.f_sum = f_double_sum(f, a.support(), b.support());
  c.norm_a = op_norm(a);
  c.norm_b = op_norm(b);

  const Matrix eb = embed(b, lambda).matrix();
  const auto evolved = prop.evolve(a, times);
  c.passed = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Matrix& at = evolved[i].matrix();
    const double lhs = operator_norm(eb * at - at * eb);
    const double rhs = lr_bound(c.norm_a, c.norm_b, c.f_norm, c.cf_bound, c.f_sum, times[i]);
    c.lhs.push_back(lhs);
    c.rhs.push_back(rhs);
    if (!(lhs <= rhs * (1.0 + slack))) c.passed = false;
  }
  return c;
}

ConvergenceTrace thermo_trace(const Interaction& interaction, const FFunction& f,
                              const LocalOperator& a, double t, const BoxSequence& boxes,
                              long long cap, double slack) {
  const auto volumes = boxes.volumes();
  if (!a.support().is_subset_of(volumes.front())) {
    throw InputError("observable support must lie inside the smallest box");
  }
  checked_dimension(volumes.back(), interaction.k(), cap);

  ConvergenceTrace tr;
  tr.observable = a;
  tr.time = t;
  tr.volumes = volumes;
  tr.f_norm = f_norm(interaction, f, volumes.back()).value;
  tr.cf_bound = convolution_bound(f);
  const double norm_a = op_norm(a);
  const double growth =
      tr.f_norm == 0.0 ? 0.0 : std::expm1(tr.f_norm * tr.cf_bound * std::abs(t)) / tr.cf_bound;

  std::vector<LocalOperator> evolved;
  for (const auto& v : volumes) {
    const Propagator p(assemble(interaction, v, cap));
    evolved.push_back(p.evolve(a, t));
  }
  tr.passed = true;
  for (std::size_t i = 1; i < volumes.size(); ++i) {
    const Matrix diff = evolved[i].matrix() - embed(evolved[i - 1], volumes[i]).matrix();
    const double delta = operator_norm(diff);
    double bound = norm_a * growth * f_double_sum(f, a.support(), volumes[i].minus(volumes[i - 1]));
    const auto outer = interaction.terms_within(volumes[i]);
    for (const auto& [z, term] : outer) {
      if (z.is_subset_of(volumes[i - 1]) || !z.intersects(a.support())) continue;
      bound += 2.0 * norm_a * op_norm(term) * std::abs(t);
    }
    tr.deltas.push_back(delta);
    tr.duhamel_bounds.push_back(bound);
    if (!(delta <= bound * (1.0 + slack))) tr.passed = false;
  }
  return tr;
}

LocalOperator gauge_unitary(const Matrix& v, const DisorderField& field, const Volume& z, double t) {
  if (v.rows() != v.cols()) throw InputError("gauge generator must be square");
  if (hermiticity_defect(v) > 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff())) {
    throw InputError("gauge generator must be Hermitian");
  }
  const auto es = hermitian_eigensystem(v, true);
  Matrix u = Matrix::Identity(1, 1);
  for (const auto& x : z) {
    u = kron(u, reconstruct(es, phases(es.values, t * field.sample(x))));
  }
  return LocalOperator(z, static_cast<int>(v.rows()), std::move(u));
}

LocalOperator gauge_transform(const Interaction& phi, const Matrix& v, const DisorderField& field,
                              const Volume& z, double t) {
  if (!phi.deterministic()) throw InputError("gauge transforms need a deterministic interaction");
  bool matches = false;
  for (const auto& g : phi.germs()) {
    if (g.shape.size() == z.size() && translate(g.shape, z[0] - g.shape[0]) == z) matches = true;
  }
  if (!matches) throw InputError("set is not a translate of any germ shape");
  const LocalOperator term = phi.evaluate(z);
  if (t == 0.0) return term;
  const LocalOperator u = gauge_unitary(v, field, z, t);
  return LocalOperator(z, term.k(), u.matrix().adjoint() * term.matrix() * u.matrix());
}

namespace {

struct GaugedEvolution {
  Matrix g;
  int steps = 0;
  double error = 0.0;
};

// G(t) with dG/ds = i H~(s) G, G(0) = 1, where H~(s) = sum_Z Phi~(Z, s).
GaugedEvolution integrate_gauged(const Interaction& phi, const Matrix& v, const DisorderField& field,
                                 const Volume& lambda, double t, long long cap, double tol) {
  const Eigen::Index d = checked_dimension(lambda, phi.k(), cap);
  const auto terms = phi.terms_within(lambda);
  auto generator = [&](double s) {
    Matrix h = Matrix::Zero(d, d);
    for (const auto& [z, term] : terms) {
      const LocalOperator u = gauge_unitary(v, field, z, s);
      const LocalOperator rotated(z, term.k(), u.matrix().adjoint() * term.matrix() * u.matrix());
      accumulate_embedded(h, lambda, rotated);
    }
    return h;
  };
  auto run = [&](int n) {
    const double h = t / n;
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
    const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
    Matrix g = Matrix::Identity(d, d);
    for (int i = 0; i < n; ++i) {
      const double s = i * h;
      const Matrix h1 = generator(s + c1 * h);
      const Matrix h2 = generator(s + c2 * h);
      // Omega = h/2 (A1 + A2) - (sqrt3/12) h^2 [A1, A2] with A = iH, written as
      // Omega = i K, K = h/2 (H1 + H2) - i (sqrt3/12) h^2 [H1, H2].
      Matrix k = 0.5 * h * (h1 + h2) -
                 Complex(0.0, std::sqrt(3.0) / 12.0 * h * h) * (h1 * h2 - h2 * h1);
      k = 0.5 * (k + k.adjoint());
      g = hermitian_exp(k, 1.0) * g;
    }
    return g;
  };
  GaugedEvolution out;
  if (t == 0.0) {
    out.g = Matrix::Identity(d, d);
    return out;
  }
  int n = 16;
  Matrix prev = run(n);
  while (true) {
    Matrix next = run(2 * n);
    out.error = max_abs_diff(prev, next);
    n *= 2;
    if (out.error < tol || n >= (1 << 16)) {
      out.g = std::move(next);
      out.steps = n;
      return out;
    }
    prev = std::move(next);
  }
}

}  // namespace

GaugeCheck gauge_identity_check(const Interaction& phi, const Matrix& v, const DisorderField& field,
                                const Volume& inner, const Volume& outer, const LocalOperator& a,
                                double t, long long cap, double integration_tol) {
  if (!inner.is_subset_of(outer)) throw InputError("inner volume must lie inside the outer volume");
  if (!a.support().is_subset_of(inner)) throw InputError("observable must lie inside the inner volume");
  const Interaction psi = perturb_with_field(phi, v, field);

  GaugeCheck out;
  {
    const Propagator pn(assemble(psi, outer, cap));
    const Propagator pm(assemble(psi, inner, cap));
    const Matrix diff = pn.evolve(a, t).matrix() - embed(pm.evolve(a, t), outer).matrix();
    out.direct = operator_norm(diff);
  }
  {
    const auto gn = integrate_gauged(phi, v, field, outer, t, cap, integration_tol);
    const auto gm = integrate_gauged(phi, v, field, inner, t, cap, integration_tol);
    const Matrix an = embed(a, outer).matrix();
    const Matrix am = embed(a, inner).matrix();
    const LocalOperator evolved_m(inner, a.k(), gm.g * am * gm.g.adjoint());
    const Matrix diff = gn.g * an * gn.g.adjoint() - embed(evolved_m, outer).matrix();
    out.gauged = operator_norm(diff);
    out.steps = gn.steps;
    out.integration_error = std::max(gn.error, gm.error);
  }
  out.residual = std::abs(out.direct - out.gauged);
  return out;
}

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

nlohmann::json json_numbers(const std::vector<double>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (double x : v) out.push_back(json_number(x));
  return out;
}

nlohmann::json volume_json(const Volume& v) {
  nlohmann::json j;
  ergospin::to_json(j, v);
  return j;
}

}  // namespace

nlohmann::json to_json(const LRCertificate& c) {
  return {{"a_support", volume_json(c.a_support)},
          {"b_support", volume_json(c.b_support)},
          {"time_grid", json_numbers(c.time_grid)},
          {"lhs", json_numbers(c.lhs)},
          {"rhs", json_numbers(c.rhs)},
          {"cf_bound", json_number(c.cf_bound)},
          {"f_norm", json_number(c.f_norm)},
          {"f_sum", json_number(c.f_sum)},
          {"passed", c.passed}};
}

nlohmann::json to_json(const ConvergenceTrace& c) {
  nlohmann::json vols = nlohmann::json::array();
  for (const auto& v : c.volumes) vols.push_back(volume_json(v));
  return {{"time", c.time},
          {"observable_support", volume_json(c.observable.support())},
          {"volumes", vols},
          {"f_norm", json_number(c.f_norm)},
          {"cf_bound", json_number(c.cf_bound)},
          {"deltas", json_numbers(c.deltas)},
          {"duhamel_bounds", json_numbers(c.duhamel_bounds)},
          {"passed", c.passed}};
}

nlohmann::json to_json(const GaugeCheck& g) {
  return {{"direct", json_number(g.direct)},
          {"gauged", json_number(g.gauged)},
          {"residual", json_number(g.residual)},
          {"steps", g.steps},
          {"integration_error", json_number(g.integration_error)}};
}

}  // namespace ergospin
