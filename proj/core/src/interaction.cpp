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
#include "ergospin/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ergospin/errors.hpp"

namespace ergospin {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix pauli_axis(char axis) {
  switch (axis) {
    case 'x':
      return pauli::x();
    case 'y':
      return pauli::y();
    case 'z':
      return pauli::z();
    default:
      throw InputError(std::string("unknown Pauli axis '") + axis + "'");
  }
}

Volume bond_shape(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw InputError("bond direction out of range");
  return Volume{Site::origin(dim), Site::unit(dim, axis)};
}

Germ pair_germ(std::string kind, int dim, int axis, Matrix m, nlohmann::json params) {
  Germ g;
  g.kind = std::move(kind);
  g.shape = bond_shape(dim, axis);
  g.random = false;
  g.builder = [m = std::move(m)](const std::vector<double>&) { return m; };
  g.params = std::move(params);
  return g;
}

}  // namespace

namespace germs {

Germ field(int dim, char axis, double scale) {
  const Matrix s = pauli_axis(axis) * scale;
  Germ g;
  g.kind = "field";
  g.shape = Volume{Site::origin(dim)};
  g.random = true;
  g.builder = [s](const std::vector<double>& d) -> Matrix { return d[0] * s; };
  g.params = {{"axis", std::string(1, axis)}, {"scale", scale}};
  return g;
}

Germ onsite(int dim, const Matrix& v, bool random) {
  if (v.rows() != v.cols() || v.rows() < 2) throw InputError("one-site operator must be k x k");
  if (hermiticity_defect(v) > 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff())) {
    throw InputError("one-site operator must be Hermitian");
  }
  Germ g;
  g.kind = "onsite";
  g.shape = Volume{Site::origin(dim)};
  g.random = random;
  if (random) {
    g.builder = [v](const std::vector<double>& d) -> Matrix { return d[0] * v; };
  } else {
    g.builder = [v](const std::vector<double>&) -> Matrix { return v; };
  }
  g.params = {{"random", random}};
  return g;
}

Germ xy(int dim, double mu, double gamma, int axis, bool random_coupling) {
  const Matrix m = mu * ((1.0 + gamma) * kron(pauli::x(), pauli::x()) +
                         (1.0 - gamma) * kron(pauli::y(), pauli::y()));
  Germ g = pair_germ("xy", dim, axis, m,
                     {{"mu", mu}, {"gamma", gamma}, {"direction", axis}, {"random", random_coupling}});
  if (random_coupling) {
    g.random = true;
    g.builder = [m](const std::vector<double>& d) -> Matrix { return d[0] * m; };
  }
  return g;
}

Germ xxz(int dim, double jxy, double delta, int axis) {
  const Matrix m = jxy * (kron(pauli::x(), pauli::x()) + kron(pauli::y(), pauli::y())) +
                   delta * kron(pauli::z(), pauli::z());
  return pair_germ("xxz", dim, axis, m, {{"jxy", jxy}, {"delta", delta}, {"direction", axis}});
}

Germ heisenberg(int dim, double j, int axis) {
  const Matrix m = j * (kron(pauli::x(), pauli::x()) + kron(pauli::y(), pauli::y()) +
                        kron(pauli::z(), pauli::z()));
  return pair_germ("heisenberg", dim, axis, m, {{"j", j}, {"direction", axis}});
}

}  // namespace germs

Interaction::Interaction(int dim, int k, std::vector<Germ> germs, DisorderField field)
    : dim_(dim), k_(k), germs_(std::move(germs)), field_(std::move(field)) {
  if (dim_ < 1 || dim_ > 3) throw InputError("lattice dimension must be 1, 2 or 3");
  if (k_ < 2) throw InputError("on-site dimension k must be >= 2");
  for (const auto& g : germs_) {
    if (g.shape.empty() || g.shape.dim() != dim_) {
      throw InputError("germ '" + g.kind + "' has a shape of the wrong dimension");
    }
    if (!g.shape.contains(Site::origin(dim_))) {
      throw InputError("germ '" + g.kind + "' shape must contain the origin");
    }
    if (!g.builder) throw InputError("germ '" + g.kind + "' has no builder");
  }
}

bool Interaction::deterministic() const {
  return std::none_of(germs_.begin(), germs_.end(), [](const Germ& g) { return g.random; });
}

int Interaction::range() const {
  int r = 0;
  for (const auto& g : germs_) r = std::max(r, g.shape.diameter());
  return r;
}

LocalOperator Interaction::term(const Germ& g, const Site& y) const {
  Volume z = translate(g.shape, y);
  std::vector<double> draws;
  if (g.random) {
    draws.reserve(z.size());
    for (const auto& s : z) draws.push_back(field_.sample(s));
  }
  Matrix m = g.builder(draws);
  LocalOperator op(std::move(z), k_, std::move(m));
  if (!op.is_self_adjoint()) {
    throw ConstructionError("germ '" + g.kind + "' produced a non-self-adjoint term");
  }
  return op;
}

LocalOperator Interaction::evaluate(const Volume& z) const {
  if (z.empty() || z.dim() != dim_) throw InputError("evaluation set has the wrong dimension");
  std::optional<LocalOperator> out;
  for (const auto& g : germs_) {
    if (g.shape.size() != z.size()) continue;
    const Site y = z[0] - g.shape[0];
    if (translate(g.shape, y) != z) continue;
    LocalOperator t = term(g, y);
    if (out) {
      out = LocalOperator(z, k_, out->matrix() + t.matrix());
    } else {
      out = std::move(t);
    }
  }
  return out ? *out : LocalOperator::zero(z, k_);
}

void Interaction::add_translates(const Germ& g, const std::vector<Site>& offsets,
                                 const Volume* inside,
                                 std::map<Volume, LocalOperator>& out) const {
  for (const auto& y : offsets) {
    const Volume z = translate(g.shape, y);
    if (inside && !z.is_subset_of(*inside)) continue;
    LocalOperator t = term(g, y);
    auto it = out.find(z);
    if (it == out.end()) {
      out.emplace(z, std::move(t));
    } else {
      it->second = LocalOperator(z, k_, it->second.matrix() + t.matrix());
    }
  }
}

std::map<Volume, LocalOperator> Interaction::terms_within(const Volume& lambda) const {
  std::map<Volume, LocalOperator> out;
  if (lambda.empty()) return out;
  if (lambda.dim() != dim_) throw InputError("volume has the wrong dimension");
  for (const auto& g : germs_) {
    std::vector<Site> offsets;
    offsets.reserve(lambda.size());
    for (const auto& p : lambda) offsets.push_back(p - g.shape[0]);
    add_translates(g, offsets, &lambda, out);
  }
  return out;
}

std::map<Volume, LocalOperator> Interaction::terms_meeting(const Volume& x) const {
  std::map<Volume, LocalOperator> out;
  if (x.empty()) return out;
  if (x.dim() != dim_) throw InputError("volume has the wrong dimension");
  for (const auto& g : germs_) {
    std::set<Site> offsets;
    for (const auto& p : x) {
      for (const auto& s : g.shape) offsets.insert(p - s);
    }
    add_translates(g, std::vector<Site>(offsets.begin(), offsets.end()), nullptr, out);
  }
  return out;
}

Interaction Interaction::with_field(DisorderField field) const {
  Interaction out = *this;
  out.field_ = std::move(field);
  return out;
}

Hamiltonian assemble(const Interaction& interaction, const Volume& lambda, long long cap) {
  if (lambda.empty()) throw InputError("cannot assemble a Hamiltonian on an empty volume");
  const Eigen::Index d = checked_dimension(lambda, interaction.k(), cap);
  Hamiltonian h;
  h.volume = lambda;
  h.terms = interaction.terms_within(lambda);
  Matrix m = Matrix::Zero(d, d);
  for (const auto& [z, t] : h.terms) accumulate_embedded(m, lambda, t);
  h.op = LocalOperator(lambda, interaction.k(), std::move(m));
  return h;
}

FNormReport f_norm(const Interaction& interaction, const FFunction& f, const Volume& pairs) {
  if (pairs.empty()) throw InputError("f_norm needs a non-empty pair volume");
  if (f.dim != interaction.dim()) throw InputError("F-function and interaction dimensions differ");
  const std::size_t n = pairs.size();
  std::vector<double> acc(n * n, 0.0);
  for (const auto& [z, t] : interaction.terms_meeting(pairs)) {
    const double norm = op_norm(t);
    if (norm == 0.0) continue;
    std::vector<std::size_t> idx;
    for (const auto& s : z) {
      if (auto i = pairs.index_of(s)) idx.push_back(*i);
    }
    for (std::size_t a : idx) {
      for (std::size_t b : idx) acc[a * n + b] += norm;
    }
  }
  FNormReport r;
  r.range_bound = interaction.range();
  r.box_smaller_than_range = pairs.diameter() < r.range_bound;
  r.witness_x = pairs[0];
  r.witness_y = pairs[0];
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double v = acc[a * n + b] / f(distance(pairs[a], pairs[b]));
      if (v > r.value) {
        r.value = v;
        r.witness_x = pairs[a];
        r.witness_y = pairs[b];
      }
    }
  }
  return r;
}

FNormReport f_norm(const Interaction& interaction, const FFunction& f, int pair_box_radius) {
  if (pair_box_radius < 0) throw InputError("pair box radius must be non-negative");
  FNormReport r = f_norm(interaction, f, ball(Site::origin(interaction.dim()), pair_box_radius));
  r.pair_box_radius = pair_box_radius;
  r.box_smaller_than_range = pair_box_radius < r.range_bound;
  return r;
}

RoughNormBound rough_norm_bound(double f_norm_value, const FFunction& f, const Volume& lambda) {
  if (lambda.size() > 30) throw InputError("rough norm bound is limited to |volume| <= 30");
  if (lambda.empty()) return {};
  double off = 0.0;
  for (const auto& x : lambda) {
    for (const auto& y : lambda) {
      if (x != y) off += f(distance(x, y));
    }
  }
  const double diag = static_cast<double>(lambda.size()) * f(0);
  const double n = static_cast<double>(lambda.size());
  RoughNormBound b;
  b.f_norm = f_norm_value;
  b.paper_form = std::pow(2.0, n - 2.0) * f_norm_value * (off + diag);
  b.exact_count = f_norm_value * (std::pow(2.0, n - 2.0) * off + std::pow(2.0, n - 1.0) * diag);
  return b;
}

RoughNormBound rough_norm_bound(const Interaction& interaction, const FFunction& f,
                                const Volume& lambda) {
  if (lambda.size() > 30) throw InputError("rough norm bound is limited to |volume| <= 30");
  if (lambda.empty()) return {};
  return rough_norm_bound(f_norm(interaction, f, lambda).value, f, lambda);
}

Interaction perturb_with_field(const Interaction& phi, const Matrix& v, const DisorderField& field) {
  if (!phi.deterministic()) throw InputError("the unperturbed interaction must be deterministic");
  if (v.rows() != phi.k() || v.cols() != phi.k()) {
    throw InputError("perturbation must be a k x k one-site operator");
  }
  std::vector<Germ> gs = phi.germs();
  Germ g = germs::onsite(phi.dim(), v, true);
  g.kind = "perturbation";
  gs.push_back(std::move(g));
  return Interaction(phi.dim(), phi.k(), std::move(gs), field);
}

namespace {

double number_or(const nlohmann::json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(where + "/" + key, "must be a number");
  return j.at(key).get<double>();
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + "/" + key, "unknown key");
  }
}

}  // namespace

std::vector<Germ> germs_from_json(const nlohmann::json& j, int dim, int k, const std::string& where) {
  if (!j.is_object() || !j.contains("germs")) throw ConfigError(where, "interaction needs 'germs'");
  const auto& arr = j.at("germs");
  if (!arr.is_array() || arr.empty()) {
    throw ConfigError(where + "/germs", "must be a non-empty array");
  }
  std::vector<Germ> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "/germs/" + std::to_string(i);
    const auto& e = arr[i];
    if (!e.is_object()) throw ConfigError(at, "germ must be an object");
    if (!e.contains("kind") || !e.at("kind").is_string()) {
      throw ConfigError(at + "/kind", "missing or not a string");
    }
    const std::string kind = e.at("kind").get<std::string>();
    int direction = 0;
    if (e.contains("direction")) {
      if (!e.at("direction").is_number_integer()) {
        throw ConfigError(at + "/direction", "must be an integer");
      }
      direction = e.at("direction").get<int>();
      if (direction < 0 || direction >= dim) throw ConfigError(at + "/direction", "out of range");
    }
    Germ g;
    std::size_t arity = 2;
    if (kind == "field") {
      reject_unknown(e, {"kind", "shape", "axis", "scale"}, at);
      if (k != 2) throw ConfigError(at + "/kind", "Pauli germs require k = 2");
      std::string axis = "z";
      if (e.contains("axis")) {
        if (!e.at("axis").is_string()) throw ConfigError(at + "/axis", "must be a string");
        axis = e.at("axis").get<std::string>();
      }
      if (axis != "x" && axis != "y" && axis != "z") {
        throw ConfigError(at + "/axis", "must be one of x, y, z");
      }
      g = germs::field(dim, axis[0], number_or(e, "scale", 1.0, at));
      arity = 1;
    } else if (k != 2 && (kind == "xy" || kind == "xxz" || kind == "heisenberg")) {
      throw ConfigError(at + "/kind", "Pauli germs require k = 2");
    } else if (kind == "xy") {
      reject_unknown(e, {"kind", "shape", "mu", "gamma", "direction", "random"}, at);
      bool random = false;
      if (e.contains("random")) {
        if (!e.at("random").is_boolean()) throw ConfigError(at + "/random", "must be a boolean");
        random = e.at("random").get<bool>();
      }
      g = germs::xy(dim, number_or(e, "mu", 1.0, at), number_or(e, "gamma", 0.0, at), direction,
                    random);
    } else if (kind == "xxz") {
      reject_unknown(e, {"kind", "shape", "jxy", "delta", "direction"}, at);
      g = germs::xxz(dim, number_or(e, "jxy", 1.0, at), number_or(e, "delta", 1.0, at), direction);
    } else if (kind == "heisenberg") {
      reject_unknown(e, {"kind", "shape", "j", "direction"}, at);
      g = germs::heisenberg(dim, number_or(e, "j", 1.0, at), direction);
    } else {
      throw ConfigError(at + "/kind", "unknown germ kind '" + kind + "'");
    }
    if (e.contains("shape")) {
      Volume shape;
      try {
        shape = e.at("shape").get<Volume>();
      } catch (const std::exception& ex) {
        throw ConfigError(at + "/shape", ex.what());
      }
      if (shape.size() != arity) {
        throw ConfigError(at + "/shape", "germ '" + kind + "' needs " + std::to_string(arity) + " sites");
      }
      if (shape.dim() != dim) throw ConfigError(at + "/shape", "wrong lattice dimension");
      if (!shape.contains(Site::origin(dim))) throw ConfigError(at + "/shape", "must contain the origin");
      g.shape = std::move(shape);
    }
    g.params["kind"] = kind;
    out.push_back(std::move(g));
  }
  return out;
}

nlohmann::json to_json(const FNormReport& r) {
  return {{"value", r.value},
          {"witness_x", r.witness_x.coords()},
          {"witness_y", r.witness_y.coords()},
          {"pair_box_radius", r.pair_box_radius},
          {"range_bound", r.range_bound},
          {"box_smaller_than_range", r.box_smaller_than_range}};
}

}  // namespace ergospin
