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

#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/ffunction.hpp"
#include "ergospin/interaction.hpp"
#include "ergospin/lattice.hpp"
#include "ergospin/linalg.hpp"
#include "ergospin/operators.hpp"

namespace ergospin {

/// Heisenberg dynamics alpha_t(a) = e^{itH} a e^{-itH} of one Hamiltonian,
/// through a single eigen-decomposition reused for every time.
class Propagator {
 public:
  /// Throws ConstructionError when H is not self-adjoint.
  explicit Propagator(const Hamiltonian& h);

  const Volume& volume() const { return volume_; }
  int k() const { return k_; }
  const HermitianEigensystem& eigensystem() const { return es_; }

  /// alpha_t(a) on the propagator's volume. t = 0 returns the embedding of a
  /// exactly.
  LocalOperator evolve(const LocalOperator& a, double t) const;
  std::vector<LocalOperator> evolve(const LocalOperator& a, const std::vector<double>& times) const;

  /// e^{-itH}.
  Matrix unitary(double t) const;

 private:
  Matrix to_eigenbasis(const Matrix& a) const;
  Matrix from_eigenbasis(const Matrix& a) const;

  Volume volume_;
  int k_ = 2;
  HermitianEigensystem es_;
};

struct EvolvedObservable {
  LocalOperator base;
  Volume volume;
  double time = 0.0;
  LocalOperator result;
};

EvolvedObservable evolve(const Hamiltonian& h, const LocalOperator& a, double t);

struct LRCertificate {
  Volume a_support;
  Volume b_support;
  std::vector<double> time_grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double cf_bound = 0.0;  ///< analytic C_F used on the right-hand side
  double f_norm = 0.0;
  double f_sum = 0.0;  ///< sum_{x in X} sum_{y in Y} F(d(x,y))
  double norm_a = 0.0;
  double norm_b = 0.0;
  bool passed = false;
};

/// Compares ||[b, alpha_t(a)]|| with
///   (||a|| ||b|| / C_F)(e^{N_F C_F |t|} - 1) sum_{x,y} F(d(x,y)),
/// where N_F is taken over pairs in lambda. Throws InputError when the supports
/// overlap or leave lambda.
LRCertificate lr_certify(const Interaction& interaction, const FFunction& f, const Volume& lambda,
                         const LocalOperator& a, const LocalOperator& b,
                         const std::vector<double>& times, long long cap = 4096,
                         double slack = 1e-9);

/// Right-hand side of the Lieb-Robinson bound.
double lr_bound(double norm_a, double norm_b, double f_norm, double cf, double f_sum, double t);

struct ConvergenceTrace {
  LocalOperator observable;
  double time = 0.0;
  std::vector<Volume> volumes;
  double f_norm = 0.0;
  double cf_bound = 0.0;
  /// deltas[i] = ||alpha^{V_{i+1}}_t(a) - alpha^{V_i}_t(a)||.
  std::vector<double> deltas;
  std::vector<double> duhamel_bounds;
  bool passed = false;
};

/// Successive differences of the finite-volume dynamics along nested boxes and
/// the Duhamel bound
///   ||a|| (e^{N_F C_F |t|} - 1)/C_F sum_{x in X} sum_{p in V_n \ V_m} F(d(x,p))
/// plus 2||a|| ||h(Z)|| |t| for new terms Z meeting supp(a).
ConvergenceTrace thermo_trace(const Interaction& interaction, const FFunction& f,
                              const LocalOperator& a, double t, const BoxSequence& boxes,
                              long long cap = 4096, double slack = 1e-9);

/// prod_{x in Z} e^{i t lambda_x v} as an operator on Z.
LocalOperator gauge_unitary(const Matrix& v, const DisorderField& field, const Volume& z, double t);

/// Phi~(Z, t) = T^Z(t)^dagger Phi(Z) T^Z(t) for a deterministic Phi.
LocalOperator gauge_transform(const Interaction& phi, const Matrix& v, const DisorderField& field,
                              const Volume& z, double t);

struct GaugeCheck {
  double direct = 0.0;  ///< ||alpha^{outer,Psi}_t(a) - alpha^{inner,Psi}_t(a)||
  double gauged = 0.0;  ///< same difference for the gauge-transformed dynamics
  double residual = 0.0;
  int steps = 0;              ///< Magnus steps used on the outer volume
  double integration_error = 0.0;  ///< last step-doubling difference
};

/// Evolves a under Psi = Phi + sum lambda_x v_x exactly on both volumes and,
/// independently, under the time-dependent generator sum_Z Phi~(Z, t) by a
/// fourth-order Magnus integrator; compares the two volume differences.
GaugeCheck gauge_identity_check(const Interaction& phi, const Matrix& v, const DisorderField& field,
                                const Volume& inner, const Volume& outer, const LocalOperator& a,
                                double t, long long cap = 4096, double integration_tol = 1e-11);

/// Non-finite numbers become the strings "inf", "-inf" or "nan".
nlohmann::json json_number(double v);
nlohmann::json to_json(const LRCertificate& c);
nlohmann::json to_json(const ConvergenceTrace& c);
nlohmann::json to_json(const GaugeCheck& g);

}  // namespace ergospin
