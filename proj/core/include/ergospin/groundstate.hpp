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

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/interaction.hpp"
#include "ergospin/lattice.hpp"
#include "ergospin/operators.hpp"

namespace ergospin {

struct GroundStateResult {
  StateFunctional state;  ///< P_0 / dim P_0
  double energy = 0.0;
  double gap = 0.0;  ///< E_1 - E_0 over distinct levels (0 if the spectrum is one level)
  bool degenerate = false;
  int multiplicity = 1;
};

/// Lowest eigenspace of H. Levels closer than \p tol_gap to E_0 count as
/// ground states; the default is 1e-10 ||H||.
GroundStateResult ground_state(const Hamiltonian& h, std::optional<double> tol_gap = std::nullopt);

/// e^{-beta H} / Tr e^{-beta H}.
StateFunctional thermal_state(const Hamiltonian& h, double beta);

struct DerivationImage {
  LocalOperator input;
  LocalOperator output;
};

/// delta(a) = sum_{Z meeting supp a} [i h(Z), a]. Throws InputError naming the
/// first interacting Z that is not inside \p env.
DerivationImage derivation(const Interaction& interaction, const Volume& env, const LocalOperator& a);

struct GroundConditionReport {
  double worst_violation = 0.0;  ///< min over trials of Re(-i phi(a^dagger delta(a)))
  double boundary_slack = 0.0;   ///< max over trials of the omitted-term bound
  int trials = 0;
  std::vector<double> values;
  bool passed = false;
};

struct ConditionValue {
  double value = 0.0;  ///< Re(-i phi(a^dagger delta(a))), delta truncated to the state's volume
  double slack = 0.0;  ///< sum of 2 ||h(Z)|| ||a||^2 over omitted terms
};

ConditionValue condition_value(const StateFunctional& state, const Interaction& interaction,
                               const LocalOperator& a);

/// Sites x of the volume whose ball of the interaction range stays inside.
std::vector<Site> interior_sites(const Volume& v, int range);

/// Random one-site observable of unit operator norm.
LocalOperator random_observable(const Site& x, int k, std::uint64_t seed);

/// Evaluates -i phi(a^dagger delta(a)) on random interior one-site a, with
/// delta truncated to terms inside the state's volume. Omitted terms are
/// bounded by 2 ||h(Z)|| ||a||^2 and reported as boundary slack.
GroundConditionReport ground_state_condition(const StateFunctional& state, const Interaction& interaction,
                                             int trials, std::uint64_t seed, double tol = 1e-8);

/// Averaged state (1/|b_0(n)|) sum_p gamma_{theta_p w} o tau_{-p}, restricted to
/// an evaluation volume.
///
/// gamma_{w'} is the ground state of H_{w'} on the box b_{c - off(w')}(R), with
/// c the anchor and off(w') the accumulated shift of w'. The rule depends on w'
/// alone, so gamma_{theta_p w} o tau_{-p} always lives on b_{c - off(w)}(R).
struct AveragedState {
  std::map<Site, StateFunctional> base_states;  ///< p -> pulled-back state, restricted
  int n = 0;
  StateFunctional combined;
};

/// Throws InputError when \p eval_volume is not inside b_{anchor - off(w)}(R).
AveragedState cesaro_average(const Interaction& interaction, int n, const Volume& eval_volume,
                             int base_radius, const Site& anchor, long long cap = 4096);

struct CovarianceDefect {
  int n = 0;
  double defect = 0.0;  ///< |gamma^(n)_{theta_z w}(a) - gamma^(n)_w(tau_z a)|
  double bound = 0.0;   ///< ||a|| |b_0(n) sym-diff b_z(n)| / |b_0(n)|
  double slack = 0.0;   ///< deviation from the exact boundary-sum identity
  bool passed = false;
};

CovarianceDefect covariance_defect(const Interaction& interaction, int n, const Site& z,
                                   const LocalOperator& a, int base_radius, const Site& anchor,
                                   long long cap = 4096, double tol = 1e-12);

nlohmann::json to_json(const CovarianceDefect& d);
nlohmann::json to_json(const GroundConditionReport& r);

}  // namespace ergospin
