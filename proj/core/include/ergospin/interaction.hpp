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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/disorder.hpp"
#include "ergospin/ffunction.hpp"
#include "ergospin/lattice.hpp"
#include "ergospin/operators.hpp"

namespace ergospin {

/// Template term of an interaction. The term on Z = shape + y is the builder's
/// matrix evaluated at the draws {sample(field, s + y) : s in shape}, placed on
/// Z. Builders see only the draws of their own shape.
struct Germ {
  std::string kind;
  Volume shape;         ///< contains the origin
  bool random = false;  ///< whether the builder reads its draws
  std::function<Matrix(const std::vector<double>& draws)> builder;
  nlohmann::json params;  ///< echo of the parameters, for manifests
};

namespace germs {
/// lambda_x sigma^axis with axis in {'x','y','z'}, times \p scale.
Germ field(int dim, char axis, double scale = 1.0);
/// lambda_x v (random) or v (deterministic) for a one-site Hermitian v.
Germ onsite(int dim, const Matrix& v, bool random);
/// mu((1+gamma) XX + (1-gamma) YY) on {0, e_axis}; the coupling is multiplied
/// by the draw at the origin when \p random_coupling is set.
Germ xy(int dim, double mu, double gamma, int axis = 0, bool random_coupling = false);
/// jxy (XX + YY) + delta ZZ on {0, e_axis}.
Germ xxz(int dim, double jxy, double delta, int axis = 0);
/// j (XX + YY + ZZ) on {0, e_axis}.
Germ heisenberg(int dim, double j, int axis = 0);
}  // namespace germs

/// Finite-range disordered interaction built from germs and a disorder field.
class Interaction {
 public:
  Interaction() = default;
  /// Throws InputError when a shape misses the origin or has the wrong
  /// dimension.
  Interaction(int dim, int k, std::vector<Germ> germs, DisorderField field);

  int dim() const { return dim_; }
  int k() const { return k_; }
  const std::vector<Germ>& germs() const { return germs_; }
  const DisorderField& field() const { return field_; }
  bool deterministic() const;

  /// Largest germ diameter.
  int range() const;

  /// h(omega, Z): zero when Z is not a translate of any shape. Throws
  /// ConstructionError when a builder returns a non-self-adjoint matrix.
  LocalOperator evaluate(const Volume& z) const;

  /// All nonzero-shape terms with Z inside \p lambda, keyed and ordered by Z.
  std::map<Volume, LocalOperator> terms_within(const Volume& lambda) const;
  /// All terms with Z meeting \p x (Z unrestricted).
  std::map<Volume, LocalOperator> terms_meeting(const Volume& x) const;

  /// Same germs on another realisation.
  Interaction with_field(DisorderField field) const;
  /// Same germs on theta_x omega.
  Interaction shifted(const Site& x) const { return with_field(field_.shift(x)); }

 private:
  // Term of germ g on shape + y.
  LocalOperator term(const Germ& g, const Site& y) const;
  void add_translates(const Germ& g, const std::vector<Site>& offsets, const Volume* inside,
                      std::map<Volume, LocalOperator>& out) const;

  int dim_ = 1;
  int k_ = 2;
  std::vector<Germ> germs_;
  DisorderField field_;
};

/// H = sum_{Z inside volume} h(omega, Z) with its term index.
struct Hamiltonian {
  Volume volume;
  LocalOperator op;
  std::map<Volume, LocalOperator> terms;
};

/// Throws ResourceError when k^{|lambda|} exceeds \p cap and InputError on an
/// empty volume.
Hamiltonian assemble(const Interaction& interaction, const Volume& lambda,
                     long long cap = 4096);

struct FNormReport {
  double value = 0.0;
  Site witness_x;
  Site witness_y;
  int pair_box_radius = -1;  ///< -1 when the pairs came from an explicit volume
  int range_bound = 0;
  bool box_smaller_than_range = false;
};

/// sup over x, y in \p pairs of sum_{Z containing x, y} ||h(Z)|| / F(d(x,y)),
/// with Z ranging over all translates (not restricted to \p pairs).
FNormReport f_norm(const Interaction& interaction, const FFunction& f, const Volume& pairs);
/// Same with pairs in b_0(R).
FNormReport f_norm(const Interaction& interaction, const FFunction& f, int pair_box_radius);

struct RoughNormBound {
  double f_norm = 0.0;
  /// 2^{|Lambda|-2} N_F sum_{x,y} F(d(x,y)).
  double paper_form = 0.0;
  /// Counts the subsets containing x = y as 2^{|Lambda|-1}.
  double exact_count = 0.0;
};

/// Throws InputError when |lambda| > 30.
RoughNormBound rough_norm_bound(const Interaction& interaction, const FFunction& f,
                                const Volume& lambda);
RoughNormBound rough_norm_bound(double f_norm_value, const FFunction& f, const Volume& lambda);

/// Psi(X) = Phi(X) + delta_{|X|,1} lambda_x v_x on the field \p field. Throws
/// InputError unless \p phi is deterministic and \p v is a Hermitian k x k matrix.
Interaction perturb_with_field(const Interaction& phi, const Matrix& v, const DisorderField& field);

/// Germ list from {"germs":[...]}; errors carry JSON pointers under \p where.
std::vector<Germ> germs_from_json(const nlohmann::json& j, int dim, int k,
                                  const std::string& where = "");
nlohmann::json to_json(const FNormReport& r);

}  // namespace ergospin
