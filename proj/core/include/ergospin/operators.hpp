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

#include <complex>
#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/lattice.hpp"
#include "ergospin/linalg.hpp"

namespace ergospin {

using Complex = std::complex<double>;

/// Dense operator on the tensor product of C^k over its support. Leg i of the
/// matrix belongs to support[i]; the first site is the most significant digit,
/// so a_0 (x) a_1 has matrix kron(a_0, a_1).
class LocalOperator {
 public:
  LocalOperator() = default;
  /// Throws InputError unless matrix is k^{|support|} square and k >= 2.
  LocalOperator(Volume support, int k, Matrix matrix);

  static LocalOperator identity(const Volume& support, int k);
  static LocalOperator zero(const Volume& support, int k);
  /// One-site operator; k is taken from the matrix size.
  static LocalOperator at_site(const Site& x, const Matrix& m);

  const Volume& support() const { return support_; }
  int k() const { return k_; }
  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

  LocalOperator adjoint() const;
  /// ||A - A^dagger|| <= rel_tol ||A||, checked through Frobenius norms.
  bool is_self_adjoint(double rel_tol = 1e-12) const;

  /// Binary operations embed both operands into the join of their supports.
  LocalOperator operator*(const LocalOperator& other) const;
  LocalOperator operator+(const LocalOperator& other) const;
  LocalOperator operator-(const LocalOperator& other) const;
  LocalOperator operator*(Complex c) const;
  friend LocalOperator operator*(Complex c, const LocalOperator& a) { return a * c; }

 private:
  Volume support_;
  int k_ = 2;
  Matrix matrix_;
};

/// a (x) 1 on \p into. Throws InputError when support(a) is not inside \p into.
LocalOperator embed(const LocalOperator& a, const Volume& into);

/// target += coef * (a (x) 1) where target acts on \p volume. Avoids
/// materialising the embedded matrix.
void accumulate_embedded(Matrix& target, const Volume& volume, const LocalOperator& a,
                         Complex coef = 1.0);

/// Shifts the support by x. Translations keep lexicographic order, so the
/// matrix is unchanged.
LocalOperator translate_op(const LocalOperator& a, const Site& x);

/// Tr(a) / k^{|support|}.
Complex tracial_state(const LocalOperator& a);

/// Normalised partial trace onto \p onto, after embedding a into support
/// union onto.
LocalOperator conditional_expectation(const LocalOperator& a, const Volume& onto);

double op_norm(const LocalOperator& a);
LocalOperator commutator(const LocalOperator& a, const LocalOperator& b);

/// Density matrix on a finite volume.
class StateFunctional {
 public:
  StateFunctional() = default;
  /// Throws InputError when rho is not Hermitian or not of unit trace to
  /// \p tol. Positivity is checked by min_eigenvalue().
  StateFunctional(Volume volume, int k, Matrix rho, double tol = 1e-12);

  const Volume& volume() const { return volume_; }
  int k() const { return k_; }
  const Matrix& rho() const { return rho_; }

  /// Tr(rho a) with a embedded into the volume.
  Complex operator()(const LocalOperator& a) const;
  /// Reduced density matrix on a subvolume (unit trace).
  StateFunctional restrict_to(const Volume& sub) const;
  /// The state a -> phi(tau_{-x}(a)) on volume + x.
  StateFunctional translated(const Site& x) const;
  double min_eigenvalue() const;

 private:
  Volume volume_;
  int k_ = 2;
  Matrix rho_;
};

/// Unnormalised partial trace of an operator on \p volume onto \p sub.
Matrix partial_trace(const Matrix& m, const Volume& volume, const Volume& sub, int k);

/// Throws ResourceError when k^{|v|} exceeds \p cap.
Eigen::Index checked_dimension(const Volume& v, int k, long long cap);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
/// Index 0..3 maps to I, X, Y, Z.
Matrix by_index(int i);
}  // namespace pauli

/// Weyl operator X^a Z^b on C^k with X|j> = |j+1 mod k>, Z|j> = e^{2 pi i j/k}|j>.
Matrix weyl(int k, int a, int b);

nlohmann::json to_json(const LocalOperator& a);
LocalOperator local_operator_from_json(const nlohmann::json& j);

}  // namespace ergospin
