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

#include <Eigen/Dense>

namespace ergospin {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix. When the input has no imaginary
/// part the real symmetric solver is used and \c real_vectors is populated.
struct HermitianEigensystem {
  RealVector values;       ///< ascending
  Matrix vectors;          ///< columns; empty when only values were requested
  RealMatrix real_vectors; ///< set instead of \c vectors on the real path
  bool real = false;

  /// Returns the eigenvectors as a complex matrix regardless of the path taken.
  Matrix complex_vectors() const;
};

/// Throws NumericError if the solver does not converge.
HermitianEigensystem hermitian_eigensystem(const Matrix& h, bool compute_vectors = true);

bool is_real(const Matrix& m);
/// max_ij |m_ij - conj(m_ji)|.
double hermiticity_defect(const Matrix& m);

/// Largest singular value. Inputs Hermitian to 1e-12 (relative to the largest
/// entry) take the eigenvalue path on their Hermitian part; anti-Hermitian
/// inputs likewise after multiplication by i.
double operator_norm(const Matrix& m);

/// Product of a real and a complex matrix through two real products.
Matrix real_times(const RealMatrix& r, const Matrix& c);
Matrix times_real(const Matrix& c, const RealMatrix& r);

/// V f(D) V^dagger for a Hermitian eigensystem and a complex diagonal.
Matrix reconstruct(const HermitianEigensystem& es, const Vector& diag);

}  // namespace ergospin
