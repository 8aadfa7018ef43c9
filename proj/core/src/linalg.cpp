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
#include "ergospin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ergospin/errors.hpp"

namespace ergospin {

using Complex = std::complex<double>;

Matrix HermitianEigensystem::complex_vectors() const {
  if (real) return real_vectors.cast<std::complex<double>>();
  return vectors;
}

bool is_real(const Matrix& m) {
  const auto* p = m.data();
  const Eigen::Index n = m.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p[i].imag() != 0.0) return false;
  }
  return true;
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("hermiticity check needs a square matrix");
  double d = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j; i < m.rows(); ++i) {
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return d;
}

namespace {

template <class M>
bool solve(const M& h, int opts, RealVector& values, M& vectors) {
  Eigen::SelfAdjointEigenSolver<M> es(h, opts);
  if (es.info() != Eigen::Success) return false;
  values = es.eigenvalues();
  if (opts & Eigen::ComputeEigenvectors) vectors = es.eigenvectors();
  return true;
}

// The tridiagonal QR deflation test stalls when diagonal entries sit near zero
// (large null spaces). Retry on H / s + I, which keeps them away from zero.
template <class M>
bool solve_shifted(const M& h, int opts, RealVector& values, M& vectors) {
  const double scale = h.cwiseAbs().maxCoeff();
  if (scale == 0.0) return false;
  const M shifted = h / scale + M::Identity(h.rows(), h.cols());
  if (!solve(shifted, opts, values, vectors)) return false;
  values = (values.array() - 1.0) * scale;
  return true;
}

template <class M>
void solve_or_throw(const M& h, int opts, RealVector& values, M& vectors, const char* what) {
  if (!h.allFinite()) {
    throw NumericError(std::string(what) + " eigensolver received non-finite entries (dimension " +
                       std::to_string(h.rows()) + ")");
  }
  if (solve(h, opts, values, vectors)) return;
  if (solve_shifted(h, opts, values, vectors)) return;
  throw NumericError(std::string(what) + " eigensolver failed to converge (dimension " +
                     std::to_string(h.rows()) + ")");
}

}  // namespace

HermitianEigensystem hermitian_eigensystem(const Matrix& h, bool compute_vectors) {
  if (h.rows() != h.cols()) throw InputError("eigensystem needs a square matrix");
  HermitianEigensystem out;
  const int opts = compute_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (is_real(h)) {
    solve_or_throw<RealMatrix>(h.real(), opts, out.values, out.real_vectors, "real symmetric");
    out.real = true;
  } else {
    solve_or_throw<Matrix>(h, opts, out.values, out.vectors, "Hermitian");
  }
  return out;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (m.rows() == m.cols() && hermiticity_defect(m) <= 1e-12 * scale) {
    const Matrix h = 0.5 * (m + m.adjoint());
    const auto es = hermitian_eigensystem(h, false);
    return std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  }
  if (m.rows() == m.cols() && hermiticity_defect(Complex(0.0, 1.0) * m) <= 1e-12 * scale) {
    const Matrix h = Complex(0.0, 0.5) * (m - m.adjoint());
    const auto es = hermitian_eigensystem(h, false);
    return std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix real_times(const RealMatrix& r, const Matrix& c) {
  const RealMatrix re = r * c.real();
  const RealMatrix im = r * c.imag();
  Matrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

Matrix times_real(const Matrix& c, const RealMatrix& r) {
  const RealMatrix re = c.real() * r;
  const RealMatrix im = c.imag() * r;
  Matrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

Matrix reconstruct(const HermitianEigensystem& es, const Vector& diag) {
  if (es.real) {
    const Matrix scaled = es.real_vectors.cast<std::complex<double>>() * diag.asDiagonal();
    return times_real(scaled, es.real_vectors.transpose());
  }
  return es.vectors * diag.asDiagonal() * es.vectors.adjoint();
}

}  // namespace ergospin
