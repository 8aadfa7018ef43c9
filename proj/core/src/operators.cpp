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
#include "ergospin/operators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ergospin/errors.hpp"

namespace ergospin {

namespace {

Eigen::Index ipow(int k, std::size_t n) {
  Eigen::Index d = 1;
  for (std::size_t i = 0; i < n; ++i) d *= k;
  return d;
}

// Offsets in the full index of every configuration of the legs at \p positions,
// enumerated with positions[0] as the most significant digit.
std::vector<Eigen::Index> leg_offsets(const std::vector<std::size_t>& positions, std::size_t n,
                                      int k) {
  std::vector<Eigen::Index> strides(positions.size());
  for (std::size_t j = 0; j < positions.size(); ++j) strides[j] = ipow(k, n - 1 - positions[j]);
  const Eigen::Index count = ipow(k, positions.size());
  std::vector<Eigen::Index> out(static_cast<std::size_t>(count), 0);
  for (Eigen::Index s = 0; s < count; ++s) {
    Eigen::Index rest = s;
    Eigen::Index off = 0;
    for (std::size_t j = positions.size(); j-- > 0;) {
      off += (rest % k) * strides[j];
      rest /= k;
    }
    out[static_cast<std::size_t>(s)] = off;
  }
  return out;
}

struct Split {
  std::vector<Eigen::Index> inner;
  std::vector<Eigen::Index> outer;
};

Split split(const Volume& full, const Volume& sub, int k) {
  if (!sub.is_subset_of(full)) throw InputError("subvolume is not contained in the volume");
  std::vector<std::size_t> in_pos;
  std::vector<std::size_t> out_pos;
  std::size_t j = 0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (j < sub.size() && sub[j] == full[i]) {
      in_pos.push_back(i);
      ++j;
    } else {
      out_pos.push_back(i);
    }
  }
  return Split{leg_offsets(in_pos, full.size(), k), leg_offsets(out_pos, full.size(), k)};
}

void require_same_k(const LocalOperator& a, const LocalOperator& b) {
  if (a.k() != b.k()) throw InputError("operators have different on-site dimensions");
}

}  // namespace

Eigen::Index checked_dimension(const Volume& v, int k, long long cap) {
  long double d = 1;
  for (std::size_t i = 0; i < v.size(); ++i) d *= k;
  if (d > static_cast<long double>(cap)) {
    throw ResourceError("dense dimension " + std::to_string(k) + "^" + std::to_string(v.size()) +
                        " exceeds the cap of " + std::to_string(cap));
  }
  return static_cast<Eigen::Index>(d);
}

LocalOperator::LocalOperator(Volume support, int k, Matrix matrix)
    : support_(std::move(support)), k_(k), matrix_(std::move(matrix)) {
  if (k_ < 2) throw InputError("on-site dimension k must be >= 2");
  const Eigen::Index d = ipow(k_, support_.size());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw InputError("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " + std::to_string(d) +
                     " for its support");
  }
}

LocalOperator LocalOperator::identity(const Volume& support, int k) {
  const Eigen::Index d = ipow(k, support.size());
  return LocalOperator(support, k, Matrix::Identity(d, d));
}

LocalOperator LocalOperator::zero(const Volume& support, int k) {
  const Eigen::Index d = ipow(k, support.size());
  return LocalOperator(support, k, Matrix::Zero(d, d));
}

LocalOperator LocalOperator::at_site(const Site& x, const Matrix& m) {
  return LocalOperator(Volume{x}, static_cast<int>(m.rows()), m);
}

LocalOperator LocalOperator::adjoint() const {
  return LocalOperator(support_, k_, matrix_.adjoint());
}

bool LocalOperator::is_self_adjoint(double rel_tol) const {
  const double defect = (matrix_ - matrix_.adjoint()).norm();
  const double scale = matrix_.norm() / std::sqrt(static_cast<double>(matrix_.rows()));
  return defect <= rel_tol * scale;
}

LocalOperator LocalOperator::operator*(const LocalOperator& other) const {
  require_same_k(*this, other);
  if (support_ == other.support_) return LocalOperator(support_, k_, matrix_ * other.matrix_);
  const Volume joint = support_.join(other.support_);
  return LocalOperator(joint, k_, embed(*this, joint).matrix_ * embed(other, joint).matrix_);
}

LocalOperator LocalOperator::operator+(const LocalOperator& other) const {
  require_same_k(*this, other);
  if (support_ == other.support_) return LocalOperator(support_, k_, matrix_ + other.matrix_);
  const Volume joint = support_.join(other.support_);
  Matrix m = embed(*this, joint).matrix_;
  accumulate_embedded(m, joint, other);
  return LocalOperator(joint, k_, std::move(m));
}

LocalOperator LocalOperator::operator-(const LocalOperator& other) const {
  return *this + other * Complex(-1.0);
}

LocalOperator LocalOperator::operator*(Complex c) const {
  return LocalOperator(support_, k_, matrix_ * c);
}

void accumulate_embedded(Matrix& target, const Volume& volume, const LocalOperator& a,
                         Complex coef) {
  const Eigen::Index d = ipow(a.k(), volume.size());
  if (target.rows() != d || target.cols() != d) {
    throw InputError("target matrix does not match the volume dimension");
  }
  if (!a.support().is_subset_of(volume)) {
    throw InputError("operator support is not contained in the target volume");
  }
  const Split s = split(volume, a.support(), a.k());
  const Matrix& m = a.matrix();
  const auto n_in = static_cast<Eigen::Index>(s.inner.size());
  for (const Eigen::Index c : s.outer) {
    for (Eigen::Index j = 0; j < n_in; ++j) {
      const Eigen::Index col = s.inner[static_cast<std::size_t>(j)] + c;
      for (Eigen::Index i = 0; i < n_in; ++i) {
        const Complex v = m(i, j);
        if (v != Complex(0.0)) target(s.inner[static_cast<std::size_t>(i)] + c, col) += coef * v;
      }
    }
  }
}

LocalOperator embed(const LocalOperator& a, const Volume& into) {
  if (!a.support().is_subset_of(into)) {
    throw InputError("cannot embed: support is not contained in the target volume");
  }
  if (a.support() == into) return a;
  LocalOperator out = LocalOperator::zero(into, a.k());
  Matrix m = out.matrix();
  accumulate_embedded(m, into, a);
  return LocalOperator(into, a.k(), std::move(m));
}

LocalOperator translate_op(const LocalOperator& a, const Site& x) {
  return LocalOperator(translate(a.support(), x), a.k(), a.matrix());
}

Complex tracial_state(const LocalOperator& a) {
  return a.matrix().trace() / static_cast<double>(a.dimension());
}

Matrix partial_trace(const Matrix& m, const Volume& volume, const Volume& sub, int k) {
  const Split s = split(volume, sub, k);
  const auto n_in = static_cast<Eigen::Index>(s.inner.size());
  Matrix out = Matrix::Zero(n_in, n_in);
  for (const Eigen::Index c : s.outer) {
    for (Eigen::Index j = 0; j < n_in; ++j) {
      const Eigen::Index col = s.inner[static_cast<std::size_t>(j)] + c;
      for (Eigen::Index i = 0; i < n_in; ++i) {
        out(i, j) += m(s.inner[static_cast<std::size_t>(i)] + c, col);
      }
    }
  }
  return out;
}

LocalOperator conditional_expectation(const LocalOperator& a, const Volume& onto) {
  const Volume full = a.support().join(onto);
  const LocalOperator big = embed(a, full);
  const Eigen::Index traced = ipow(a.k(), full.size() - onto.size());
  Matrix m = partial_trace(big.matrix(), full, onto, a.k()) / static_cast<double>(traced);
  return LocalOperator(onto, a.k(), std::move(m));
}

double op_norm(const LocalOperator& a) { return operator_norm(a.matrix()); }

LocalOperator commutator(const LocalOperator& a, const LocalOperator& b) {
  require_same_k(a, b);
  const Volume joint = a.support().join(b.support());
  const LocalOperator ea = embed(a, joint);
  const LocalOperator eb = embed(b, joint);
  return LocalOperator(joint, a.k(), ea.matrix() * eb.matrix() - eb.matrix() * ea.matrix());
}

StateFunctional::StateFunctional(Volume volume, int k, Matrix rho, double tol)
    : volume_(std::move(volume)), k_(k), rho_(std::move(rho)) {
  const Eigen::Index d = ipow(k_, volume_.size());
  if (rho_.rows() != d || rho_.cols() != d) throw InputError("density matrix has wrong dimension");
  if (hermiticity_defect(rho_) > tol) throw InputError("density matrix is not Hermitian");
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1.0)) > tol) {
    throw InputError("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
  }
}

Complex StateFunctional::operator()(const LocalOperator& a) const {
  if (a.k() != k_) throw InputError("operator and state have different on-site dimensions");
  if (!a.support().is_subset_of(volume_)) {
    throw InputError("observable support is not contained in the state's volume");
  }
  const Matrix reduced = partial_trace(rho_, volume_, a.support(), k_);
  return (reduced.transpose().cwiseProduct(a.matrix())).sum();
}

StateFunctional StateFunctional::restrict_to(const Volume& sub) const {
  Matrix r = partial_trace(rho_, volume_, sub, k_);
  r = 0.5 * (r + r.adjoint());
  return StateFunctional(sub, k_, std::move(r), 1e-10);
}

StateFunctional StateFunctional::translated(const Site& x) const {
  return StateFunctional(translate(volume_, x), k_, rho_);
}

double StateFunctional::min_eigenvalue() const {
  return hermitian_eigensystem(0.5 * (rho_ + rho_.adjoint()), false).values(0);
}

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix by_index(int i) {
  switch (i) {
    case 0:
      return identity();
    case 1:
      return x();
    case 2:
      return y();
    case 3:
      return z();
    default:
      throw InputError("Pauli index must be in 0..3");
  }
}

}  // namespace pauli

Matrix weyl(int k, int a, int b) {
  if (k < 2) throw InputError("Weyl operators need k >= 2");
  Matrix shift = Matrix::Zero(k, k);
  Matrix clock = Matrix::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    shift((j + 1) % k, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / k);
  }
  Matrix out = Matrix::Identity(k, k);
  for (int i = 0; i < ((a % k) + k) % k; ++i) out = out * shift;
  for (int i = 0; i < ((b % k) + k) % k; ++i) out = out * clock;
  return out;
}

nlohmann::json to_json(const LocalOperator& a) {
  nlohmann::json entries = nlohmann::json::array();
  const Matrix& m = a.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(m(i, j).real());
      entries.push_back(m(i, j).imag());
    }
  }
  nlohmann::json support;
  ergospin::to_json(support, a.support());
  return {{"support", support}, {"k", a.k()}, {"entries", entries}};
}

LocalOperator local_operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("support") || !j.contains("k") || !j.contains("entries")) {
    throw InputError("operator JSON needs 'support', 'k' and 'entries'");
  }
  const auto support = j.at("support").get<Volume>();
  const int k = j.at("k").get<int>();
  if (k < 2) throw InputError("on-site dimension k must be >= 2");
  const Eigen::Index d = ipow(k, support.size());
  const auto& e = j.at("entries");
  if (!e.is_array() || static_cast<Eigen::Index>(e.size()) != 2 * d * d) {
    throw InputError("operator JSON has the wrong number of entries");
  }
  Matrix m(d, d);
  std::size_t p = 0;
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      m(r, c) = Complex(e[p].get<double>(), e[p + 1].get<double>());
      p += 2;
    }
  }
  return LocalOperator(support, k, std::move(m));
}

}  // namespace ergospin
