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
#include <gtest/gtest.h>

#include <random>

#include "ergospin/errors.hpp"
#include "ergospin/operators.hpp"
#include "oracle.hpp"

using namespace ergospin;
using oracle::kron;

namespace {

Matrix random_matrix(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

Matrix random_density(Eigen::Index d, std::mt19937_64& rng) {
  const Matrix g = random_matrix(d, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST(Operators, PauliAlgebra) {
  const Complex i(0.0, 1.0);
  EXPECT_TRUE((pauli::x() * pauli::y()).isApprox(i * pauli::z()));
  EXPECT_TRUE((pauli::y() * pauli::z()).isApprox(i * pauli::x()));
  EXPECT_TRUE((pauli::z() * pauli::x()).isApprox(i * pauli::y()));
  for (int a = 0; a < 4; ++a) {
    EXPECT_TRUE((pauli::by_index(a) * pauli::by_index(a)).isApprox(pauli::identity()));
  }
  EXPECT_TRUE(pauli::x().isApprox(oracle::sx()));
  EXPECT_TRUE(pauli::y().isApprox(oracle::sy()));
}

TEST(Operators, WeylOperatorsAreUnitaryAndTraceOrthogonal) {
  for (int k : {2, 3, 5}) {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        const Matrix w = weyl(k, a, b);
        EXPECT_TRUE((w * w.adjoint()).isApprox(Matrix::Identity(k, k), 1e-12));
        const double tr = std::abs(w.trace());
        EXPECT_NEAR(tr, (a == 0 && b == 0) ? k : 0.0, 1e-12);
      }
    }
  }
}

TEST(Operators, EmbedUsesSiteZeroAsMostSignificantLeg) {
  const LocalOperator a = LocalOperator::at_site(Site{1}, pauli::x());
  const LocalOperator big = embed(a, chain(3));
  EXPECT_TRUE(big.matrix().isApprox(kron(kron(oracle::id(2), oracle::sx()), oracle::id(2))));
  const LocalOperator b = LocalOperator::at_site(Site{0}, pauli::z());
  const LocalOperator c = LocalOperator::at_site(Site{2}, pauli::y());
  EXPECT_TRUE((b * c).matrix().isApprox(kron(oracle::sz(), oracle::sy())));
  EXPECT_EQ((b * c).support(), (Volume{Site{0}, Site{2}}));
  EXPECT_TRUE(embed(b * c, chain(3)).matrix().isApprox(kron(kron(oracle::sz(), oracle::id(2)), oracle::sy())));
  EXPECT_THROW(embed(b, chain(2, 1)), InputError);
}

TEST(Operators, EmbeddingIsAHomomorphism) {
  std::mt19937_64 rng(3);
  const LocalOperator a(Volume{Site{0}, Site{2}}, 2, random_matrix(4, rng));
  const LocalOperator b(Volume{Site{1}, Site{2}}, 2, random_matrix(4, rng));
  const Volume v = chain(4);
  EXPECT_TRUE(embed(a * b, v).matrix().isApprox(embed(a, v).matrix() * embed(b, v).matrix(), 1e-12));
  EXPECT_TRUE(embed(a + b, v).matrix().isApprox(embed(a, v).matrix() + embed(b, v).matrix(), 1e-12));
  EXPECT_TRUE(embed(a.adjoint(), v).matrix().isApprox(embed(a, v).matrix().adjoint(), 1e-12));
}

TEST(Operators, AccumulateEmbeddedMatchesEmbed) {
  std::mt19937_64 rng(4);
  const LocalOperator a(Volume{Site{1}, Site{3}}, 3, random_matrix(9, rng));
  const Volume v = chain(4);
  Matrix acc = Matrix::Zero(81, 81);
  accumulate_embedded(acc, v, a, Complex(2.0, -1.0));
  EXPECT_TRUE(acc.isApprox(Complex(2.0, -1.0) * embed(a, v).matrix(), 1e-12));
}

TEST(Operators, TranslationKeepsTheMatrix) {
  std::mt19937_64 rng(5);
  const LocalOperator a(Volume{Site{0, 0}, Site{1, 0}}, 2, random_matrix(4, rng));
  const LocalOperator t = translate_op(a, Site{3, -2});
  EXPECT_EQ(t.support(), (Volume{Site{3, -2}, Site{4, -2}}));
  EXPECT_EQ(t.matrix(), a.matrix());
}

TEST(Operators, PartialTraceMatchesExplicitSum) {
  std::mt19937_64 rng(6);
  const Matrix rho = random_density(8, rng);
  // Trace out the middle qubit by hand.
  Matrix expect = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      for (int ap = 0; ap < 2; ++ap) {
        for (int cp = 0; cp < 2; ++cp) {
          for (int b = 0; b < 2; ++b) expect(2 * a + c, 2 * ap + cp) += rho(4 * a + 2 * b + c, 4 * ap + 2 * b + cp);
        }
      }
    }
  }
  EXPECT_TRUE(partial_trace(rho, chain(3), Volume{Site{0}, Site{2}}, 2).isApprox(expect, 1e-13));
}

TEST(Operators, ConditionalExpectationOnProducts) {
  const LocalOperator ab = LocalOperator::at_site(Site{0}, pauli::x() + pauli::identity()) *
                           LocalOperator::at_site(Site{1}, pauli::z() + 3.0 * pauli::identity());
  const LocalOperator e = conditional_expectation(ab, Volume{Site{0}});
  EXPECT_TRUE(e.matrix().isApprox(3.0 * (pauli::x() + pauli::identity()), 1e-13));
  EXPECT_NEAR(tracial_state(ab).real(), 3.0, 1e-13);
}

TEST(Operators, StateEvaluatesThroughReducedDensity) {
  std::mt19937_64 rng(7);
  const Volume v = chain(3);
  const StateFunctional phi(v, 2, random_density(8, rng), 1e-10);
  const LocalOperator a(Volume{Site{2}}, 2, random_matrix(2, rng));
  const Complex direct = (phi.rho() * embed(a, v).matrix()).trace();
  EXPECT_NEAR(std::abs(phi(a) - direct), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(phi.restrict_to(Volume{Site{1}, Site{2}})(a) - direct), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(phi.translated(Site{4})(translate_op(a, Site{4})) - direct), 0.0, 1e-13);
  EXPECT_GT(phi.min_eigenvalue(), -1e-12);
  EXPECT_THROW(phi(LocalOperator::at_site(Site{5}, pauli::x())), InputError);
}

TEST(Operators, StateRejectsBadDensity) {
  EXPECT_THROW(StateFunctional(chain(1), 2, Matrix::Identity(2, 2)), InputError);
  EXPECT_THROW(StateFunctional(chain(2), 2, Matrix::Identity(2, 2) / 2.0), InputError);
}

TEST(Operators, CommutatorIdentities) {
  std::mt19937_64 rng(8);
  const LocalOperator a(Volume{Site{0}, Site{1}}, 2, random_matrix(4, rng));
  const LocalOperator b(Volume{Site{1}}, 2, random_matrix(2, rng));
  const LocalOperator c(Volume{Site{1}, Site{2}}, 2, random_matrix(4, rng));
  const Volume v = chain(3);
  EXPECT_TRUE(embed(commutator(a, b) + commutator(b, a), v).matrix().isZero(1e-12));
  const Matrix jacobi = embed(commutator(a, commutator(b, c)), v).matrix() +
                        embed(commutator(b, commutator(c, a)), v).matrix() +
                        embed(commutator(c, commutator(a, b)), v).matrix();
  EXPECT_TRUE(jacobi.isZero(1e-10));
  EXPECT_TRUE(commutator(a, LocalOperator::at_site(Site{5}, pauli::x())).matrix().isZero(0.0));
}

TEST(Operators, OperatorNormMatchesSvd) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i) {
    const Matrix m = random_matrix(8, rng);
    const Matrix h = m + m.adjoint();
    EXPECT_NEAR(operator_norm(m), oracle::norm2(m), 1e-10 * oracle::norm2(m));
    EXPECT_NEAR(operator_norm(h), oracle::norm2(h), 1e-10 * oracle::norm2(h));
    EXPECT_NEAR(operator_norm(Complex(0, 1) * h), oracle::norm2(h), 1e-10 * oracle::norm2(h));
  }
}

TEST(Operators, DimensionCap) {
  EXPECT_THROW(checked_dimension(chain(13), 2, 4096), ResourceError);
  EXPECT_EQ(checked_dimension(chain(12), 2, 4096), 4096);
}

TEST(Operators, JsonRoundTrip) {
  std::mt19937_64 rng(10);
  const LocalOperator a(Volume{Site{-1}, Site{2}}, 3, random_matrix(9, rng));
  const LocalOperator b = local_operator_from_json(to_json(a));
  EXPECT_EQ(b.support(), a.support());
  EXPECT_EQ(b.k(), 3);
  EXPECT_EQ(b.matrix(), a.matrix());
}
