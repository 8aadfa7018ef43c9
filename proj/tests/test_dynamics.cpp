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

#include <cmath>
#include <random>

#include "ergospin/dynamics.hpp"
#include "ergospin/errors.hpp"
#include "oracle.hpp"

using namespace ergospin;

namespace {

Interaction xy_field(std::uint64_t seed) {
  return Interaction(1, 2, {germs::xy(1, 1.0, 0.3), germs::field(1, 'z')},
                     DisorderField(seed, law::Uniform{-1.0, 1.0}));
}

}  // namespace

TEST(Dynamics, SingleSpinPrecession) {
  // H = lambda sigma^z: alpha_t(sigma^x) = cos(2 lambda t) sigma^x - sin(2 lambda t) sigma^y.
  const double lambda = 0.8;
  const Interaction phi(1, 2, {germs::field(1, 'z')}, DisorderField(1, law::Constant{lambda}));
  const Propagator p(assemble(phi, Volume{Site{0}}));
  for (double t : {0.0, 0.1, 0.7, 2.5, -1.3}) {
    const Matrix got = p.evolve(LocalOperator::at_site(Site{0}, pauli::x()), t).matrix();
    const Matrix expect = std::cos(2 * lambda * t) * oracle::sx() - std::sin(2 * lambda * t) * oracle::sy();
    EXPECT_TRUE(got.isApprox(expect, 1e-13)) << t;
  }
}

TEST(Dynamics, EvolutionMatchesDirectExponential) {
  const Interaction phi = xy_field(3);
  const Volume v = chain(5);
  const Hamiltonian h = assemble(phi, v);
  const Propagator p(h);
  const LocalOperator a = LocalOperator::at_site(Site{2}, pauli::x()) * LocalOperator::at_site(Site{3}, pauli::y());
  for (double t : {0.3, 1.7}) {
    const oracle::M u = oracle::expi(h.op.matrix(), t);
    const oracle::M expect = u * embed(a, v).matrix() * u.adjoint();
    EXPECT_TRUE(p.evolve(a, t).matrix().isApprox(expect, 1e-11));
    EXPECT_TRUE(p.unitary(t).isApprox(u.adjoint(), 1e-11));  // U(t) = e^{-itH}
  }
}

TEST(Dynamics, GroupLawAndAutomorphism) {
  const Propagator p(assemble(xy_field(4), chain(4)));
  const double s = 0.4, t = 0.9;
  EXPECT_TRUE((p.unitary(s) * p.unitary(t)).isApprox(p.unitary(s + t), 1e-12));
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::x());
  const LocalOperator b = LocalOperator::at_site(Site{1}, pauli::z());
  const Matrix lhs = p.evolve(a * b, t).matrix();
  const Matrix rhs = p.evolve(a, t).matrix() * p.evolve(b, t).matrix();
  EXPECT_TRUE(lhs.isApprox(rhs, 1e-12));
  EXPECT_NEAR(op_norm(p.evolve(a, t)), 1.0, 1e-12);
}

TEST(Dynamics, TimeZeroIsExactEmbedding) {
  const Propagator p(assemble(xy_field(5), chain(4)));
  const LocalOperator a = LocalOperator::at_site(Site{1}, pauli::y());
  EXPECT_EQ(p.evolve(a, 0.0).matrix(), embed(a, chain(4)).matrix());
}

TEST(Dynamics, LiebRobinsonBoundFormula) {
  // ||a|| ||b|| / C_F (e^{N C_F |t|} - 1) sum_x sum_y F(d(x, y)).
  const double expect = 2.0 * 3.0 / 5.0 * (std::exp(7.0 * 5.0 * 0.1) - 1.0) * 0.25;
  EXPECT_NEAR(lr_bound(2.0, 3.0, 7.0, 5.0, 0.25, 0.1), expect, 1e-12 * expect);
  EXPECT_NEAR(lr_bound(2.0, 3.0, 7.0, 5.0, 0.25, -0.1), expect, 1e-12 * expect);
  EXPECT_EQ(lr_bound(2.0, 3.0, 7.0, 5.0, 0.25, 0.0), 0.0);
}

TEST(Dynamics, LiebRobinsonCertificate) {
  const FFunction f = FFunction::power_law(1, 1.0);
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::x());
  const LocalOperator b = LocalOperator::at_site(Site{5}, pauli::x());
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(0.2 * i);
  const Interaction phi = xy_field(6);
  const auto cert = lr_certify(phi, f, chain(6), a, b, times);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.lhs.front(), 0.0);
  EXPECT_EQ(cert.rhs.front(), 0.0);
  EXPECT_NEAR(cert.f_sum, std::pow(6.0, -3.0), 1e-15);
  // lhs against a direct computation.
  const Hamiltonian h = assemble(phi, chain(6));
  const oracle::M u = oracle::expi(h.op.matrix(), 1.0);
  const oracle::M at = u * embed(a, chain(6)).matrix() * u.adjoint();
  const oracle::M bb = embed(b, chain(6)).matrix();
  EXPECT_NEAR(cert.lhs[5], oracle::norm2(at * bb - bb * at), 1e-10);
  EXPECT_THROW(lr_certify(phi, f, chain(6), a, a, times), InputError);
}

TEST(Dynamics, DuhamelTraceIsBoundedAndShrinks) {
  const FFunction f = FFunction::power_law(1, 1.0);
  const Interaction phi = xy_field(7);
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::z());
  const auto tr = thermo_trace(phi, f, a, 0.5, BoxSequence(Site{0}, {1, 2, 3, 4}));
  EXPECT_TRUE(tr.passed);
  ASSERT_EQ(tr.deltas.size(), 3u);
  for (std::size_t i = 0; i < tr.deltas.size(); ++i) EXPECT_LE(tr.deltas[i], tr.duhamel_bounds[i]);
  EXPECT_LT(tr.deltas.back(), tr.deltas.front());
  // First delta against a direct computation on b_0(1) inside b_0(2).
  const Hamiltonian h1 = assemble(phi, ball(Site{0}, 1));
  const Hamiltonian h2 = assemble(phi, ball(Site{0}, 2));
  const oracle::M u1 = oracle::expi(h1.op.matrix(), 0.5);
  const oracle::M u2 = oracle::expi(h2.op.matrix(), 0.5);
  const LocalOperator e1(ball(Site{0}, 1), 2, u1 * embed(a, ball(Site{0}, 1)).matrix() * u1.adjoint());
  const oracle::M diff = u2 * embed(a, ball(Site{0}, 2)).matrix() * u2.adjoint() - embed(e1, ball(Site{0}, 2)).matrix();
  EXPECT_NEAR(tr.deltas[0], oracle::norm2(diff), 1e-10);
}

TEST(Dynamics, GaugeTransformPreservesNorms) {
  const Interaction phi(1, 2, {germs::xy(1, 1.0, 0.3)}, {});
  const DisorderField lam(9, law::Gaussian{0.0, 1.0});
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> site(-50, 50);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const int x = site(rng);
    const Volume z{Site{x}, Site{x + 1}};
    const double t = time(rng);
    const LocalOperator g = gauge_transform(phi, pauli::z(), lam, z, t);
    EXPECT_NEAR(op_norm(g), op_norm(phi.evaluate(z)), 1e-12);
  }
  EXPECT_THROW(gauge_transform(phi, pauli::z(), lam, Volume{Site{0}, Site{2}}, 0.1), InputError);
}

TEST(Dynamics, GaugeUnitaryIsAProductOfLocalPhases) {
  const DisorderField lam(10, law::Uniform{-1.0, 1.0});
  const LocalOperator u = gauge_unitary(pauli::z(), lam, chain(2), 0.6);
  const oracle::M expect = oracle::kron(oracle::expi(lam.sample(Site{0}) * oracle::sz(), 0.6),
                                        oracle::expi(lam.sample(Site{1}) * oracle::sz(), 0.6));
  EXPECT_TRUE(u.matrix().isApprox(expect, 1e-13));
}

TEST(Dynamics, GaugeIdentityOnSmallChains) {
  const Interaction phi(1, 2, {germs::xy(1, 1.0, 0.3)}, {});
  const DisorderField lam(11, law::Gaussian{0.0, 1.0});
  const LocalOperator a = LocalOperator::at_site(Site{1}, pauli::x());
  const auto g = gauge_identity_check(phi, pauli::z(), lam, chain(2, 0), chain(4, -1), a, 0.5);
  EXPECT_GT(g.direct, 1e-3);
  EXPECT_LE(g.residual, 1e-9);
  EXPECT_LE(g.integration_error, 1e-11);
}

TEST(Dynamics, JsonWritesInfinityAsString) {
  EXPECT_EQ(json_number(INFINITY), "inf");
  EXPECT_EQ(json_number(-INFINITY), "-inf");
  EXPECT_EQ(json_number(1.5), 1.5);
}
