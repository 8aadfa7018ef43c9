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

#include "ergospin/errors.hpp"
#include "ergospin/interaction.hpp"
#include "oracle.hpp"

using namespace ergospin;

namespace {

Interaction xy_field(std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  return Interaction(1, 2, {germs::xy(1, 1.0, 0.3), germs::field(1, 'z')},
                     DisorderField(seed, law::Uniform{lo, hi}));
}

}  // namespace

TEST(Interaction, XYChainMatchesHandBuiltHamiltonian) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Interaction phi = xy_field(seed);
    const Volume v = chain(5, -2);
    std::vector<double> h;
    for (const auto& s : v) h.push_back(phi.field().sample(s));
    const Hamiltonian ham = assemble(phi, v);
    EXPECT_TRUE(ham.op.matrix().isApprox(oracle::xy_chain(5, 1.0, 0.3, h), 1e-13));
    EXPECT_TRUE(ham.op.is_self_adjoint());
    EXPECT_EQ(ham.terms.size(), 4u + 5u);
  }
}

TEST(Interaction, CovarianceIsBitExact) {
  // H^Lambda_omega equals tau_{-x} H^{Lambda+x}_{theta_x omega} entry by entry.
  const std::vector<Interaction> models{
      xy_field(11),
      Interaction(1, 2, {germs::xy(1, 0.7, 0.5, 0, true)}, DisorderField(12, law::Gaussian{0.0, 1.0})),
      Interaction(2, 2, {germs::heisenberg(2, 1.0, 0), germs::heisenberg(2, 1.0, 1), germs::field(2, 'x')},
                  DisorderField(13, law::Bernoulli{0.5, -1.0, 1.0}))};
  for (const auto& phi : models) {
    const Volume lambda = phi.dim() == 1 ? chain(6) : ball(Site{0, 0}, 1);
    const Site unit = Site::unit(phi.dim(), 0);
    for (int step : {-3, -1, 1, 3}) {
      Site x = unit;
      for (int i = 1; i < std::abs(step); ++i) x = x + unit;
      if (step < 0) x = -x;
      const Hamiltonian h0 = assemble(phi, lambda);
      const Hamiltonian hx = assemble(phi.shifted(x), translate(lambda, x));
      EXPECT_EQ(hx.op.support(), translate(lambda, x));
      EXPECT_EQ((h0.op.matrix() - hx.op.matrix()).cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

TEST(Interaction, EvaluateIsCovariant) {
  const Interaction phi = xy_field(21);
  const Volume z{Site{2}, Site{3}};
  const Site x{-5};
  EXPECT_EQ(phi.shifted(x).evaluate(translate(z, x)).matrix(), phi.evaluate(z).matrix());
  EXPECT_TRUE(phi.evaluate(Volume{Site{0}, Site{2}}).matrix().isZero(0.0));
}

TEST(Interaction, TermsMeetingAndRange) {
  const Interaction phi = xy_field(22);
  EXPECT_EQ(phi.range(), 1);
  const auto meet = phi.terms_meeting(Volume{Site{0}});
  EXPECT_EQ(meet.size(), 3u);  // two bonds and the field at 0
  for (const auto& [z, term] : meet) EXPECT_TRUE(z.contains(Site{0}));
  EXPECT_FALSE(phi.deterministic());
  EXPECT_TRUE(Interaction(1, 2, {germs::xy(1, 1.0, 0.0)}, {}).deterministic());
}

TEST(Interaction, FNormOfXYChain) {
  // Bond norm 2 mu over F(1) = 2^{-3} dominates: N_F = 16.
  const Interaction phi = xy_field(23);
  const FFunction f = FFunction::power_law(1, 1.0);
  const auto rep = f_norm(phi, f, 6);
  EXPECT_NEAR(rep.value, 16.0, 1e-12);
  EXPECT_EQ(distance(rep.witness_x, rep.witness_y), 1);
  EXPECT_FALSE(rep.box_smaller_than_range);
}

TEST(Interaction, FNormOfPureField) {
  // Phi = 0, v = sigma^z: N_F = max_x |lambda_x| / F(0) over the scanned box.
  const Interaction phi(1, 2, {germs::field(1, 'z')}, DisorderField(24, law::Uniform{0.0, 1.0}));
  const FFunction f = FFunction::power_law(1, 1.0);
  double expect = 0.0;
  for (const auto& s : ball(Site{0}, 10)) expect = std::max(expect, std::abs(phi.field().sample(s)));
  EXPECT_NEAR(f_norm(phi, f, 10).value, expect / f(0), 1e-14);
  EXPECT_LE(expect, 1.0);
}

TEST(Interaction, FNormIsDeterministicOnMatchedBoxes) {
  const Interaction phi = xy_field(25, 0.0, 3.0);
  const FFunction f = FFunction::power_law(1, 0.5);
  const Site x{17};
  EXPECT_EQ(f_norm(phi.shifted(x), f, translate(ball(Site{0}, 8), x)).value, f_norm(phi, f, ball(Site{0}, 8)).value);
}

TEST(Interaction, RoughNormBoundHolds) {
  const FFunction f = FFunction::power_law(1, 1.0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Interaction phi = xy_field(seed);
    const Volume v = chain(6);
    const auto rb = rough_norm_bound(phi, f, v);
    const double norm = op_norm(assemble(phi, v).op);
    EXPECT_LE(norm, rb.paper_form);
    EXPECT_LE(rb.paper_form, rb.exact_count);
  }
}

TEST(Interaction, PerturbationNeedsDeterministicBase) {
  const DisorderField lam(1, law::Gaussian{0.0, 1.0});
  EXPECT_THROW(perturb_with_field(xy_field(1), pauli::z(), lam), InputError);
  const Interaction base(1, 2, {germs::xy(1, 1.0, 0.3)}, {});
  const Interaction psi = perturb_with_field(base, pauli::z(), lam);
  const Hamiltonian h = assemble(psi, chain(3));
  std::vector<double> fields;
  for (const auto& s : chain(3)) fields.push_back(lam.sample(s));
  EXPECT_TRUE(h.op.matrix().isApprox(oracle::xy_chain(3, 1.0, 0.3, fields), 1e-13));
}

TEST(Interaction, ResourceCap) {
  EXPECT_THROW(assemble(xy_field(1), chain(13)), ResourceError);
}

TEST(Interaction, GermParsingReportsPointers) {
  using nlohmann::json;
  auto pointer_of = [](const json& j) -> std::string {
    try {
      germs_from_json(j, 1, 2, "/interaction");
    } catch (const ConfigError& e) {
      return e.pointer();
    }
    return "";
  };
  EXPECT_EQ(pointer_of({{"germs", {{{"kind", "ising"}}}}}), "/interaction/germs/0/kind");
  EXPECT_EQ(pointer_of({{"germs", {{{"kind", "xy"}}, {{"kind", "field"}, {"axis", "w"}}}}}),
            "/interaction/germs/1/axis");
  EXPECT_EQ(pointer_of({{"germs", {{{"kind", "xy"}, {"mu", "big"}}}}}), "/interaction/germs/0/mu");
  EXPECT_EQ(pointer_of({{"germs", {{{"kind", "xy"}, {"colour", 1}}}}}), "/interaction/germs/0/colour");
  EXPECT_EQ(pointer_of({{"germs", {{{"kind", "field"}, {"shape", {{0}, {1}}}}}}}), "/interaction/germs/0/shape");
  EXPECT_EQ(pointer_of({{"germs", json::array()}}), "/interaction/germs");
  EXPECT_EQ(germs_from_json({{"germs", {{{"kind", "heisenberg"}, {"j", 2.0}}}}}, 1, 2).size(), 1u);
}
