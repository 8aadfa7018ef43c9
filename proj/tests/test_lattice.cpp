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
#include <set>

#include "ergospin/errors.hpp"
#include "ergospin/lattice.hpp"

using namespace ergospin;

TEST(Lattice, DistanceIsMaxNorm) {
  EXPECT_EQ(distance(Site{0, 0}, Site{2, -3}), 3);
  EXPECT_EQ(distance(Site{1, 1, 1}, Site{-1, 2, 1}), 2);
  EXPECT_EQ(distance(Site{4}, Site{4}), 0);
  EXPECT_THROW(distance(Site{0}, Site{0, 0}), InputError);
}

TEST(Lattice, VolumeIsSortedAndDeduplicated) {
  const Volume v{Site{3}, Site{-1}, Site{0}};
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], Site{-1});
  EXPECT_EQ(v[2], Site{3});
  EXPECT_EQ(v.index_of(Site{0}).value(), 1u);
  EXPECT_FALSE(v.index_of(Site{1}).has_value());
}

TEST(Lattice, BallSizeMatchesShellCount) {
  // |b_0(r)| in Z^nu counted by brute force against shell_size.
  for (int dim = 1; dim <= 3; ++dim) {
    for (int r = 0; r <= 4; ++r) {
      std::int64_t total = 0;
      for (int q = 0; q <= r; ++q) total += shell_size(dim, q);
      EXPECT_EQ(static_cast<std::int64_t>(ball(Site::origin(dim), r).size()), total) << dim << " " << r;
    }
  }
  EXPECT_EQ(shell_size(1, 0), 1);
  EXPECT_EQ(shell_size(1, 3), 2);
  EXPECT_EQ(shell_size(2, 3), 49 - 25);
  EXPECT_EQ(shell_size(3, 2), 125 - 27);
  EXPECT_EQ(ball(Site{0, 0}, 2).size(), 25u);
}

TEST(Lattice, DistanceIsAMetricOnRandomTriples) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-20, 20);
  auto site = [&] { return Site{c(rng), c(rng), c(rng)}; };
  for (int i = 0; i < 500; ++i) {
    const Site a = site(), b = site(), d = site();
    EXPECT_EQ(distance(a, a), 0);
    EXPECT_EQ(distance(a, b), distance(b, a));
    EXPECT_EQ(distance(a, b) == 0, a == b);
    EXPECT_LE(distance(a, d), distance(a, b) + distance(b, d));
  }
}

TEST(Lattice, ChainAndTranslate) {
  const Volume c = chain(4, -1);
  EXPECT_EQ(c, (Volume{Site{-1}, Site{0}, Site{1}, Site{2}}));
  EXPECT_EQ(translate(c, Site{3}), chain(4, 2));
  EXPECT_EQ(translate(translate(c, Site{5}), Site{-5}), c);
}

TEST(Lattice, SetAlgebra) {
  const Volume a = chain(4, 0);
  const Volume b = chain(4, 2);
  EXPECT_EQ(a.join(b), chain(6, 0));
  EXPECT_EQ(a.minus(b), chain(2, 0));
  EXPECT_EQ(symmetric_difference(a, b), (Volume{Site{0}, Site{1}, Site{4}, Site{5}}));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE(chain(2, 0).intersects(chain(2, 2)));
  EXPECT_TRUE(chain(2, 1).is_subset_of(a));
  EXPECT_EQ(a.diameter(), 3);
}

TEST(Lattice, BallSymmetricDifferenceUnderShift) {
  // |b_0(n) sym-diff b_z(n)| = 2|z| in one dimension for |z| <= 2n + 1.
  for (int n = 0; n <= 6; ++n) {
    for (int z = 1; z <= 2 * n + 1; ++z) {
      EXPECT_EQ(symmetric_difference(ball(Site{0}, n), ball(Site{z}, n)).size(), static_cast<std::size_t>(2 * z));
    }
  }
}

TEST(Lattice, ForEachInBallVisitsEachSiteOnce) {
  std::set<Site> seen;
  int calls = 0;
  for_each_in_ball(Site{1, -1}, 3, [&](const Site& s) {
    ++calls;
    seen.insert(s);
    EXPECT_LE(distance(s, Site{1, -1}), 3);
  });
  EXPECT_EQ(calls, static_cast<int>(seen.size()));
  EXPECT_EQ(seen.size(), ball(Site{1, -1}, 3).size());
}

TEST(Lattice, BoxSequenceRejectsNonIncreasingRadii) {
  EXPECT_THROW(BoxSequence(Site{0}, {2, 2}), InputError);
  EXPECT_THROW(BoxSequence(Site{0}, {}), InputError);
  const BoxSequence seq(Site{0}, {1, 3});
  EXPECT_EQ(seq.volume(1), chain(7, -3));
}

TEST(Lattice, JsonRoundTrip) {
  const Volume v{Site{0, 1}, Site{2, -1}};
  const nlohmann::json j = v;
  EXPECT_EQ(j.get<Volume>(), v);
}
