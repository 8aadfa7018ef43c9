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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/lattice.hpp"

namespace ergospin {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Injective site key: each coordinate + 2^20 packed into 21 bits. Supports
/// nu <= 3 and coordinates in (-2^20, 2^20); throws InputError otherwise.
std::uint64_t site_key(const Site& x);

namespace law {
struct Uniform {
  double a = 0.0;
  double b = 1.0;
};
/// Takes value v1 with probability p and v0 otherwise.
struct Bernoulli {
  double p = 0.5;
  double v0 = 0.0;
  double v1 = 1.0;
};
struct Gaussian {
  double mu = 0.0;
  double sigma = 1.0;
};
struct Constant {
  double c = 0.0;
};
}  // namespace law

using Law = std::variant<law::Uniform, law::Bernoulli, law::Gaussian, law::Constant>;

/// Throws InputError for empty intervals, p outside [0,1], negative sigma or
/// non-finite parameters.
void validate(const Law& l);
/// Essential supremum of |lambda|; empty for unbounded laws.
std::optional<double> sup_abs(const Law& l);
double mean(const Law& l);
std::string describe(const Law& l);

/// Seeded, site-addressable IID field with the exact shift action.
///
/// A field stores an accumulated offset and samples
///   sample(y) = draw(seed, y - offset),
/// so that sample(shift(f, x), y + x) = sample(f, y). This is the direction
/// under which germ-built interactions obey tau_x h(w, Z) = h(theta_x w, Z + x).
class DisorderField {
 public:
  DisorderField() = default;
  DisorderField(std::uint64_t seed, Law law);

  std::uint64_t seed() const { return seed_; }
  const Law& law() const { return law_; }
  /// Accumulated shift; empty coordinates mean the zero vector.
  const std::vector<int>& offset() const { return offset_; }

  double sample(const Site& y) const;
  DisorderField shift(const Site& x) const;

  /// Equal seed, law and offset (so every sample agrees).
  bool same_realisation(const DisorderField& other) const;

 private:
  std::uint64_t seed_ = 0;
  Law law_ = law::Constant{0.0};
  std::vector<int> offset_;
};

/// Master seeds for an ensemble; pairwise distinct.
struct EnsembleSpec {
  std::vector<std::uint64_t> seeds;

  std::size_t n_samples() const { return seeds.size(); }
  /// Derives n distinct seeds from a base seed with splitmix64.
  static EnsembleSpec derive(std::uint64_t base_seed, std::size_t n);
  /// Throws InputError on duplicates or an empty list.
  static EnsembleSpec from_seeds(std::vector<std::uint64_t> seeds);
};

/// Birkhoff average (1/|b_0(r)|) sum_{p in b_0(r)} g(sample(f, p)).
double spatial_average(const DisorderField& field, const std::function<double(double)>& g,
                       int radius, int dim);

/// {"uniform":[a,b]}, {"bernoulli":[p,v0,v1]}, {"gaussian":[mu,sigma]},
/// {"constant":c}.
Law law_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Law& l);

}  // namespace ergospin
