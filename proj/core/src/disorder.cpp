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
#include "ergospin/disorder.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ergospin/errors.hpp"

namespace ergospin {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr int kCoordBits = 21;
constexpr int kCoordBias = 1 << 20;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// 53-bit uniform in [0, 1) from two 32-bit words.
double to_unit(std::uint32_t w0, std::uint32_t w1) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(w0 >> 5) << 26) | (w1 >> 6);
  return static_cast<double>(bits) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string("law parameter '") + what + "' is not finite");
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t site_key(const Site& x) {
  if (x.dim() < 1 || x.dim() > 3) throw InputError("site keys support dimensions 1..3");
  std::uint64_t key = 0;
  for (int i = 0; i < x.dim(); ++i) {
    const int c = x[i];
    if (c <= -kCoordBias || c >= kCoordBias) {
      throw InputError("site coordinate " + std::to_string(c) + " outside the keyed range");
    }
    key = (key << kCoordBits) | static_cast<std::uint64_t>(c + kCoordBias);
  }
  return key;
}

void validate(const Law& l) {
  std::visit(Overloaded{[](const law::Uniform& u) {
                          require_finite(u.a, "a");
                          require_finite(u.b, "b");
                          if (!(u.a < u.b)) throw InputError("uniform law needs a < b");
                        },
                        [](const law::Bernoulli& b) {
                          require_finite(b.v0, "v0");
                          require_finite(b.v1, "v1");
                          if (!(b.p >= 0.0 && b.p <= 1.0)) {
                            throw InputError("bernoulli probability must lie in [0,1]");
                          }
                        },
                        [](const law::Gaussian& g) {
                          require_finite(g.mu, "mu");
                          require_finite(g.sigma, "sigma");
                          if (g.sigma < 0.0) throw InputError("gaussian sigma must be >= 0");
                        },
                        [](const law::Constant& c) { require_finite(c.c, "c"); }},
             l);
}

std::optional<double> sup_abs(const Law& l) {
  return std::visit(
      Overloaded{[](const law::Uniform& u) -> std::optional<double> {
                   return std::max(std::abs(u.a), std::abs(u.b));
                 },
                 [](const law::Bernoulli& b) -> std::optional<double> {
                   if (b.p == 0.0) return std::abs(b.v0);
                   if (b.p == 1.0) return std::abs(b.v1);
                   return std::max(std::abs(b.v0), std::abs(b.v1));
                 },
                 [](const law::Gaussian& g) -> std::optional<double> {
                   if (g.sigma == 0.0) return std::abs(g.mu);
                   return std::nullopt;
                 },
                 [](const law::Constant& c) -> std::optional<double> { return std::abs(c.c); }},
      l);
}

double mean(const Law& l) {
  return std::visit(Overloaded{[](const law::Uniform& u) { return 0.5 * (u.a + u.b); },
                               [](const law::Bernoulli& b) { return (1.0 - b.p) * b.v0 + b.p * b.v1; },
                               [](const law::Gaussian& g) { return g.mu; },
                               [](const law::Constant& c) { return c.c; }},
                    l);
}

std::string describe(const Law& l) { return to_json(l).dump(); }

DisorderField::DisorderField(std::uint64_t seed, Law law) : seed_(seed), law_(std::move(law)) {
  validate(law_);
}

double DisorderField::sample(const Site& y) const {
  Site p = y;
  if (!offset_.empty()) {
    if (static_cast<int>(offset_.size()) != y.dim()) {
      throw InputError("site dimension does not match the field's shift");
    }
    p = y - Site(offset_);
  }
  const std::uint64_t k = site_key(p);
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                         static_cast<std::uint32_t>(seed_ >> 32)};
  const std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(k),
                                         static_cast<std::uint32_t>(k >> 32), 0u, 0u};
  return std::visit(
      Overloaded{[&](const law::Uniform& u) {
                   const auto w = philox4x32(ctr, key);
                   return u.a + (u.b - u.a) * to_unit(w[0], w[1]);
                 },
                 [&](const law::Bernoulli& b) {
                   const auto w = philox4x32(ctr, key);
                   return to_unit(w[0], w[1]) < b.p ? b.v1 : b.v0;
                 },
                 [&](const law::Gaussian& g) {
                   const auto w = philox4x32(ctr, key);
                   const double u1 = 1.0 - to_unit(w[0], w[1]);
                   const double u2 = to_unit(w[2], w[3]);
                   const double r = std::sqrt(-2.0 * std::log(u1));
                   return g.mu + g.sigma * r * std::cos(2.0 * std::numbers::pi * u2);
                 },
                 [](const law::Constant& c) { return c.c; }},
      law_);
}

DisorderField DisorderField::shift(const Site& x) const {
  DisorderField out = *this;
  if (out.offset_.empty()) {
    out.offset_ = x.coords();
  } else {
    out.offset_ = (Site(out.offset_) + x).coords();
  }
  bool zero = true;
  for (int c : out.offset_) zero = zero && c == 0;
  if (zero) out.offset_.clear();
  return out;
}

bool DisorderField::same_realisation(const DisorderField& other) const {
  return seed_ == other.seed_ && offset_ == other.offset_ && to_json(law_) == to_json(other.law_);
}

EnsembleSpec EnsembleSpec::derive(std::uint64_t base_seed, std::size_t n) {
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> seeds;
  std::uint64_t state = base_seed;
  while (seeds.size() < n) {
    const std::uint64_t s = splitmix64(state);
    if (seen.insert(s).second) seeds.push_back(s);
  }
  return from_seeds(std::move(seeds));
}

EnsembleSpec EnsembleSpec::from_seeds(std::vector<std::uint64_t> seeds) {
  if (seeds.empty()) throw InputError("ensemble needs at least one seed");
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw InputError("ensemble seeds must be pairwise distinct");
  return EnsembleSpec{std::move(seeds)};
}

double spatial_average(const DisorderField& field, const std::function<double(double)>& g,
                       int radius, int dim) {
  if (radius < 1) throw InputError("spatial average radius must be >= 1");
  double sum = 0.0;
  std::int64_t count = 0;
  for_each_in_ball(Site::origin(dim), radius, [&](const Site& p) {
    sum += g(field.sample(p));
    ++count;
  });
  return sum / static_cast<double>(count);
}

Law law_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw InputError("law must be an object with exactly one of uniform/bernoulli/gaussian/constant");
  }
  const std::string name = j.begin().key();
  const nlohmann::json& v = j.begin().value();
  auto nums = [&](std::size_t n) {
    if (!v.is_array() || v.size() != n) {
      throw InputError("law '" + name + "' expects an array of " + std::to_string(n) + " numbers");
    }
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw InputError("law '" + name + "' parameters must be numbers");
      out.push_back(e.get<double>());
    }
    return out;
  };
  Law l;
  if (name == "uniform") {
    const auto p = nums(2);
    l = law::Uniform{p[0], p[1]};
  } else if (name == "bernoulli") {
    const auto p = nums(3);
    l = law::Bernoulli{p[0], p[1], p[2]};
  } else if (name == "gaussian") {
    const auto p = nums(2);
    l = law::Gaussian{p[0], p[1]};
  } else if (name == "constant") {
    if (!v.is_number()) throw InputError("law 'constant' expects a number");
    l = law::Constant{v.get<double>()};
  } else {
    throw InputError("unknown law '" + name + "'");
  }
  validate(l);
  return l;
}

nlohmann::json to_json(const Law& l) {
  return std::visit(
      Overloaded{[](const law::Uniform& u) { return nlohmann::json{{"uniform", {u.a, u.b}}}; },
                 [](const law::Bernoulli& b) {
                   return nlohmann::json{{"bernoulli", {b.p, b.v0, b.v1}}};
                 },
                 [](const law::Gaussian& g) {
                   return nlohmann::json{{"gaussian", {g.mu, g.sigma}}};
                 },
                 [](const law::Constant& c) { return nlohmann::json{{"constant", c.c}}; }},
      l);
}

}  // namespace ergospin
