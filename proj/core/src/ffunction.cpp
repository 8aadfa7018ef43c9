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
#include "ergospin/ffunction.hpp"

#include <algorithm>
#include <cmath>

#include "ergospin/errors.hpp"

namespace ergospin {

namespace {

// Tail of the shell sum: |shell(r)| <= nu 2^nu (1+r)^{nu-1} and an integral
// comparison give sum_{r>R} |shell(r)| F(r) <= nu 2^nu (1+R)^{-1-eps}/(1+eps).
double tail(const FFunction& f, int r) {
  return f.dim * std::pow(2.0, f.dim) * std::pow(1.0 + r, -1.0 - f.epsilon) / (1.0 + f.epsilon);
}

}  // namespace

FFunction FFunction::power_law(int dim, double epsilon) {
  if (dim < 1) throw InputError("F-function dimension must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InputError("power-law epsilon must be a positive finite number");
  }
  return FFunction{FFamily::power_law, dim, epsilon};
}

double FFunction::operator()(int r) const {
  if (r < 0) throw InputError("F-function evaluated at negative distance");
  return std::pow(1.0 + r, -exponent());
}

FNormEstimate uniform_norm(const FFunction& f, int truncation_radius) {
  return uniform_norm(f, truncation_radius, Site::origin(f.dim));
}

FNormEstimate uniform_norm(const FFunction& f, int truncation_radius, const Site& center) {
  if (truncation_radius < 1) throw InputError("truncation radius must be >= 1");
  if (center.dim() != f.dim) throw InputError("center dimension does not match F-function");
  std::vector<double> weights(static_cast<std::size_t>(truncation_radius) + 1);
  for (int r = 0; r <= truncation_radius; ++r) weights[static_cast<std::size_t>(r)] = f(r);
  double sum = 0.0;
  for_each_in_ball(center, truncation_radius, [&](const Site& y) {
    sum += weights[static_cast<std::size_t>(distance(center, y))];
  });
  return FNormEstimate{sum, truncation_radius, tail(f, truncation_radius)};
}

double convolution_bound(const FFunction& f) {
  // (1+d(x,y))^s <= 2^s [(1+d(x,z))^s + (1+d(z,y))^s] by the triangle inequality.
  const int r = 400;
  double norm = 0.0;
  for (int k = 0; k <= r; ++k) norm += static_cast<double>(shell_size(f.dim, k)) * f(k);
  return std::pow(2.0, f.exponent() + 1.0) * (norm + tail(f, r));
}

ConvolutionConstant convolution_constant(const FFunction& f, int truncation_radius) {
  if (truncation_radius < 1) throw InputError("truncation radius must be >= 1");
  const int zr = 3 * truncation_radius;
  std::vector<double> weights(static_cast<std::size_t>(zr + truncation_radius) + 1);
  for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = f(static_cast<int>(r));
  const Site origin = Site::origin(f.dim);
  std::vector<Site> zs;
  for_each_in_ball(origin, zr, [&](const Site& z) { zs.push_back(z); });

  ConvolutionConstant out;
  out.truncation_radius = truncation_radius;
  out.z_radius = zr;
  out.witness_x = origin;
  out.witness_y = origin;
  for_each_in_ball(origin, truncation_radius, [&](const Site& y) {
    double s = 0.0;
    for (const auto& z : zs) {
      s += weights[static_cast<std::size_t>(distance(origin, z))] *
           weights[static_cast<std::size_t>(distance(z, y))];
    }
    const double ratio = s / weights[static_cast<std::size_t>(distance(origin, y))];
    if (ratio > out.witness) {
      out.witness = ratio;
      out.witness_y = y;
    }
  });
  out.analytic_bound = convolution_bound(f);
  return out;
}

FFunction ffunction_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_object()) throw InputError("F-function spec must be an object");
  const std::string family = j.value("family", std::string("power_law"));
  if (family != "power_law") throw InputError("unknown F-function family '" + family + "'");
  if (!j.contains("epsilon")) throw InputError("power_law F-function requires 'epsilon'");
  if (!j.at("epsilon").is_number()) throw InputError("'epsilon' must be a number");
  return FFunction::power_law(dim, j.at("epsilon").get<double>());
}

nlohmann::json to_json(const FFunction& f) {
  return {{"family", "power_law"}, {"dim", f.dim}, {"epsilon", f.epsilon}};
}

nlohmann::json to_json(const FNormEstimate& e) {
  return {{"value", e.value}, {"truncation_radius", e.truncation_radius}, {"tail_bound", e.tail_bound}};
}

nlohmann::json to_json(const ConvolutionConstant& c) {
  return {{"witness", c.witness},
          {"analytic_bound", c.analytic_bound},
          {"witness_x", c.witness_x.coords()},
          {"witness_y", c.witness_y.coords()},
          {"truncation_radius", c.truncation_radius},
          {"z_radius", c.z_radius}};
}

}  // namespace ergospin
