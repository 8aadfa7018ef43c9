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

#include <nlohmann/json.hpp>

#include "ergospin/lattice.hpp"

namespace ergospin {

enum class FFamily { power_law };

/// Decay weight F on distances of Z^nu. Only the power law
/// F(r) = (1+r)^{-nu-1-eps} is built in.
struct FFunction {
  FFamily family = FFamily::power_law;
  int dim = 1;
  double epsilon = 1.0;

  /// Throws InputError unless dim >= 1 and epsilon > 0.
  static FFunction power_law(int dim, double epsilon);

  /// Decay exponent s = nu + 1 + eps.
  double exponent() const { return dim + 1.0 + epsilon; }
  double operator()(int r) const;
};

struct FNormEstimate {
  double value = 0.0;  ///< truncated sum over b_0(R)
  int truncation_radius = 0;
  double tail_bound = 0.0;  ///< rigorous bound on the neglected sum
  double upper() const { return value + tail_bound; }
};

/// sum_{y in b_x(R)} F(d(x,y)) with an integral tail bound. The ball is walked
/// in lexicographic order of y - x, so the value does not depend on \p center.
FNormEstimate uniform_norm(const FFunction& f, int truncation_radius);
FNormEstimate uniform_norm(const FFunction& f, int truncation_radius, const Site& center);

struct ConvolutionConstant {
  double witness = 0.0;         ///< sampled lower witness
  double analytic_bound = 0.0;  ///< 2^{s+1} ||F|| (upper bound, used in certificates)
  Site witness_x;
  Site witness_y;
  int truncation_radius = 0;
  int z_radius = 0;
};

/// max over y in b_0(R) of sum_z F(d(0,z)) F(d(z,y)) / F(d(0,y)), z over
/// b_0(3R). Translation invariance lets x be pinned at the origin.
ConvolutionConstant convolution_constant(const FFunction& f, int truncation_radius);

/// Rigorous upper bound on C_F, independent of any truncation.
double convolution_bound(const FFunction& f);

/// Parses {"family":"power_law","epsilon":e}; the dimension comes from the run.
FFunction ffunction_from_json(const nlohmann::json& j, int dim);
nlohmann::json to_json(const FFunction& f);
nlohmann::json to_json(const FNormEstimate& e);
nlohmann::json to_json(const ConvolutionConstant& c);

}  // namespace ergospin
