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

#include <cstddef>

namespace ergospin {

/// Every numerical threshold used by the library lives here so a run can be
/// reproduced by echoing a single record.
struct Tolerances {
  /// Algebraic identities (trace cyclicity, self-adjointness, covariance).
  double algebraic = 1e-12;
  /// Spectral comparisons (sorted spectra, energies).
  double spectral = 1e-9;
  /// Relative slack on certificate inequalities lhs <= rhs * (1 + slack).
  double certificate_slack = 1e-9;
  /// Relative singular-value cut defining the GNS null space.
  double null_space = 1e-10;
  /// Relative tolerance for the GNS intertwining residual.
  double intertwining = 1e-8;
  /// Largest admissible gauge-identity residual.
  double gauge_identity = 1e-9;
  /// Isometry residual for GNS intertwiners.
  double isometry = 1e-10;
  /// Lower limit for the finite-volume ground-state positivity condition.
  double ground_condition = 1e-8;
  /// Relative gap below which a ground space is treated as degenerate.
  double degeneracy = 1e-10;
  /// Largest Hilbert-space dimension k^|volume| handled densely.
  std::size_t dense_cap = 4096;
  /// Largest volume for which GNS triples are built (basis size k^(2|volume|)).
  std::size_t gns_max_sites = 5;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace ergospin
