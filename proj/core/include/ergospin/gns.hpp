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

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergospin/disorder.hpp"
#include "ergospin/interaction.hpp"
#include "ergospin/lattice.hpp"
#include "ergospin/operators.hpp"

namespace ergospin {

/// Tensor products of one-site generalised Pauli matrices (I, X, Y, Z for
/// k = 2, Weyl X^a Z^b otherwise), in lexicographic order of their labels.
/// Element 0 is the identity; the family is orthonormal for the tracial state.
std::vector<LocalOperator> operator_basis(const Volume& v, int k);

struct GnsOptions {
  double null_space = 1e-10;     ///< relative eigenvalue cut on the gram matrix
  double invariance = 1e-8;      ///< relative ||[rho, H]|| above which a warning is raised
  double self_adjoint = 1e-10;   ///< relative Hermiticity defect allowed in the generator
  std::size_t max_sites = 5;
};

/// Finite-dimensional GNS triple of a state together with the generator
/// [a] -> [[H, a]] of the implemented dynamics, in orthonormal quotient
/// coordinates.
struct GnsTriple {
  Volume volume;
  int k = 2;
  std::vector<LocalOperator> basis_ops;
  Matrix gram;            ///< phi(b_i^dagger b_j)
  Matrix null_projector;  ///< projector onto the numerical null space, basis coordinates
  Matrix coords;          ///< Q = V_r S_r^{-1/2}: basis -> orthonormal quotient frame
  int rank = 0;
  int cyclic_index = 0;
  Vector cyclic_vector;   ///< [1] in quotient coordinates
  Matrix represented_h;   ///< self-adjoint generator on the quotient
  double generator_defect = 0.0;  ///< Hermiticity defect before symmetrisation
  double invariance_defect = 0.0; ///< ||[rho, H]||_F / ||H||
  bool invariance_warning = false;
};

/// Throws ResourceError above options.max_sites and NumericError when the
/// generator is not self-adjoint on the quotient.
GnsTriple build_gns(const StateFunctional& state, const Hamiltonian& h, const GnsOptions& options = {});

struct Intertwiner {
  Site shift;
  Matrix basis_map;  ///< T_{ji} = rho_tr(b_j^dagger tau_x(b_i))
  Matrix matrix;     ///< quotient map, dst rank x src rank
  double isometry_residual = 0.0;
};

/// [a]_src -> [tau_x(a)]_dst. dst must live on src.volume + x. Throws
/// CertificationError when T^dagger G_dst T differs from G_src beyond \p tol.
Intertwiner build_intertwiner(const GnsTriple& src, const GnsTriple& dst, const Site& x,
                              double tol = 1e-10);

/// ||H_src - U^dagger H_dst U||.
double intertwining_residual(const GnsTriple& src, const GnsTriple& dst, const Intertwiner& u);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SpectralCounting {
  std::vector<Interval> intervals;
  std::vector<int> counts;
  bool endpoint_warning = false;  ///< an eigenvalue lies within 1e-12 of an endpoint
};

/// Eigenvalue counts of the generator in open intervals (lo, hi).
SpectralCounting spectral_counting(const GnsTriple& triple, const std::vector<Interval>& intervals);
RealVector gns_spectrum(const GnsTriple& triple);

struct DeterminismRecord {
  std::uint64_t seed = 0;
  Site shift;
  std::vector<int> counts_src;
  std::vector<int> counts_dst;
  double residual = 0.0;
  double h_norm = 0.0;
  double isometry_residual = 0.0;
  double spectrum_distance = 0.0;  ///< max |sorted spec src - sorted spec dst|
  double ground_energy_density = 0.0;
  bool counts_equal = false;
};

struct DeterminismReport {
  std::vector<DeterminismRecord> records;
  bool all_counts_equal = false;
  double max_relative_residual = 0.0;
  double energy_density_mean = 0.0;
  double energy_density_std = 0.0;
  /// Per interval, std over seeds of count / quotient dimension.
  std::vector<double> counting_dispersion;
};

/// For every seed: ground-state GNS triples at w on \p lambda and at theta_x w
/// on lambda + x, their intertwiner, residual and spectral counts.
DeterminismReport determinism_study(const Interaction& interaction, const Volume& lambda,
                                    const EnsembleSpec& ensemble, const std::vector<Interval>& intervals,
                                    const Site& x, const GnsOptions& options = {});

/// Lowest eigenvalue of H (values only).
double ground_energy(const Hamiltonian& h);

struct EnergyScanPoint {
  int length = 0;
  std::vector<double> densities;  ///< E_0 / L per seed
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation
};

/// Ground-energy density of open chains {0..L-1} over an ensemble.
std::vector<EnergyScanPoint> energy_density_scan(const Interaction& interaction,
                                                 const std::vector<int>& lengths,
                                                 const EnsembleSpec& ensemble, long long cap = 4096);

nlohmann::json to_json(const DeterminismRecord& r);

}  // namespace ergospin
