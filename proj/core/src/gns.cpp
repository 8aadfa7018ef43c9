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
#include "ergospin/gns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergospin/errors.hpp"
#include "ergospin/groundstate.hpp"
#include "ergospin/linalg.hpp"

namespace ergospin {

namespace {

std::vector<Matrix> one_site_basis(int k) {
  std::vector<Matrix> out;
  if (k == 2) {
    for (int i = 0; i < 4; ++i) out.push_back(pauli::by_index(i));
  } else {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) out.push_back(weyl(k, a, b));
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

std::vector<LocalOperator> operator_basis(const Volume& v, int k) {
  const auto local = one_site_basis(k);
  std::vector<Matrix> mats{Matrix::Identity(1, 1)};
  for (std::size_t site = 0; site < v.size(); ++site) {
    std::vector<Matrix> next;
    next.reserve(mats.size() * local.size());
    for (const auto& m : mats) {
      for (const auto& l : local) next.push_back(kron(m, l));
    }
    mats = std::move(next);
  }
  std::vector<LocalOperator> out;
  out.reserve(mats.size());
  for (auto& m : mats) out.emplace_back(v, k, std::move(m));
  return out;
}

GnsTriple build_gns(const StateFunctional& state, const Hamiltonian& h, const GnsOptions& options) {
  if (state.volume() != h.volume) throw InputError("state and Hamiltonian live on different volumes");
  if (state.k() != h.op.k()) throw InputError("state and Hamiltonian have different on-site dimensions");
  if (state.volume().size() > options.max_sites) {
    throw ResourceError("GNS triples are limited to " + std::to_string(options.max_sites) + " sites");
  }
  GnsTriple t;
  t.volume = state.volume();
  t.k = state.k();
  t.basis_ops = operator_basis(t.volume, t.k);

  const Matrix& rho = state.rho();
  const Matrix& hm = h.op.matrix();
  const double h_norm = std::max(op_norm(h.op), 1e-300);
  t.invariance_defect = (rho * hm - hm * rho).norm() / h_norm;
  t.invariance_warning = t.invariance_defect > options.invariance;

  // Purification: rho = sum_k p_k |k><k|, vectors sqrt(p_k) |k>.
  const auto rs = hermitian_eigensystem(0.5 * (rho + rho.adjoint()), true);
  const Matrix rv = rs.complex_vectors();
  const double pmax = rs.values.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < rs.values.size(); ++i) {
    if (rs.values(i) > 1e-14 * pmax) keep.push_back(i);
  }
  const Eigen::Index d = rho.rows();
  Matrix psi(d, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    psi.col(static_cast<Eigen::Index>(c)) = std::sqrt(rs.values(keep[c])) * rv.col(keep[c]);
  }

  const auto m = static_cast<Eigen::Index>(t.basis_ops.size());
  const Eigen::Index rows = d * psi.cols();
  Matrix w(rows, m);
  Matrix y(rows, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Matrix& b = t.basis_ops[static_cast<std::size_t>(j)].matrix();
    const Matrix bp = b * psi;
    const Matrix cp = hm * bp - b * (hm * psi);
    w.col(j) = Eigen::Map<const Vector>(bp.data(), rows);
    y.col(j) = Eigen::Map<const Vector>(cp.data(), rows);
  }
  t.gram = w.adjoint() * w;
  t.gram = 0.5 * (t.gram + t.gram.adjoint());
  const Matrix kmat = w.adjoint() * y;

  const auto gs = hermitian_eigensystem(t.gram, true);
  const Matrix gv = gs.complex_vectors();
  const double smax = gs.values.maxCoeff();
  std::vector<Eigen::Index> range;
  std::vector<Eigen::Index> null;
  for (Eigen::Index i = 0; i < gs.values.size(); ++i) {
    (gs.values(i) > options.null_space * smax ? range : null).push_back(i);
  }
  t.rank = static_cast<int>(range.size());
  t.coords = Matrix(m, t.rank);
  for (std::size_t c = 0; c < range.size(); ++c) {
    t.coords.col(static_cast<Eigen::Index>(c)) = gv.col(range[c]) / std::sqrt(gs.values(range[c]));
  }
  t.null_projector = Matrix::Zero(m, m);
  for (Eigen::Index i : null) t.null_projector += gv.col(i) * gv.col(i).adjoint();

  Matrix rep = t.coords.adjoint() * kmat * t.coords;
  const double rep_scale = std::max(1.0, rep.cwiseAbs().maxCoeff());
  t.generator_defect = hermiticity_defect(rep) / rep_scale;
  if (t.generator_defect > options.self_adjoint) {
    throw NumericError("GNS generator is not self-adjoint on the quotient (defect " +
                       std::to_string(t.generator_defect) + (t.invariance_warning ? "; state is not H-invariant)" : ")"));
  }
  t.represented_h = 0.5 * (rep + rep.adjoint());
  t.cyclic_index = 0;
  t.cyclic_vector = t.coords.adjoint() * t.gram.col(0);
  return t;
}

Intertwiner build_intertwiner(const GnsTriple& src, const GnsTriple& dst, const Site& x, double tol) {
  if (src.k != dst.k) throw InputError("triples have different on-site dimensions");
  if (translate(src.volume, x) != dst.volume) {
    throw InputError("destination triple must live on the source volume shifted by x");
  }
  const auto m = static_cast<Eigen::Index>(src.basis_ops.size());
  const double dim = static_cast<double>(src.basis_ops.front().dimension());
  Intertwiner u;
  u.shift = x;
  u.basis_map = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const LocalOperator moved = translate_op(src.basis_ops[static_cast<std::size_t>(i)], x);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Matrix& bj = dst.basis_ops[static_cast<std::size_t>(j)].matrix();
      const Complex c = (bj.adjoint() * moved.matrix()).trace() / dim;
      if (std::abs(c) > 1e-14) u.basis_map(j, i) = c;
    }
  }
  const Matrix pulled = u.basis_map.adjoint() * dst.gram * u.basis_map;
  const double gram_defect = (pulled - src.gram).cwiseAbs().maxCoeff();
  if (gram_defect > tol * std::max(1.0, src.gram.cwiseAbs().maxCoeff())) {
    throw CertificationError("covariance precondition failed: gram matrices differ by " +
                             std::to_string(gram_defect));
  }
  if (src.rank != dst.rank) throw CertificationError("quotient dimensions differ under the shift");
  u.matrix = dst.coords.adjoint() * dst.gram * u.basis_map * src.coords;
  const Matrix id = Matrix::Identity(src.rank, src.rank);
  u.isometry_residual = std::max((u.matrix.adjoint() * u.matrix - id).cwiseAbs().maxCoeff(),
                                 (u.matrix * u.matrix.adjoint() - id).cwiseAbs().maxCoeff());
  return u;
}

double intertwining_residual(const GnsTriple& src, const GnsTriple& dst, const Intertwiner& u) {
  if (u.matrix.rows() != dst.rank || u.matrix.cols() != src.rank) {
    throw InputError("intertwiner does not match the triples");
  }
  return operator_norm(src.represented_h - u.matrix.adjoint() * dst.represented_h * u.matrix);
}

RealVector gns_spectrum(const GnsTriple& triple) {
  return hermitian_eigensystem(triple.represented_h, false).values;
}

SpectralCounting spectral_counting(const GnsTriple& triple, const std::vector<Interval>& intervals) {
  const RealVector e = gns_spectrum(triple);
  SpectralCounting out;
  out.intervals = intervals;
  for (const auto& iv : intervals) {
    if (!(iv.lo <= iv.hi)) throw InputError("interval needs lo <= hi");
    int c = 0;
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      if (e(i) > iv.lo && e(i) < iv.hi) ++c;
      if (std::abs(e(i) - iv.lo) < 1e-12 || std::abs(e(i) - iv.hi) < 1e-12) out.endpoint_warning = true;
    }
    out.counts.push_back(c);
  }
  return out;
}

DeterminismReport determinism_study(const Interaction& interaction, const Volume& lambda,
                                    const EnsembleSpec& ensemble, const std::vector<Interval>& intervals,
                                    const Site& x, const GnsOptions& options) {
  DeterminismReport rep;
  rep.all_counts_equal = true;
  std::vector<std::vector<double>> normalised(intervals.size());
  std::vector<double> energies;
  for (std::uint64_t seed : ensemble.seeds) {
    const Interaction src_i = interaction.with_field(DisorderField(seed, interaction.field().law()));
    const Interaction dst_i = src_i.shifted(x);
    const Hamiltonian hs = assemble(src_i, lambda);
    const Hamiltonian hd = assemble(dst_i, translate(lambda, x));
    const GroundStateResult gs_src = ground_state(hs);
    const GroundStateResult gs_dst = ground_state(hd);
    const GnsTriple ts = build_gns(gs_src.state, hs, options);
    const GnsTriple td = build_gns(gs_dst.state, hd, options);
    const Intertwiner u = build_intertwiner(ts, td, x);

    DeterminismRecord r;
    r.seed = seed;
    r.shift = x;
    r.residual = intertwining_residual(ts, td, u);
    r.h_norm = operator_norm(ts.represented_h);
    r.isometry_residual = u.isometry_residual;
    r.counts_src = spectral_counting(ts, intervals).counts;
    r.counts_dst = spectral_counting(td, intervals).counts;
    r.counts_equal = r.counts_src == r.counts_dst;
    const RealVector es = gns_spectrum(ts);
    const RealVector ed = gns_spectrum(td);
    r.spectrum_distance = es.size() == ed.size() ? (es - ed).cwiseAbs().maxCoeff()
                                                 : std::numeric_limits<double>::infinity();
    r.ground_energy_density = gs_src.energy / static_cast<double>(lambda.size());

    rep.all_counts_equal = rep.all_counts_equal && r.counts_equal;
    rep.max_relative_residual =
        std::max(rep.max_relative_residual, r.residual / std::max(r.h_norm, 1e-300));
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      normalised[i].push_back(static_cast<double>(r.counts_src[i]) / ts.rank);
    }
    energies.push_back(r.ground_energy_density);
    rep.records.push_back(std::move(r));
  }
  rep.energy_density_mean = mean_of(energies);
  rep.energy_density_std = sample_std(energies, rep.energy_density_mean);
  for (const auto& v : normalised) rep.counting_dispersion.push_back(sample_std(v, mean_of(v)));
  return rep;
}

double ground_energy(const Hamiltonian& h) {
  return hermitian_eigensystem(h.op.matrix(), false).values(0);
}

std::vector<EnergyScanPoint> energy_density_scan(const Interaction& interaction,
                                                 const std::vector<int>& lengths,
                                                 const EnsembleSpec& ensemble, long long cap) {
  if (interaction.dim() != 1) throw InputError("energy density scans use open chains (dimension 1)");
  std::vector<EnergyScanPoint> out;
  for (int length : lengths) {
    if (length < 1) throw InputError("chain length must be >= 1");
    EnergyScanPoint pt;
    pt.length = length;
    const Volume v = chain(length);
    for (std::uint64_t seed : ensemble.seeds) {
      const Interaction i = interaction.with_field(DisorderField(seed, interaction.field().law()));
      pt.densities.push_back(ground_energy(assemble(i, v, cap)) / length);
    }
    pt.mean = mean_of(pt.densities);
    pt.stddev = sample_std(pt.densities, pt.mean);
    out.push_back(std::move(pt));
  }
  return out;
}

nlohmann::json to_json(const DeterminismRecord& r) {
  return {{"seed", r.seed},
          {"shift", r.shift.coords()},
          {"counts_src", r.counts_src},
          {"counts_dst", r.counts_dst},
          {"residual", r.residual},
          {"h_norm", r.h_norm},
          {"isometry_residual", r.isometry_residual},
          {"spectrum_distance", r.spectrum_distance},
          {"ground_energy_density", r.ground_energy_density},
          {"counts_equal", r.counts_equal}};
}

}  // namespace ergospin
