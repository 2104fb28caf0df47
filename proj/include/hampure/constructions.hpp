// Copyright 2026 The hampure Authors
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

// Explicit purifications of two or more Hamiltonians:
//
//   purify_pair_tensor  d_E = 2d      block matrix [[h1, h2], [h2, h1]]
//   purify_pair_qubit   d_E = 3       optimal for d = 2
//   purify_pair_schur   d_E = 2d - 1  L/R split of one row block of a unitary
//   purify_m_md         d_E = m d     partial isometry built from eigenbases
//
// Every construction projects onto the top-left d x d block. Where a tensor factor is
// involved, the ancilla index varies slowest, so that block is literally the projected one.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hampure/core.hpp"
#include "hampure/purification.hpp"

namespace hampure {

namespace detail {

inline void require_same_dims(std::span<const HermitianOperator> hs, const char* who) {
  for (const auto& h : hs) {
    if (h.dim() != hs.front().dim()) {
      throw DimensionError(std::string(who) + ": input dimensions differ (" +
                           std::to_string(hs.front().dim()) + " vs " + std::to_string(h.dim()) +
                           ")");
    }
  }
}

}  // namespace detail

/// H_1 = h1 (x) I + h2 (x) X, H_2 = h2 (x) I + h1 (x) X with the qubit factor slowest,
/// i.e. the block matrices [[h1, h2], [h2, h1]] and [[h2, h1], [h1, h2]].
inline Purification purify_pair_tensor(const HermitianOperator& h1, const HermitianOperator& h2) {
  const std::vector<HermitianOperator> in{h1, h2};
  detail::require_same_dims(in, "purify_pair_tensor");
  const int d = h1.dim();
  auto block = [d](const CMatrix& diag, const CMatrix& off) {
    CMatrix m(2 * d, 2 * d);
    m << diag, off, off, diag;
    return HermitianOperator(m);
  };
  return Purification(in, {block(h1.matrix(), h2.matrix()), block(h2.matrix(), h1.matrix())},
                      ProjectionConvention(d, 2 * d), Method::tensor2d);
}

/// The commuting 3x3 pair that purifies (Z, X cos(theta) + Y sin(theta)) with one extra
/// level appended after the qubit.
inline std::pair<CMatrix, CMatrix> qubit_canonical_pair(double theta) {
  const double r2 = std::numbers::sqrt2;
  const Complex em = std::exp(-kI * theta);
  const Complex ep = std::exp(kI * theta);
  CMatrix h1(3, 3), h2(3, 3);
  h1 << 1, 0, 0,
        0, -1, r2,
        0, r2, 0;
  h2 << 0, em, r2 * em,
        ep, 0, 0,
        r2 * ep, 0, 0;
  return {h1, h2};
}

/// Optimal purification of two qubit Hamiltonians into d_E = 3.
///
/// Writes h_j = t_j I + r_j . sigma, rotates r_1 onto the z axis, purifies the canonical
/// pair and maps the result back with U (+) 1. If h1 is proportional to the identity the
/// roles are swapped; if both are, the trivial embedding is returned.
inline Purification purify_pair_qubit(const HermitianOperator& h1, const HermitianOperator& h2,
                                      double degeneracy_tol = 1e-12) {
  if (h1.dim() != 2 || h2.dim() != 2) {
    throw DimensionError("purify_pair_qubit needs 2x2 inputs, got " + std::to_string(h1.dim()) +
                         "x" + std::to_string(h1.dim()) + " and " + std::to_string(h2.dim()) +
                         "x" + std::to_string(h2.dim()));
  }
  const ProjectionConvention conv(2, 3);
  auto bloch = [](const CMatrix& h) {
    const double t = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const Eigen::Vector3d r(h(0, 1).real(), -h(0, 1).imag(), 0.5 * (h(0, 0).real() - h(1, 1).real()));
    return std::pair{t, r};
  };
  const auto [t1, r1] = bloch(h1.matrix());
  const auto [t2, r2] = bloch(h2.matrix());
  const double scale = std::max({1.0, h1.norm(), h2.norm()});

  if (r1.norm() <= degeneracy_tol * scale && r2.norm() <= degeneracy_tol * scale) {
    auto trivial = [&conv](const HermitianOperator& h, double t) {
      return HermitianOperator(direct_sum(h.matrix(), CMatrix::Constant(1, 1, t)));
    };
    return Purification({h1, h2}, {trivial(h1, t1), trivial(h2, t2)}, conv, Method::qubit3,
                        {"both inputs proportional to identity: trivial embedding"});
  }
  if (r1.norm() <= degeneracy_tol * scale) {
    Purification swapped = purify_pair_qubit(h2, h1, degeneracy_tol);
    std::swap(swapped.inputs[0], swapped.inputs[1]);
    std::swap(swapped.extended[0], swapped.extended[1]);
    swapped.notes.emplace_back("first input proportional to identity: roles swapped");
    return swapped;
  }

  // Basis in which h1 - t1 I = |r1| Z: eigenvector of eigenvalue +|r1| first.
  const Eigensystem es = eig_hermitian(h1.shifted(-t1));
  CMatrix q(2, 2);
  q.col(0) = es.vectors.matrix().col(1);
  q.col(1) = es.vectors.matrix().col(0);
  const CMatrix v = q.adjoint();  // v (h1 - t1) v^dag = |r1| Z
  const CMatrix h2c = v * h2.matrix() * v.adjoint();
  const double pz = 0.5 * (h2c(0, 0).real() - h2c(1, 1).real());
  const double px = h2c(0, 1).real();
  const double py = -h2c(0, 1).imag();
  const double rho = std::hypot(px, py);
  const double theta = std::atan2(py, px);

  // Canonical pair: h1c = t1 I + s Z, h2c = t2 I + pz Z + rho M(theta).
  // Affine recombination of the purified (Z, M) plus identity shifts.
  const auto [hz, hm] = qubit_canonical_pair(theta);
  const CMatrix id3 = CMatrix::Identity(3, 3);
  const CMatrix e1 = t1 * id3 + r1.norm() * hz;
  const CMatrix e2 = t2 * id3 + pz * hz + rho * hm;

  const CMatrix big = direct_sum(q, CMatrix::Identity(1, 1));  // U (+) 1 with U = v^dag
  return Purification({h1, h2},
                      {HermitianOperator(big * e1 * big.adjoint()),
                       HermitianOperator(big * e2 * big.adjoint())},
                      conv, Method::qubit3);
}

/// Purification of two Hamiltonians into d_E = 2d - 1.
///
/// h1 is shifted to be positive definite (smallest eigenvalue = shift_margin), then
///   PU = [ lambda^-1 sqrt(h1) V | W' sqrt(D') ]
/// with lambda^2 = max spec(h1), R R^dag = I - h1 / lambda^2 and
/// lambda^2 h1^{-1/2} h2 h1^{-1/2} = V D2 V^dag. PU is completed to a unitary U and
///   H1 = U (lambda^2 I_d (+) 0) U^dag - shift,  H2 = U (D2 (+) 0) U^dag.
inline Purification purify_pair_schur(const HermitianOperator& h1, const HermitianOperator& h2,
                                      double shift_margin = 1.0) {
  const std::vector<HermitianOperator> in{h1, h2};
  detail::require_same_dims(in, "purify_pair_schur");
  const int d = h1.dim();
  if (d == 1) {
    return Purification(in, in, ProjectionConvention(1, 1), Method::schur2dm1,
                        {"d = 1: inputs already commute"});
  }
  const int de = 2 * d - 1;

  const Eigensystem e1 = eig_hermitian(h1);
  const double shift = shift_margin - e1.values[0];
  RVector mu = e1.values.vector().array() + shift;  // ascending, mu(0) = shift_margin
  const double lambda2 = mu(d - 1);
  const CMatrix& v1 = e1.vectors.matrix();

  RVector sqrt_mu = mu.array().sqrt();
  const CMatrix sqrt_h1 = v1 * sqrt_mu.cast<Complex>().asDiagonal() * v1.adjoint();
  const CMatrix inv_sqrt_h1 = v1 * sqrt_mu.cwiseInverse().cast<Complex>().asDiagonal() * v1.adjoint();

  // R R^dag = I - h1 / lambda^2; its smallest eigenvalue is the guaranteed zero.
  const HermitianOperator gap(CMatrix::Identity(d, d) - (v1 * mu.cast<Complex>().asDiagonal() *
                                                         v1.adjoint()) / lambda2);
  const Eigensystem eg = eig_hermitian(gap);
  CMatrix r(d, d - 1);
  for (int k = 1; k < d; ++k) {
    double dk = eg.values[k];
    if (dk < 1e-10 * lambda2) dk = 0.0;
    r.col(k - 1) = eg.vectors.matrix().col(k) * std::sqrt(dk);
  }

  const HermitianOperator m2(lambda2 * inv_sqrt_h1 * h2.matrix() * inv_sqrt_h1);
  const Eigensystem e2 = eig_hermitian(m2);
  const CMatrix l = sqrt_h1 * e2.vectors.matrix() / std::sqrt(lambda2);

  CMatrix pu(d, de);
  pu << l, r;
  const UnitaryOperator u = complete_to_unitary(pu);

  std::vector<double> diag1(static_cast<std::size_t>(de), 0.0);
  std::vector<double> diag2(static_cast<std::size_t>(de), 0.0);
  for (int k = 0; k < d; ++k) {
    diag1[static_cast<std::size_t>(k)] = lambda2;
    diag2[static_cast<std::size_t>(k)] = e2.values[k];
  }
  return Purification(in, {u.conjugate_diagonal(diag1).shifted(-shift), u.conjugate_diagonal(diag2)},
                      ProjectionConvention(d, de), Method::schur2dm1);
}

/// Purification of m Hamiltonians into d_E = m d.
///
/// With h_i = U_i D_i U_i^dag, the first d rows of the unitary are
/// W = m^{-1/2} [U_1 | U_2 | ... | U_m] (ancilla index slowest), and
/// H_i = U (m D_i placed on ancilla block i) U^dag.
inline Purification purify_m_md(std::span<const HermitianOperator> hs) {
  if (hs.empty()) throw std::invalid_argument("purify_m_md: need at least one operator");
  detail::require_same_dims(hs, "purify_m_md");
  const int m = static_cast<int>(hs.size());
  const int d = hs.front().dim();
  const int de = m * d;

  std::vector<Eigensystem> eig;
  eig.reserve(hs.size());
  CMatrix w(d, de);
  for (int i = 0; i < m; ++i) {
    eig.push_back(eig_hermitian(hs[static_cast<std::size_t>(i)]));
    w.middleCols(i * d, d) = eig.back().vectors.matrix() / std::sqrt(static_cast<double>(m));
  }
  const UnitaryOperator u = complete_to_unitary(w);

  std::vector<HermitianOperator> ext;
  for (int i = 0; i < m; ++i) {
    std::vector<double> diag(static_cast<std::size_t>(de), 0.0);
    for (int k = 0; k < d; ++k) {
      diag[static_cast<std::size_t>(i * d + k)] = m * eig[static_cast<std::size_t>(i)].values[k];
    }
    ext.push_back(u.conjugate_diagonal(diag));
  }
  return Purification(std::vector<HermitianOperator>(hs.begin(), hs.end()), std::move(ext),
                      ProjectionConvention(d, de), Method::md);
}

/// Inputs that already commute purify themselves at d_E = d.
inline Purification trivial_purification(std::span<const HermitianOperator> hs) {
  if (hs.empty()) throw std::invalid_argument("trivial_purification: no operators");
  detail::require_same_dims(hs, "trivial_purification");
  std::vector<HermitianOperator> v(hs.begin(), hs.end());
  return Purification(v, v, ProjectionConvention(hs.front().dim(), hs.front().dim()),
                      Method::manual);
}

}  // namespace hampure
