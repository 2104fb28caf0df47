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

#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "hampure/algebra.hpp"
#include "hampure/core.hpp"
#include "hampure/purification.hpp"

namespace hampure {

/// Real Lie algebra generated by Hermitian operators under i[., .].
struct LieClosureReport {
  int dimension = 0;
  /// Orthonormal under <A, B> = Tr(AB).
  std::vector<HermitianOperator> basis;
  int generations = 0;
  /// dimension == d^2, i.e. the closure is all of u(d).
  bool saturated = false;
};

namespace detail {

/// Appends c to the orthonormal coordinate basis if its component outside the current span
/// exceeds cutoff * scale.
inline bool extend_basis(RMatrix& basis, int& size, RVector c, double cutoff, double scale) {
  if (c.norm() == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    if (size > 0) c -= basis.leftCols(size) * (basis.leftCols(size).transpose() * c);
  }
  const double n1 = c.norm();
  if (n1 <= cutoff * scale) return false;
  basis.col(size++) = c / n1;
  return true;
}

}  // namespace detail

/// Breadth-first closure: each round brackets every basis element with the elements added
/// in the previous round. A generator is new if its component orthogonal to the current span
/// exceeds `cutoff` relative to its own norm; brackets of unit basis elements are compared
/// against `cutoff` directly.
inline LieClosureReport lie_closure(std::span<const HermitianOperator> gens, int max_dim = 0,
                                    double cutoff = 1e-8) {
  LieClosureReport report;
  if (gens.empty()) return report;
  const int d = gens.front().dim();
  for (const auto& g : gens) {
    if (g.dim() != d) throw DimensionError("lie_closure: generator dimensions differ");
  }
  const int full = d * d;
  const int cap = max_dim > 0 ? std::min(max_dim, full) : full;

  RMatrix basis(full, full);
  int size = 0;
  for (const auto& g : gens) {
    if (size == cap) break;
    const RVector c = hermitian_coordinates(g);
    detail::extend_basis(basis, size, c, cutoff, c.norm());
  }

  std::vector<CMatrix> mats;
  for (int k = 0; k < size; ++k) mats.push_back(matrix_from_coordinates(basis.col(k), d));
  int newest_begin = 0;
  while (size < cap && newest_begin < size) {
    const int newest_end = size;
    ++report.generations;
    for (int b = newest_begin; b < newest_end && size < cap; ++b) {
      for (int a = 0; a < newest_end && size < cap; ++a) {
        if (a >= newest_begin && a >= b) continue;  // each new pair once
        const CMatrix c = kI * commutator(mats[static_cast<std::size_t>(a)], mats[static_cast<std::size_t>(b)]);
        if (detail::extend_basis(basis, size, hermitian_coordinates(c), cutoff, 1.0)) {
          mats.push_back(matrix_from_coordinates(basis.col(size - 1), d));
        }
      }
    }
    newest_begin = newest_end;
  }

  report.dimension = size;
  report.saturated = size == full;
  for (int k = 0; k < size; ++k) report.basis.emplace_back(mats[static_cast<std::size_t>(k)]);
  return report;
}

/// Orthogonal projection of h onto the span of the closure basis.
inline HermitianOperator project_onto_closure(const LieClosureReport& r, const HermitianOperator& h) {
  CMatrix out = CMatrix::Zero(h.dim(), h.dim());
  for (const auto& b : r.basis) out += (b.matrix() * h.matrix()).trace().real() * b.matrix();
  return HermitianOperator(out);
}

/// The generating pair h1 = diag(1, 0, ..., 0), h2 = tridiagonal ones on d dimensions,
/// purified on d + 1 dimensions with the extra level prepended (P = 0 (+) I_d).
inline Purification generator_purification(int d) {
  if (d < 2) throw DimensionError("generator_purification: d must be >= 2");
  CMatrix h1 = CMatrix::Zero(d, d);
  h1(0, 0) = 1.0;
  CMatrix h2 = CMatrix::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) h2(k, k + 1) = h2(k + 1, k) = 1.0;

  const int de = d + 1;
  CMatrix big1 = CMatrix::Zero(de, de);
  big1(0, 0) = 0.5;
  big1(0, 1) = big1(1, 0) = -1.0 / std::numbers::sqrt2;
  big1(1, 1) = 1.0;
  CMatrix big2 = CMatrix::Zero(de, de);
  big2.bottomRightCorner(d, d) = h2;
  big2(0, 2) = big2(2, 0) = std::numbers::sqrt2;

  return Purification({HermitianOperator(h1), HermitianOperator(h2)},
                      {HermitianOperator(big1), HermitianOperator(big2)},
                      ProjectionConvention(d, de, Placement::bottom_right), Method::generator_dp1);
}

struct CommutingPairReport {
  int closure_dim = 0;
  bool saturated = false;
};

/// Closure of the top-left d-block compressions of V diag(D_j) V^dag, j = 1, 2.
inline CommutingPairReport commuting_pair_closure(const UnitaryOperator& v, const DiagonalSpec& d1,
                                                  const DiagonalSpec& d2, int d) {
  if (v.dim() != d + 1 || d1.dim() != d + 1 || d2.dim() != d + 1) {
    throw DimensionError("commuting_pair_closure: expected operands of dimension d + 1");
  }
  const ProjectionConvention conv(d, d + 1);
  const std::vector<HermitianOperator> pair{project(v.conjugate_diagonal(d1.values()), conv),
                                            project(v.conjugate_diagonal(d2.values()), conv)};
  const LieClosureReport r = lie_closure(pair);
  return {r.dimension, r.saturated};
}

/// Random commuting pair on d + 1 dimensions (Haar eigenbasis, Gaussian spectra), compressed
/// to d dimensions; generically the compressions generate u(d).
inline CommutingPairReport random_commuting_pair_test(int d, std::uint64_t seed) {
  if (d < 2) throw DimensionError("random_commuting_pair_test: d must be >= 2");
  Rng rng(seed);
  const UnitaryOperator v = random_unitary_haar(d + 1, rng);
  std::normal_distribution<double> normal;
  std::vector<double> a(static_cast<std::size_t>(d + 1)), b(static_cast<std::size_t>(d + 1));
  for (auto& x : a) x = normal(rng);
  for (auto& x : b) x = normal(rng);
  return commuting_pair_closure(v, DiagonalSpec(a), DiagonalSpec(b), d);
}

}  // namespace hampure
