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

// Spanning-set purification of u(d) into d_E = d^2.
//
// A unitary U on d^2 dimensions purifies every Hermitian h on the top-left d-block as soon
// as the real-linear map
//
//     f(D) = W diag(D) W^dag,   W = first d rows of U,
//
// from R^{d^2} onto the Hermitian d x d matrices is invertible: then H = U diag(f^-1(h)) U^dag
// and all such H share the eigenbasis U. Hermitian matrices are handled through real
// coordinates (diagonal entries, then sqrt(2) Re h_nm, then sqrt(2) Im h_nm for n < m), which
// make the Hilbert-Schmidt inner product the Euclidean one.

#pragma once

#include <array>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "hampure/core.hpp"
#include "hampure/purification.hpp"

namespace hampure {

// ---------------------------------------------------------------------------
// Hermitian <-> real coordinates
// ---------------------------------------------------------------------------

inline RVector hermitian_coordinates(const CMatrix& h) {
  const Eigen::Index d = h.rows();
  RVector c(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index n = 0; n < d; ++n) c(k++) = h(n, n).real();
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = n + 1; m < d; ++m) c(k++) = std::numbers::sqrt2 * h(n, m).real();
  }
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = n + 1; m < d; ++m) c(k++) = std::numbers::sqrt2 * h(n, m).imag();
  }
  return c;
}

inline RVector hermitian_coordinates(const HermitianOperator& h) {
  return hermitian_coordinates(h.matrix());
}

inline CMatrix matrix_from_coordinates(const RVector& c, int d) {
  if (c.size() != static_cast<Eigen::Index>(d) * d) {
    throw DimensionError("matrix_from_coordinates: expected " + std::to_string(d * d) +
                         " coordinates");
  }
  CMatrix h = CMatrix::Zero(d, d);
  Eigen::Index k = 0;
  for (int n = 0; n < d; ++n) h(n, n) = c(k++);
  for (int n = 0; n < d; ++n) {
    for (int m = n + 1; m < d; ++m) {
      h(n, m) += c(k) / std::numbers::sqrt2;
      h(m, n) += c(k) / std::numbers::sqrt2;
      ++k;
    }
  }
  for (int n = 0; n < d; ++n) {
    for (int m = n + 1; m < d; ++m) {
      h(n, m) += kI * (c(k) / std::numbers::sqrt2);
      h(m, n) -= kI * (c(k) / std::numbers::sqrt2);
      ++k;
    }
  }
  return h;
}

inline HermitianOperator hermitian_from_coordinates(const RVector& c, int d) {
  return HermitianOperator(matrix_from_coordinates(c, d));
}

// ---------------------------------------------------------------------------
// u(2) and n-qubit purification
// ---------------------------------------------------------------------------

struct SigmaMatrices {
  HermitianOperator x, y, z;
};

/// Three commuting 4x4 operators whose top-left 2x2 blocks are X, Y and Z.
inline SigmaMatrices sigma_matrices() {
  const Complex i = kI;
  CMatrix sx(4, 4), sy(4, 4), sz(4, 4);
  sx << 0, 1, 1.0 + i, 0,
        1, 0, 1.0 + i, 0,
        1.0 - i, 1.0 - i, 1, 0,
        0, 0, 0, -1;
  sy << 0, -i, i, (2.0 + 4.0 * i) / 3.0,
        i, 0, 1, (1.0 - i) / 3.0,
        -i, 1, 0, -1,
        (2.0 - 4.0 * i) / 3.0, (1.0 + i) / 3.0, -1, 0;
  sz << 1, 0, -(4.0 + 4.0 * i) / 9.0, (7.0 + 8.0 * i) / 9.0,
        0, -1, (5.0 + 5.0 * i) / 9.0, -(16.0 - i) / 9.0,
        -(4.0 - 4.0 * i) / 9.0, (5.0 - 5.0 * i) / 9.0, 0, -i,
        (7.0 - 8.0 * i) / 9.0, -(16.0 + i) / 9.0, i, 0;
  return {HermitianOperator(sx, Hermiticity::require, 0.0),
          HermitianOperator(sy, Hermiticity::require, 0.0),
          HermitianOperator(sz, Hermiticity::require, 0.0)};
}

/// One term beta * S_{l_1} (x) ... (x) S_{l_n} of a Pauli expansion; labels use '0', 'x',
/// 'y', 'z' (or 'I', 'X', 'Y', 'Z').
struct PauliTerm {
  std::string label;
  double coefficient = 1.0;
};

namespace detail {

inline int pauli_index(char c) {
  switch (c) {
    case '0': case 'I': case 'i': return 0;
    case 'x': case 'X': return 1;
    case 'y': case 'Y': return 2;
    case 'z': case 'Z': return 3;
    default: throw std::invalid_argument(std::string("unknown Pauli label '") + c + "'");
  }
}

inline std::size_t pauli_arity(std::span<const PauliTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("Pauli expansion has no terms");
  const std::size_t n = terms.front().label.size();
  if (n == 0) throw std::invalid_argument("Pauli label must have at least one factor");
  for (const auto& t : terms) {
    if (t.label.size() != n) {
      throw DimensionError("Pauli label arity mismatch: '" + terms.front().label + "' vs '" +
                           t.label + "'");
    }
  }
  return n;
}

}  // namespace detail

/// Basis order that puts the projected subspace of (C^4)^{(x) n} first.
///
/// The projected subspace is spanned by the product states whose every base-4 digit is 0 or
/// 1; listing those first (in the order of the matching n-qubit basis state) turns
/// [I_2 (x) diag(1, 0)]^{(x) n}-style projection into a top-left 2^n block.
inline std::vector<int> pauli_block_permutation(int n) {
  const int de = 1 << (2 * n);
  std::vector<int> inside, outside;
  for (int idx = 0; idx < de; ++idx) {
    bool in = true;
    for (int k = 0; k < n; ++k) {
      if (((idx >> (2 * k)) & 3) > 1) in = false;
    }
    (in ? inside : outside).push_back(idx);
  }
  inside.insert(inside.end(), outside.begin(), outside.end());
  return inside;
}

/// sum beta S_{l_1} (x) ... (x) S_{l_n} on 2^n dimensions.
inline HermitianOperator pauli_string_operator(std::span<const PauliTerm> terms) {
  const std::size_t n = detail::pauli_arity(terms);
  const std::array<CMatrix, 4> s{pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};
  CMatrix out = CMatrix::Zero(1 << n, 1 << n);
  for (const auto& t : terms) {
    CMatrix f = CMatrix::Identity(1, 1);
    for (char c : t.label) f = kron(f, s[static_cast<std::size_t>(detail::pauli_index(c))]);
    out += t.coefficient * f;
  }
  return HermitianOperator(out);
}

/// sum beta Sigma_{l_1} (x) ... (x) Sigma_{l_n} with Sigma_0 = I_4, expressed in the basis of
/// pauli_block_permutation so the purified operator sits on the top-left 2^n block.
inline HermitianOperator purify_pauli_string(std::span<const PauliTerm> terms) {
  const std::size_t n = detail::pauli_arity(terms);
  const SigmaMatrices sig = sigma_matrices();
  const std::array<CMatrix, 4> s{CMatrix::Identity(4, 4), sig.x.matrix(), sig.y.matrix(),
                                 sig.z.matrix()};
  const int de = 1 << (2 * n);
  CMatrix kr = CMatrix::Zero(de, de);
  for (const auto& t : terms) {
    CMatrix f = CMatrix::Identity(1, 1);
    for (char c : t.label) f = kron(f, s[static_cast<std::size_t>(detail::pauli_index(c))]);
    kr += t.coefficient * f;
  }
  const std::vector<int> perm = pauli_block_permutation(static_cast<int>(n));
  CMatrix out(de, de);
  for (int a = 0; a < de; ++a) {
    for (int b = 0; b < de; ++b) out(a, b) = kr(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
  }
  return HermitianOperator(out);
}

/// Purification of several n-qubit Pauli expansions at once (d = 2^n, d_E = 4^n).
inline Purification purify_pauli_strings(const std::vector<std::vector<PauliTerm>>& operators) {
  if (operators.empty()) throw std::invalid_argument("purify_pauli_strings: no operators");
  const std::size_t n = detail::pauli_arity(operators.front());
  std::vector<HermitianOperator> in, ext;
  for (const auto& terms : operators) {
    if (detail::pauli_arity(terms) != n) throw DimensionError("Pauli operators differ in arity");
    in.push_back(pauli_string_operator(terms));
    ext.push_back(purify_pauli_string(terms));
  }
  const int d = 1 << n;
  return Purification(std::move(in), std::move(ext), ProjectionConvention(d, d * d),
                      Method::algebra_d2);
}

// ---------------------------------------------------------------------------
// Arbitrary d: the f_PU construction
// ---------------------------------------------------------------------------

/// d^2 x d^2 real matrix taking diagonal entries to Hermitian coordinates.
struct RealLinearMap {
  int d = 0;
  RMatrix matrix;

  RVector operator()(const RVector& diag) const { return matrix * diag; }
};

/// f(D) = rows diag(D) rows^dag in coordinates: column i is the coordinate vector of the
/// outer product of column i of `rows` with itself.
inline RealLinearMap diagonal_to_hermitian_map(const CMatrix& rows) {
  const int d = static_cast<int>(rows.rows());
  const Eigen::Index n = rows.cols();
  RealLinearMap f{d, RMatrix(static_cast<Eigen::Index>(d) * d, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const CVector x = rows.col(i);
    f.matrix.col(i) = hermitian_coordinates(CMatrix(x * x.adjoint()));
  }
  return f;
}

/// d x d^2 matrix whose columns are e_n, then e_n + e_m, then e_n + i e_m (n < m,
/// lexicographic). The outer products of its columns form a basis of u(d).
inline CMatrix raw_spanning_rows(int d) {
  if (d < 1) throw DimensionError("raw_spanning_rows: d must be >= 1");
  CMatrix w = CMatrix::Zero(d, d * d);
  int col = 0;
  for (int n = 0; n < d; ++n) w(n, col++) = 1.0;
  for (int n = 0; n < d; ++n) {
    for (int m = n + 1; m < d; ++m) {
      w(n, col) = 1.0;
      w(m, col) = 1.0;
      ++col;
    }
  }
  for (int n = 0; n < d; ++n) {
    for (int m = n + 1; m < d; ++m) {
      w(n, col) = 1.0;
      w(m, col) = kI;
      ++col;
    }
  }
  return w;
}

/// a_1 = -1 - i, a_n = -1 - i - sum_{k<n} |a_k|^2, for n = 1..d-1.
inline std::vector<Complex> triangular_coefficients(int d) {
  std::vector<Complex> a;
  double acc = 0.0;
  for (int n = 1; n < d; ++n) {
    a.emplace_back(-1.0 - acc, -1.0);
    acc += std::norm(a.back());
  }
  return a;
}

/// N_n = sqrt(1 + sum_{k<=n} |a_k|^2), for n = 1..d-1 (row norms of A_(d-1)).
inline std::vector<double> triangular_row_norms(int d) {
  std::vector<double> out;
  double acc = 1.0;
  for (const Complex& a : triangular_coefficients(d)) {
    acc += std::norm(a);
    out.push_back(std::sqrt(acc));
  }
  return out;
}

/// Unit lower-triangular A_(d-1) with a_k filling column k below the diagonal.
inline CMatrix triangular_block(int d) {
  const std::vector<Complex> a = triangular_coefficients(d);
  CMatrix blk = CMatrix::Identity(d, d);
  for (int r = 1; r < d; ++r) {
    for (int c = 0; c < r; ++c) blk(r, c) = a[static_cast<std::size_t>(c)];
  }
  return blk;
}

enum class Orthonormalization {
  /// (W W^dag)^{-1/2} W: well conditioned for every d.
  symmetric,
  /// Leftmost d x d block replaced by A_(d-1), rows scaled to unit norm. Exact in exact
  /// arithmetic, but |a_n| grows doubly exponentially and f loses numerical rank for d >= 6.
  triangular,
};

inline std::string to_string(Orthonormalization o) {
  return o == Orthonormalization::symmetric ? "symmetric" : "triangular";
}

/// Orthonormal d x d^2 rows W whose map f is surjective.
inline CMatrix spanning_rows(int d, Orthonormalization how = Orthonormalization::symmetric) {
  CMatrix w = raw_spanning_rows(d);
  if (how == Orthonormalization::triangular) {
    w.leftCols(d) = triangular_block(d);
    for (int n = 0; n < d; ++n) w.row(n) /= w.row(n).norm();
    return w;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> gram(w * w.adjoint());
  const RVector inv_sqrt = gram.eigenvalues().cwiseSqrt().cwiseInverse();
  return gram.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() *
         gram.eigenvectors().adjoint() * w;
}

struct SingularSpectrum {
  int rank = 0;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
};

/// Singular values of f, counting those above cutoff * sigma_max.
inline SingularSpectrum singular_spectrum(const RealLinearMap& f, double cutoff = 1e-8) {
  Eigen::JacobiSVD<RMatrix> svd(f.matrix);
  const RVector& s = svd.singularValues();
  SingularSpectrum out;
  out.max_singular_value = s.size() ? s(0) : 0.0;
  out.min_singular_value = s.size() ? s(s.size() - 1) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff * out.max_singular_value) ++out.rank;
  }
  return out;
}

/// A unitary on d^2 dimensions whose top-left compression map f is invertible.
struct AlgebraPurifier {
  int d = 0;
  UnitaryOperator unitary = UnitaryOperator::identity(1);
  RealLinearMap fmap;
  RMatrix fmap_inverse;
  SingularSpectrum spectrum;
  Orthonormalization orthonormalization = Orthonormalization::symmetric;
};

inline AlgebraPurifier build_algebra_purifier(
    int d, Orthonormalization how = Orthonormalization::symmetric) {
  if (d < 2) throw DimensionError("build_algebra_purifier: d must be >= 2");
  if (how == Orthonormalization::triangular) {
    for (const Complex& a : triangular_coefficients(d)) {
      if (!(a.real() < 0.0) || a.imag() != -1.0) {
        throw NumericError("triangular coefficient has unexpected sign pattern");
      }
    }
  }
  const CMatrix w = spanning_rows(d, how);
  if (row_orthonormality_defect(w) > 1e-12) {
    throw NumericError("build_algebra_purifier: rows not orthonormal after " + to_string(how) +
                       " orthonormalization");
  }
  AlgebraPurifier p;
  p.d = d;
  p.orthonormalization = how;
  p.unitary = complete_to_unitary(w);
  p.fmap = diagonal_to_hermitian_map(p.unitary.matrix().topRows(d));
  p.spectrum = singular_spectrum(p.fmap);
  if (p.spectrum.rank != d * d) {
    throw NumericError("build_algebra_purifier: f has numerical rank " +
                       std::to_string(p.spectrum.rank) + " < " + std::to_string(d * d) +
                       " (" + to_string(how) + " route, d=" + std::to_string(d) + ")");
  }
  p.fmap_inverse = p.fmap.matrix.fullPivLu().inverse();
  return p;
}

/// Diagonal D with f(D) = h.
inline RVector purifying_diagonal(const AlgebraPurifier& p, const HermitianOperator& h) {
  if (h.dim() != p.d) {
    throw DimensionError("purifier built for d=" + std::to_string(p.d) + ", input has dim " +
                         std::to_string(h.dim()));
  }
  return p.fmap_inverse * hermitian_coordinates(h);
}

inline HermitianOperator purify_with(const AlgebraPurifier& p, const HermitianOperator& h) {
  const RVector diag = purifying_diagonal(p, h);
  return p.unitary.conjugate_diagonal(std::span<const double>(diag.data(), static_cast<std::size_t>(diag.size())));
}

/// H_j = U diag(f^-1(h_j)) U^dag for every input; the outputs share the eigenbasis U.
inline Purification purify_full_basis(const AlgebraPurifier& p,
                                      std::span<const HermitianOperator> hs) {
  std::vector<HermitianOperator> ext;
  ext.reserve(hs.size());
  for (const auto& h : hs) ext.push_back(purify_with(p, h));
  return Purification(std::vector<HermitianOperator>(hs.begin(), hs.end()), std::move(ext),
                      ProjectionConvention(p.d, p.d * p.d), Method::algebra_d2);
}

/// Identity plus the generalized Gell-Mann matrices: an orthogonal basis of u(d).
inline std::vector<HermitianOperator> gell_mann_basis(int d) {
  std::vector<HermitianOperator> basis{HermitianOperator::identity(d)};
  for (int n = 0; n < d; ++n) {
    for (int m = n + 1; m < d; ++m) {
      CMatrix s = CMatrix::Zero(d, d);
      s(n, m) = s(m, n) = 1.0;
      basis.emplace_back(s);
      CMatrix a = CMatrix::Zero(d, d);
      a(n, m) = -kI;
      a(m, n) = kI;
      basis.emplace_back(a);
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix g = CMatrix::Zero(d, d);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) g(j, j) = c;
    g(l, l) = -l * c;
    basis.emplace_back(g);
  }
  return basis;
}

struct SurjectivityReport {
  int rank = 0;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
  bool surjective = false;
};

/// Whether the top-left d-block compression of U diag(.) U^dag reaches all of u(d).
inline SurjectivityReport surjectivity_test(const UnitaryOperator& u, int d,
                                            double cutoff = 1e-8) {
  if (u.dim() != d * d) {
    throw DimensionError("surjectivity_test: unitary has dim " + std::to_string(u.dim()) +
                         ", expected d^2 = " + std::to_string(d * d));
  }
  const SingularSpectrum s = singular_spectrum(diagonal_to_hermitian_map(u.matrix().topRows(d)), cutoff);
  return {s.rank, s.min_singular_value, s.max_singular_value, s.rank == d * d};
}

}  // namespace hampure
