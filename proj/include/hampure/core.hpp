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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hampure {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr Complex kI{0.0, 1.0};

/// Operand shapes do not agree (or violate a documented size precondition).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default relative tolerance family: 1e-10 * dim * max(1, scale).
inline double relative_tolerance(int dim, double scale = 1.0) {
  return 1e-10 * static_cast<double>(dim) * std::max(1.0, scale);
}

inline double frobenius_norm(const CMatrix& m) { return m.norm(); }

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Largest singular value.
inline double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

enum class Hermiticity {
  symmetrize,  ///< replace m by (m + m^dag) / 2
  require,     ///< reject inputs further than tolerance from Hermitian, then symmetrize
};

/// Square complex matrix equal to its conjugate transpose, entry for entry.
class HermitianOperator {
 public:
  explicit HermitianOperator(const CMatrix& m,
                             Hermiticity policy = Hermiticity::symmetrize,
                             double tol = -1.0) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw DimensionError("HermitianOperator needs a non-empty square matrix, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) throw std::invalid_argument("HermitianOperator: non-finite entry");
    if (policy == Hermiticity::require) {
      const double t = tol >= 0.0 ? tol : relative_tolerance(static_cast<int>(m.rows()), m.norm());
      const double dev = max_abs(m - m.adjoint());
      if (dev > t) {
        throw std::invalid_argument("HermitianOperator: matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
      }
    }
    // (a + conj(b)) / 2 is bitwise the conjugate of (b + conj(a)) / 2, so this is exact.
    m_ = (m + m.adjoint()) * 0.5;
  }

  static HermitianOperator zero(int dim) { return HermitianOperator(CMatrix::Zero(dim, dim)); }
  static HermitianOperator identity(int dim) {
    return HermitianOperator(CMatrix::Identity(dim, dim));
  }
  static HermitianOperator diagonal(std::span<const double> values) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                              static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    }
    return HermitianOperator(m);
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double norm() const { return m_.norm(); }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    require_same_dim(a, b);
    return HermitianOperator(a.m_ + b.m_);
  }
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    require_same_dim(a, b);
    return HermitianOperator(a.m_ - b.m_);
  }
  friend HermitianOperator operator*(double s, const HermitianOperator& a) {
    return HermitianOperator(s * a.m_);
  }
  HermitianOperator shifted(double lambda) const {
    return HermitianOperator(m_ + lambda * CMatrix::Identity(m_.rows(), m_.cols()));
  }

 private:
  static void require_same_dim(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) {
      throw DimensionError("operator dimensions differ: " + std::to_string(a.dim()) + " vs " +
                           std::to_string(b.dim()));
    }
  }

  CMatrix m_;
};

/// max-norm of U^dag U - I.
inline double unitarity_defect(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

/// Square complex matrix with max|U^dag U - I| <= 1e-12 * dim, checked on construction.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(CMatrix u, double tol = -1.0) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() < 1) {
      throw DimensionError("UnitaryOperator needs a non-empty square matrix");
    }
    const double t = tol >= 0.0 ? tol : default_tolerance(dim());
    const double dev = unitarity_defect(u_);
    if (!(dev <= t)) {
      throw NumericError("UnitaryOperator: unitarity defect " + std::to_string(dev) +
                         " exceeds " + std::to_string(t));
    }
  }

  static double default_tolerance(int dim) { return 1e-12 * static_cast<double>(dim); }
  static UnitaryOperator identity(int dim) { return UnitaryOperator(CMatrix::Identity(dim, dim)); }

  int dim() const { return static_cast<int>(u_.rows()); }
  const CMatrix& matrix() const { return u_; }
  CMatrix adjoint() const { return u_.adjoint(); }

  /// U diag(values) U^dag.
  HermitianOperator conjugate_diagonal(std::span<const double> values) const {
    if (static_cast<int>(values.size()) != dim()) {
      throw DimensionError("diagonal length does not match unitary dimension");
    }
    CMatrix scaled = u_;
    for (int k = 0; k < dim(); ++k) scaled.col(k) *= values[static_cast<std::size_t>(k)];
    return HermitianOperator(scaled * u_.adjoint());
  }

  HermitianOperator conjugate(const HermitianOperator& h) const {
    if (h.dim() != dim()) throw DimensionError("conjugate: dimension mismatch");
    return HermitianOperator(u_ * h.matrix() * u_.adjoint());
  }

 private:
  CMatrix u_;
};

/// Real diagonal of length dim, all entries finite.
class DiagonalSpec {
 public:
  DiagonalSpec() = default;
  explicit DiagonalSpec(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw std::invalid_argument("DiagonalSpec: non-finite value");
    }
  }
  explicit DiagonalSpec(const RVector& v) : DiagonalSpec(std::vector<double>(v.begin(), v.end())) {}

  int dim() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  RVector vector() const {
    return Eigen::Map<const RVector>(values_.data(), static_cast<Eigen::Index>(values_.size()));
  }

 private:
  std::vector<double> values_;
};

enum class Placement { top_left, bottom_right };

inline std::string to_string(Placement p) {
  return p == Placement::top_left ? "top-left" : "bottom-right";
}

inline Placement placement_from_string(const std::string& s) {
  if (s == "top-left") return Placement::top_left;
  if (s == "bottom-right") return Placement::bottom_right;
  throw std::invalid_argument("unknown placement '" + s + "'");
}

/// Which d x d diagonal block of the d_E-dimensional space the projection P selects.
struct ProjectionConvention {
  int d = 1;
  int d_E = 1;
  Placement placement = Placement::top_left;

  ProjectionConvention() = default;
  ProjectionConvention(int d_, int d_E_, Placement p = Placement::top_left)
      : d(d_), d_E(d_E_), placement(p) {
    if (d < 1 || d > d_E) {
      throw DimensionError("projection needs 1 <= d <= d_E, got d=" + std::to_string(d) +
                           " d_E=" + std::to_string(d_E));
    }
  }

  int offset() const { return placement == Placement::top_left ? 0 : d_E - d; }

  /// P as a d_E x d_E matrix.
  CMatrix projector() const {
    CMatrix p = CMatrix::Zero(d_E, d_E);
    p.block(offset(), offset(), d, d).setIdentity();
    return p;
  }

  friend bool operator==(const ProjectionConvention&, const ProjectionConvention&) = default;
};

/// ab - ba.
inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionError("commutator: dimension mismatch");
  }
  return a * b - b * a;
}

inline CMatrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("commutator: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
  return commutator(a.matrix(), b.matrix());
}

/// The d x d block of a d_E x d_E matrix selected by the convention.
inline CMatrix project(const CMatrix& m, const ProjectionConvention& conv) {
  if (m.rows() != conv.d_E || m.cols() != conv.d_E) {
    throw DimensionError("project: operator has dim " + std::to_string(m.rows()) +
                         ", convention expects d_E=" + std::to_string(conv.d_E));
  }
  return m.block(conv.offset(), conv.offset(), conv.d, conv.d);
}

inline HermitianOperator project(const HermitianOperator& h, const ProjectionConvention& conv) {
  return HermitianOperator(project(h.matrix(), conv));
}

/// Inverse of project on the selected block: zero-padded d_E x d_E matrix.
inline CMatrix embed(const CMatrix& block, const ProjectionConvention& conv) {
  if (block.rows() != conv.d || block.cols() != conv.d) {
    throw DimensionError("embed: block is not d x d");
  }
  CMatrix out = CMatrix::Zero(conv.d_E, conv.d_E);
  out.block(conv.offset(), conv.offset(), conv.d, conv.d) = block;
  return out;
}

/// a (+) b, block diagonal.
inline CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

struct Eigensystem {
  DiagonalSpec values;      // ascending
  UnitaryOperator vectors;  // columns are eigenvectors
};

/// Rotate each column so its largest-magnitude entry (first on ties) is real positive.
inline void fix_column_phases(CMatrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, k));
      if (a > best_abs * (1.0 + 1e-12) + 1e-300) {
        best_abs = a;
        best = i;
      }
    }
    if (best_abs > 0.0) v.col(k) *= std::conj(v(best, k)) / best_abs;
    v(best, k) = Complex(v(best, k).real(), 0.0);
  }
}

/// h = U diag(values) U^dag with ascending values and phase-fixed eigenvectors.
inline Eigensystem eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericError("eig_hermitian: eigensolver did not converge");
  }
  CMatrix v = solver.eigenvectors();
  fix_column_phases(v);
  return {DiagonalSpec(RVector(solver.eigenvalues())),
          UnitaryOperator(std::move(v))};
}

/// exp(-i h t), through the eigendecomposition of h. Assembled as I + V (e^{-i l t} - 1) V^dag
/// so that the error stays proportional to |t| for short times.
inline CMatrix expm_hermitian(const HermitianOperator& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericError("expm_hermitian: eigensolver did not converge");
  }
  const CMatrix& v = solver.eigenvectors();
  CVector shifted(h.dim());
  for (int k = 0; k < h.dim(); ++k) {
    const double phi = solver.eigenvalues()(k) * t;
    const double half = std::sin(0.5 * phi);
    shifted(k) = Complex(-2.0 * half * half, -std::sin(phi));
  }
  CMatrix out = v * shifted.asDiagonal() * v.adjoint();
  out.diagonal().array() += 1.0;
  return out;
}

/// max |rows rows^dag - I|.
inline double row_orthonormality_defect(const CMatrix& rows) {
  return max_abs(rows * rows.adjoint() - CMatrix::Identity(rows.rows(), rows.rows()));
}

/// Extend k orthonormal rows of length n to an n x n unitary whose first k rows are the
/// input, bit for bit. The complement comes from pivoted Gram-Schmidt over the canonical
/// basis: at each step the basis vector with the largest residual is orthogonalized
/// (twice) against everything accepted so far.
inline UnitaryOperator complete_to_unitary(const CMatrix& rows) {
  const Eigen::Index k = rows.rows();
  const Eigen::Index n = rows.cols();
  if (n < 1 || k > n) throw DimensionError("complete_to_unitary: need k <= n rows of length n >= 1");
  if (!rows.allFinite()) throw std::invalid_argument("complete_to_unitary: non-finite input");
  const double defect = k == 0 ? 0.0 : row_orthonormality_defect(rows);
  if (defect > 1e-10) {
    throw std::invalid_argument("complete_to_unitary: input rows are not orthonormal (defect " +
                                std::to_string(defect) + ")");
  }

  // Work with columns (conjugated rows) so orthogonality is the usual inner product.
  CMatrix basis(n, n);
  basis.leftCols(k) = rows.adjoint();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index filled = k; filled < n; ++filled) {
    CVector best_vec;
    double best_norm = -1.0;
    Eigen::Index best_j = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      CVector v = CVector::Unit(n, j);
      for (int pass = 0; pass < 2; ++pass) {
        if (filled > 0) v -= basis.leftCols(filled) * (basis.leftCols(filled).adjoint() * v);
      }
      const double nv = v.norm();
      if (nv > best_norm + 1e-14) {
        best_norm = nv;
        best_vec = std::move(v);
        best_j = j;
      }
    }
    if (best_j < 0 || best_norm < 1e-8) {
      throw NumericError("complete_to_unitary: could not find a complementary direction");
    }
    used[static_cast<std::size_t>(best_j)] = true;
    basis.col(filled) = best_vec / best_norm;
  }

  CMatrix u(n, n);
  u.topRows(k) = rows;
  u.bottomRows(n - k) = basis.rightCols(n - k).adjoint();
  const double tol = std::max(UnitaryOperator::default_tolerance(static_cast<int>(n)), 4.0 * defect);
  return UnitaryOperator(std::move(u), tol);
}

inline CMatrix ginibre(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

/// GUE sample: (G + G^dag) / 2 with G complex Ginibre (E|G_ij|^2 = 1).
inline HermitianOperator random_hermitian(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_hermitian: dim must be >= 1");
  return HermitianOperator(ginibre(dim, rng));
}

inline HermitianOperator random_hermitian(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(dim, rng);
}

/// Haar sample: QR of a Ginibre matrix with the R-diagonal phases moved into Q.
inline UnitaryOperator random_unitary_haar(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_unitary_haar: dim must be >= 1");
  const CMatrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return UnitaryOperator(std::move(q));
}

inline UnitaryOperator random_unitary_haar(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary_haar(dim, rng);
}

namespace pauli {
inline CMatrix I() { return CMatrix::Identity(2, 2); }
inline CMatrix X() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline CMatrix Y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}
inline CMatrix Z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

}  // namespace hampure
