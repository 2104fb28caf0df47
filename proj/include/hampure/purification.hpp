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

#include <optional>
#include <string>
#include <vector>

#include "hampure/core.hpp"

namespace hampure {

enum class Method { tensor2d, qubit3, schur2dm1, md, algebra_d2, generator_dp1, manual };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::tensor2d: return "tensor2d";
    case Method::qubit3: return "qubit3";
    case Method::schur2dm1: return "schur2dm1";
    case Method::md: return "md";
    case Method::algebra_d2: return "algebra_d2";
    case Method::generator_dp1: return "generator_dp1";
    case Method::manual: return "manual";
  }
  return "manual";
}

inline Method method_from_string(const std::string& s) {
  for (Method m : {Method::tensor2d, Method::qubit3, Method::schur2dm1, Method::md,
                   Method::algebra_d2, Method::generator_dp1, Method::manual}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown purification method '" + s + "'");
}

/// Commuting operators on a d_E-dimensional space whose compressions by P are the inputs.
///
/// The constructor only checks shapes. Whether the bundle actually purifies its inputs
/// is a numerical question answered by verify().
struct Purification {
  std::vector<HermitianOperator> inputs;
  std::vector<HermitianOperator> extended;
  ProjectionConvention convention;
  Method method = Method::manual;
  /// Free-form flags raised by a construction (role swaps, degenerate fallbacks).
  std::vector<std::string> notes;

  Purification(std::vector<HermitianOperator> in, std::vector<HermitianOperator> ext,
               ProjectionConvention conv, Method m, std::vector<std::string> n = {})
      : inputs(std::move(in)), extended(std::move(ext)), convention(conv), method(m),
        notes(std::move(n)) {
    if (inputs.size() != extended.size()) {
      throw DimensionError("purification: " + std::to_string(inputs.size()) + " inputs but " +
                           std::to_string(extended.size()) + " extended operators");
    }
    for (const auto& h : inputs) {
      if (h.dim() != convention.d) throw DimensionError("purification: input dim != d");
    }
    for (const auto& h : extended) {
      if (h.dim() != convention.d_E) throw DimensionError("purification: extended dim != d_E");
    }
  }

  int d() const { return convention.d; }
  int d_E() const { return convention.d_E; }
  std::size_t size() const { return inputs.size(); }

  /// The default verification tolerance for this bundle.
  double default_tolerance() const {
    double scale = 0.0;
    for (const auto& h : inputs) scale = std::max(scale, h.norm());
    return relative_tolerance(d_E(), scale);
  }
};

struct VerifyReport {
  double max_commutator_norm = 0.0;
  double max_recovery_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Frobenius residuals of both purification conditions. Never throws on numeric failure.
inline VerifyReport verify(const Purification& p, std::optional<double> tol = std::nullopt) {
  VerifyReport r;
  r.tolerance = tol.value_or(p.default_tolerance());
  for (std::size_t i = 0; i < p.extended.size(); ++i) {
    for (std::size_t j = i + 1; j < p.extended.size(); ++j) {
      r.max_commutator_norm = std::max(
          r.max_commutator_norm, commutator(p.extended[i], p.extended[j]).norm());
    }
    r.max_recovery_error =
        std::max(r.max_recovery_error,
                 (project(p.extended[i].matrix(), p.convention) - p.inputs[i].matrix()).norm());
  }
  r.pass = r.max_commutator_norm <= r.tolerance && r.max_recovery_error <= r.tolerance;
  return r;
}

/// Real linear recombination H'_i = sum_j coeffs(i, j) H_j applied to both sides.
inline Purification recombine(const Purification& p, const RMatrix& coeffs) {
  if (coeffs.cols() != static_cast<Eigen::Index>(p.size())) {
    throw DimensionError("recombine: coefficient matrix has wrong column count");
  }
  std::vector<HermitianOperator> in, ext;
  for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
    CMatrix a = CMatrix::Zero(p.d(), p.d());
    CMatrix b = CMatrix::Zero(p.d_E(), p.d_E());
    for (std::size_t j = 0; j < p.size(); ++j) {
      a += coeffs(i, static_cast<Eigen::Index>(j)) * p.inputs[j].matrix();
      b += coeffs(i, static_cast<Eigen::Index>(j)) * p.extended[j].matrix();
    }
    in.emplace_back(a);
    ext.emplace_back(b);
  }
  return Purification(std::move(in), std::move(ext), p.convention, Method::manual);
}

/// h_j + shifts[j] I_d purified by H_j + shifts[j] I_{d_E}.
inline Purification shift(const Purification& p, std::span<const double> shifts) {
  if (shifts.size() != p.size()) throw DimensionError("shift: one shift per operator required");
  std::vector<HermitianOperator> in, ext;
  for (std::size_t j = 0; j < p.size(); ++j) {
    in.push_back(p.inputs[j].shifted(shifts[j]));
    ext.push_back(p.extended[j].shifted(shifts[j]));
  }
  return Purification(std::move(in), std::move(ext), p.convention, p.method, p.notes);
}

/// Inputs conjugated by u, extensions by u placed on the projected block (identity elsewhere).
inline Purification conjugate(const Purification& p, const UnitaryOperator& u) {
  if (u.dim() != p.d()) throw DimensionError("conjugate: unitary must act on the d-space");
  CMatrix big = CMatrix::Identity(p.d_E(), p.d_E());
  big.block(p.convention.offset(), p.convention.offset(), p.d(), p.d()) = u.matrix();
  const UnitaryOperator ut(big);
  std::vector<HermitianOperator> in, ext;
  for (std::size_t j = 0; j < p.size(); ++j) {
    in.push_back(u.conjugate(p.inputs[j]));
    ext.push_back(ut.conjugate(p.extended[j]));
  }
  return Purification(std::move(in), std::move(ext), p.convention, p.method, p.notes);
}

/// True when all operators pairwise commute within tol (Frobenius).
inline bool all_commute(std::span<const HermitianOperator> ops, double tol) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (commutator(ops[i], ops[j]).norm() > tol) return false;
    }
  }
  return true;
}

/// Lower bound max(d+1, m+1) on d_E for operators that do not already commute.
inline int nontrivial_lower_bound(int d, int m) { return std::max(d + 1, m + 1); }

/// Lower bound ceil(3d/2) on d_E for a generic (full-rank commutator) pair.
inline int pair_lower_bound(int d) { return (3 * d + 1) / 2; }

}  // namespace hampure
