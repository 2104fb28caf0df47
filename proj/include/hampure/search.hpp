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

// Numerical search for purifications of given targets on a candidate d_E.
//
// Any purification has the form H_j = U diag(D_j) U^dag, so the targets are purifiable on
// d_E dimensions iff
//
//     r(U, D) = sum_j || topleft_d(U diag(D_j) U^dag) - h_j ||_F^2
//
// has zero minimum. The unitary is parametrized as U = U0 exp(iA(theta)), with U0 a Haar
// sample fixed per restart and A(theta) the Hermitian matrix with real coordinates theta
// (see hermitian_coordinates), so every restart starts at theta = 0. The gradient is
// analytic: the exponential is differentiated through the eigendecomposition of A.

#pragma once

#include <ceres/ceres.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hampure/algebra.hpp"
#include "hampure/core.hpp"
#include "hampure/purification.hpp"

namespace hampure {

/// splitmix64 of (seed, stream): independent, reproducible sub-seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Worker count: HAMPURE_THREADS if set and positive, else the hardware concurrency.
inline int default_thread_count() {
  if (const char* env = std::getenv("HAMPURE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// sum_j || topleft_d(U diag(D_j) U^dag) - h_j ||_F^2.
inline double residual(const UnitaryOperator& u, std::span<const DiagonalSpec> diagonals,
                       std::span<const HermitianOperator> targets) {
  if (diagonals.size() != targets.size()) {
    throw DimensionError("residual: one diagonal per target required");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (diagonals[j].dim() != u.dim() || targets[j].dim() > u.dim()) {
      throw DimensionError("residual: diagonal/target dimensions do not fit the unitary");
    }
    const int d = targets[j].dim();
    const CMatrix w = u.matrix().topRows(d);
    const RVector dj = diagonals[j].vector();
    const CMatrix r = w * dj.cast<Complex>().asDiagonal() * w.adjoint() - targets[j].matrix();
    total += r.squaredNorm();
  }
  return total;
}

/// The residual as a function of (theta, D_1, ..., D_m), with its analytic gradient.
class ResidualObjective {
 public:
  ResidualObjective(std::vector<CMatrix> targets, UnitaryOperator base)
      : targets_(std::move(targets)), base_(std::move(base)) {
    if (targets_.empty()) throw std::invalid_argument("ResidualObjective: no targets");
    d_ = static_cast<int>(targets_.front().rows());
    de_ = base_.dim();
    if (d_ > de_) throw DimensionError("ResidualObjective: d exceeds d_E");
    for (const auto& t : targets_) {
      if (t.rows() != d_ || t.cols() != d_) throw DimensionError("ResidualObjective: target dims differ");
    }
  }

  int num_parameters() const { return de_ * de_ + m() * de_; }
  int m() const { return static_cast<int>(targets_.size()); }
  int d() const { return d_; }
  int d_E() const { return de_; }
  const UnitaryOperator& base() const { return base_; }

  /// U0 exp(i A(theta)).
  CMatrix unitary(const double* x) const {
    const Eigen::Map<const RVector> theta(x, static_cast<Eigen::Index>(de_) * de_);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_from_coordinates(theta, de_));
    CVector ph(de_);
    for (int k = 0; k < de_; ++k) ph(k) = std::exp(kI * es.eigenvalues()(k));
    return base_.matrix() * es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  }

  double evaluate(const double* x, double* grad) const {
    const Eigen::Index nth = static_cast<Eigen::Index>(de_) * de_;
    const Eigen::Map<const RVector> theta(x, nth);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_from_coordinates(theta, de_));
    const RVector& lam = es.eigenvalues();
    const CMatrix& v = es.eigenvectors();
    CVector ph(de_);
    for (int k = 0; k < de_; ++k) ph(k) = std::exp(kI * lam(k));
    const CMatrix e = v * ph.asDiagonal() * v.adjoint();
    const CMatrix u0top = base_.matrix().topRows(d_);
    const CMatrix w = u0top * e;

    double f = 0.0;
    CMatrix g = CMatrix::Zero(d_, de_);  // df = Re Tr(g^dag dW)
    for (int j = 0; j < m(); ++j) {
      const Eigen::Map<const RVector> dj(x + nth + static_cast<Eigen::Index>(j) * de_, de_);
      const CMatrix wd = w * dj.cast<Complex>().asDiagonal();
      const CMatrix r = wd * w.adjoint() - targets_[static_cast<std::size_t>(j)];
      f += r.squaredNorm();
      if (grad) {
        const CMatrix rw = r * w;
        for (int k = 0; k < de_; ++k) {
          grad[nth + static_cast<Eigen::Index>(j) * de_ + k] =
              2.0 * w.col(k).dot(rw.col(k)).real();
        }
        g += 4.0 * r * wd;
      }
    }
    if (grad) {
      // Pull back through W = U0_top E and E = exp(iA) (Daleckii-Krein).
      const CMatrix ge = u0top.adjoint() * g;
      const CMatrix y = v.adjoint() * ge * v;
      CMatrix z(de_, de_);
      for (int p = 0; p < de_; ++p) {
        for (int q = 0; q < de_; ++q) {
          const double half = 0.5 * (lam(p) - lam(q));
          const double sinc = half == 0.0 ? 1.0 : std::sin(half) / half;
          const Complex fpq = kI * std::exp(kI * (0.5 * (lam(p) + lam(q)))) * sinc;
          z(p, q) = std::conj(fpq) * y(p, q);
        }
      }
      const CMatrix k = v * z * v.adjoint();
      const RVector gt = hermitian_coordinates(CMatrix(0.5 * (k + k.adjoint())));
      std::copy(gt.data(), gt.data() + nth, grad);
    }
    return f;
  }

 private:
  std::vector<CMatrix> targets_;
  UnitaryOperator base_;
  int d_ = 0;
  int de_ = 0;
};

/// Central finite-difference gradient (test oracle and diagnostics).
inline RVector finite_difference_gradient(const ResidualObjective& obj, const RVector& x,
                                          double step = 1e-6) {
  RVector g(x.size());
  RVector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double keep = xp(i);
    xp(i) = keep + step;
    const double fp = obj.evaluate(xp.data(), nullptr);
    xp(i) = keep - step;
    const double fm = obj.evaluate(xp.data(), nullptr);
    xp(i) = keep;
    g(i) = (fp - fm) / (2.0 * step);
  }
  return g;
}

struct SearchProblem {
  std::vector<HermitianOperator> targets;
  int d_E_candidate = 0;
  int restarts = 20;
  int max_iters = 2000;
  double tol_feasible = 1e-7;
  std::uint64_t seed = 0;
  /// 0: default_thread_count().
  int threads = 0;
};

enum class Verdict { feasible, infeasible, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::feasible: return "feasible";
    case Verdict::infeasible: return "infeasible";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct SearchResult {
  /// Residual for the targets scaled to unit Frobenius norm.
  double best_residual = std::numeric_limits<double>::infinity();
  /// Residual of best_U / best_diagonals against the targets as given.
  double raw_residual = std::numeric_limits<double>::infinity();
  bool feasible = false;
  /// infeasible only if every restart stalls above 100 * tol_feasible.
  Verdict verdict = Verdict::inconclusive;
  UnitaryOperator best_U = UnitaryOperator::identity(1);
  std::vector<DiagonalSpec> best_diagonals;
  int restarts_used = 0;
  long long iterations_used = 0;
  int best_restart = -1;
  /// Best lower bound on d_E known for these targets; see known_lower_bound.
  int lower_bound = 1;
  bool contradicts_lower_bound = false;
};

/// Numerical rank with singular values above cutoff * sigma_max (0 for the zero matrix).
inline int numerical_rank(const CMatrix& m, double cutoff = 1e-8) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cutoff * s(0);
  return r;
}

/// Lower bound on d_E implied by the targets:
///  * d if they already commute, otherwise d + 1;
///  * the number of linearly independent targets, plus one unless I_d is in their span;
///  * d + ceil(rank([h_i, h_j]) / 2) for every pair, since the off-diagonal blocks B_i of
///    H_i satisfy [h_i, h_j] = B_j B_i^dag - B_i B_j^dag, of rank at most 2 (d_E - d).
inline int known_lower_bound(std::span<const HermitianOperator> targets, double cutoff = 1e-8) {
  if (targets.empty()) return 1;
  const int d = targets.front().dim();
  double scale = 0.0;
  for (const auto& h : targets) scale = std::max(scale, h.norm());
  if (all_commute(targets, cutoff * std::max(1.0, scale * scale))) return d;
  int lb = d + 1;

  RMatrix coords(d * d, static_cast<Eigen::Index>(targets.size()));
  for (std::size_t j = 0; j < targets.size(); ++j) {
    coords.col(static_cast<Eigen::Index>(j)) = hermitian_coordinates(targets[j]);
  }
  const int rank = numerical_rank(coords.cast<Complex>(), cutoff);
  RMatrix with_id(d * d, coords.cols() + 1);
  with_id << coords, hermitian_coordinates(HermitianOperator::identity(d));
  const bool identity_in_span = numerical_rank(with_id.cast<Complex>(), cutoff) == rank;
  lb = std::max(lb, identity_in_span ? rank : rank + 1);

  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      const int r = numerical_rank(commutator(targets[i], targets[j]), cutoff);
      lb = std::max(lb, d + (r + 1) / 2);
    }
  }
  return lb;
}

namespace detail {

struct RestartOutcome {
  double residual = std::numeric_limits<double>::infinity();
  long long iterations = 0;
  std::vector<double> x;
  UnitaryOperator base = UnitaryOperator::identity(1);
};

class CeresResidual final : public ceres::FirstOrderFunction {
 public:
  explicit CeresResidual(const ResidualObjective* obj) : obj_(obj) {}
  bool Evaluate(const double* x, double* cost, double* gradient) const override {
    *cost = obj_->evaluate(x, gradient);
    return std::isfinite(*cost);
  }
  int NumParameters() const override { return obj_->num_parameters(); }

 private:
  const ResidualObjective* obj_;
};

class StopBelow final : public ceres::IterationCallback {
 public:
  explicit StopBelow(double target) : target_(target) {}
  ceres::CallbackReturnType operator()(const ceres::IterationSummary& s) override {
    return s.cost <= target_ ? ceres::SOLVER_TERMINATE_SUCCESSFULLY : ceres::SOLVER_CONTINUE;
  }

 private:
  double target_;
};

inline RestartOutcome run_restart(const std::vector<CMatrix>& targets, int de, int max_iters,
                                  double stop_below, std::uint64_t seed) {
  Rng rng(seed);
  RestartOutcome out;
  out.base = random_unitary_haar(de, rng);
  ResidualObjective obj(targets, out.base);
  const int d = obj.d();
  const int nth = de * de;
  out.x.assign(static_cast<std::size_t>(obj.num_parameters()), 0.0);

  // Diagonals start at the least-squares fit for U = U0.
  const RealLinearMap f = diagonal_to_hermitian_map(out.base.matrix().topRows(d));
  const Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(f.matrix);
  for (int j = 0; j < obj.m(); ++j) {
    const RVector dj = cod.solve(hermitian_coordinates(targets[static_cast<std::size_t>(j)]));
    std::copy(dj.data(), dj.data() + de, out.x.begin() + nth + j * de);
  }

  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::LBFGS;
  options.max_num_iterations = max_iters;
  options.function_tolerance = 1e-14;
  options.gradient_tolerance = 1e-14;
  options.parameter_tolerance = 1e-14;
  options.logging_type = ceres::SILENT;
  StopBelow stop(stop_below);
  options.callbacks.push_back(&stop);
  ceres::GradientProblem problem(new CeresResidual(&obj));
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, out.x.data(), &summary);

  out.residual = obj.evaluate(out.x.data(), nullptr);
  out.iterations = static_cast<long long>(summary.iterations.size());
  return out;
}

}  // namespace detail

/// Multi-start quasi-Newton search for a purification of the targets on d_E_candidate
/// dimensions. Restarts are run in batches on worker threads; the reported restart is the
/// lowest-index feasible one, or the lowest residual if none is feasible, so the result
/// does not depend on the thread count.
inline SearchResult search(const SearchProblem& problem) {
  if (problem.targets.empty()) throw std::invalid_argument("search: no targets");
  const int d = problem.targets.front().dim();
  for (const auto& h : problem.targets) {
    if (h.dim() != d) throw DimensionError("search: target dimensions differ");
  }
  if (problem.d_E_candidate < d) {
    throw DimensionError("search: d_E candidate " + std::to_string(problem.d_E_candidate) +
                         " smaller than d = " + std::to_string(d));
  }
  if (problem.restarts < 1 || problem.max_iters < 1) {
    throw std::invalid_argument("search: restarts and max_iters must be positive");
  }
  const int de = problem.d_E_candidate;

  std::vector<double> scales;
  std::vector<CMatrix> normalized;
  for (const auto& h : problem.targets) {
    const double s = h.norm() > 0.0 ? h.norm() : 1.0;
    scales.push_back(s);
    normalized.push_back(h.matrix() / s);
  }

  const int threads = problem.threads > 0 ? problem.threads : default_thread_count();
  const double stop_below = 1e-3 * problem.tol_feasible;
  std::vector<std::optional<detail::RestartOutcome>> outcomes(static_cast<std::size_t>(problem.restarts));
  int chosen = -1;
  for (int begin = 0; begin < problem.restarts && chosen < 0; begin += threads) {
    const int end = std::min(problem.restarts, begin + threads);
    auto work = [&](int idx) {
      outcomes[static_cast<std::size_t>(idx)] = detail::run_restart(
          normalized, de, problem.max_iters, stop_below,
          derive_seed(problem.seed, static_cast<std::uint64_t>(idx)));
    };
    if (end - begin == 1) {
      work(begin);
    } else {
      std::vector<std::jthread> pool;
      for (int idx = begin; idx < end; ++idx) pool.emplace_back(work, idx);
    }
    for (int idx = begin; idx < end; ++idx) {
      if (outcomes[static_cast<std::size_t>(idx)]->residual <= problem.tol_feasible) {
        chosen = idx;
        break;
      }
    }
  }

  const int considered = chosen >= 0 ? chosen + 1 : problem.restarts;
  SearchResult result;
  int best = chosen >= 0 ? chosen : 0;
  for (int idx = 0; idx < considered; ++idx) {
    const auto& o = *outcomes[static_cast<std::size_t>(idx)];
    result.iterations_used += o.iterations;
    if (chosen < 0 && o.residual < outcomes[static_cast<std::size_t>(best)]->residual) best = idx;
  }
  const auto& win = *outcomes[static_cast<std::size_t>(best)];
  result.restarts_used = considered;
  result.best_restart = best;
  result.best_residual = win.residual;
  result.feasible = win.residual <= problem.tol_feasible;
  result.verdict = result.feasible ? Verdict::feasible
                   : win.residual > 100.0 * problem.tol_feasible ? Verdict::infeasible
                                                                  : Verdict::inconclusive;

  const ResidualObjective obj(normalized, win.base);
  result.best_U = UnitaryOperator(obj.unitary(win.x.data()), 1e-10);
  const int nth = de * de;
  for (std::size_t j = 0; j < problem.targets.size(); ++j) {
    std::vector<double> diag(win.x.begin() + nth + static_cast<long>(j) * de,
                             win.x.begin() + nth + static_cast<long>(j + 1) * de);
    for (double& v : diag) v *= scales[j];
    result.best_diagonals.emplace_back(std::move(diag));
  }
  result.raw_residual = residual(result.best_U, result.best_diagonals, problem.targets);
  result.lower_bound = known_lower_bound(problem.targets);
  result.contradicts_lower_bound = result.feasible && de < result.lower_bound;
  return result;
}

/// Extended operators U diag(D_j) U^dag from a search result, bundled as a purification.
inline Purification purification_from_search(const SearchResult& r,
                                              std::span<const HermitianOperator> targets) {
  std::vector<HermitianOperator> ext;
  for (const auto& dj : r.best_diagonals) ext.push_back(r.best_U.conjugate_diagonal(dj.values()));
  return Purification(std::vector<HermitianOperator>(targets.begin(), targets.end()),
                      std::move(ext), ProjectionConvention(targets.front().dim(), r.best_U.dim()),
                      Method::manual, {"numerical search"});
}

struct FrontierOptions {
  int restarts = 20;
  int max_iters = 2000;
  double tol_feasible = 1e-7;
  int threads = 0;
};

struct FrontierRow {
  int d_E = 0;
  int trials = 0;
  double feasible_fraction = 0.0;
  double infeasible_fraction = 0.0;
  double median_residual = 0.0;
};

/// m random GUE targets on d dimensions for trial `trial` of a scan seeded with `seed`.
inline std::vector<HermitianOperator> random_targets(int d, int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<HermitianOperator> t;
  for (int j = 0; j < m; ++j) t.push_back(random_hermitian(d, rng));
  return t;
}

/// For each d_E in [de_min, de_max], searches the same `trials` random target sets and
/// reports the feasible fraction and median residual.
inline std::vector<FrontierRow> frontier_scan(int d, int m, int de_min, int de_max, int trials,
                                              std::uint64_t seed, const FrontierOptions& opt = {}) {
  if (d < 1 || m < 1 || trials < 1 || de_min < d || de_max < de_min) {
    throw std::invalid_argument("frontier_scan: invalid ranges");
  }
  std::vector<std::vector<HermitianOperator>> sets;
  for (int t = 0; t < trials; ++t) sets.push_back(random_targets(d, m, derive_seed(seed, static_cast<std::uint64_t>(t))));

  std::vector<FrontierRow> rows;
  for (int de = de_min; de <= de_max; ++de) {
    FrontierRow row;
    row.d_E = de;
    row.trials = trials;
    std::vector<double> res;
    int feas = 0, infeas = 0;
    for (int t = 0; t < trials; ++t) {
      SearchProblem p;
      p.targets = sets[static_cast<std::size_t>(t)];
      p.d_E_candidate = de;
      p.restarts = opt.restarts;
      p.max_iters = opt.max_iters;
      p.tol_feasible = opt.tol_feasible;
      p.threads = opt.threads;
      p.seed = derive_seed(seed ^ 0x5EA2C4ULL, static_cast<std::uint64_t>(de * 100003 + t));
      const SearchResult r = search(p);
      res.push_back(r.best_residual);
      feas += r.feasible;
      infeas += r.verdict == Verdict::infeasible;
    }
    std::sort(res.begin(), res.end());
    row.median_residual = res.size() % 2 ? res[res.size() / 2]
                                         : 0.5 * (res[res.size() / 2 - 1] + res[res.size() / 2]);
    row.feasible_fraction = static_cast<double>(feas) / trials;
    row.infeasible_fraction = static_cast<double>(infeas) / trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hampure
