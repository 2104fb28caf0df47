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

#include <cmath>
#include <limits>
#include <vector>

#include "hampure/core.hpp"

namespace hampure {

/// (P exp(-i H t / N) P)^N as a d_E x d_E matrix.
inline CMatrix zeno_product(const HermitianOperator& h, const ProjectionConvention& conv, double t,
                            long long steps) {
  if (steps < 1) throw std::invalid_argument("zeno_product: steps must be >= 1");
  if (!std::isfinite(t)) throw std::invalid_argument("zeno_product: time must be finite");
  if (h.dim() != conv.d_E) throw DimensionError("zeno_product: H does not act on d_E dimensions");
  // P e P = e restricted to the projected block, so the power can be taken blockwise.
  CMatrix base = project(expm_hermitian(h, t / static_cast<double>(steps)), conv);
  CMatrix acc = CMatrix::Identity(conv.d, conv.d);
  for (long long n = steps; n > 0; n >>= 1) {
    if (n & 1) acc = acc * base;
    if (n > 1) base = base * base;
  }
  return embed(acc, conv);
}

/// P exp(-i P H P t), with P H P taken as the projected block.
inline CMatrix zeno_limit(const HermitianOperator& h, const ProjectionConvention& conv, double t) {
  return embed(expm_hermitian(project(h, conv), t), conv);
}

/// Spectral-norm distance between the N-step product and its limit.
inline double zeno_limit_error(const HermitianOperator& h, const ProjectionConvention& conv,
                               double t, long long steps) {
  return operator_norm(zeno_product(h, conv, t, steps) - zeno_limit(h, conv, t));
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two matching points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ZenoRun {
  double t = 0.0;
  std::vector<long long> steps;
  std::vector<double> errors;            // spectral norm
  std::vector<double> frobenius_errors;  // secondary
  double slope = 0.0;                    // NaN when some error is zero
};

/// Errors over an increasing sequence of step counts, plus the fitted log-log slope.
inline ZenoRun zeno_sweep(const HermitianOperator& h, const ProjectionConvention& conv, double t,
                          std::vector<long long> steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] < 1 || (i > 0 && steps[i] <= steps[i - 1])) {
      throw std::invalid_argument("zeno_sweep: step counts must be strictly increasing and positive");
    }
  }
  ZenoRun run;
  run.t = t;
  run.steps = std::move(steps);
  const CMatrix limit = zeno_limit(h, conv, t);
  std::vector<double> xs;
  bool positive = true;
  for (long long n : run.steps) {
    const CMatrix diff = zeno_product(h, conv, t, n) - limit;
    run.errors.push_back(operator_norm(diff));
    run.frobenius_errors.push_back(diff.norm());
    xs.push_back(static_cast<double>(n));
    positive = positive && run.errors.back() > 0.0;
  }
  run.slope = positive && xs.size() >= 2 ? loglog_slope(xs, run.errors)
                                         : std::numeric_limits<double>::quiet_NaN();
  return run;
}

}  // namespace hampure
