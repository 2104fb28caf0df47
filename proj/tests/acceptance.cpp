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

// End-to-end acceptance run: one PASS/FAIL line per criterion, each with its measured
// figures and wall-clock time. Exits non-zero if any gating criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hampure/hampure.hpp"
#include "oracles.hpp"

namespace {

using namespace hampure;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
  bool gating = true;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1 ------------------------------------------------------------------------------------

Outcome sigma_regression() {
  const Complex i(0.0, 1.0);
  // Published table, row by row.
  const std::vector<std::vector<Complex>> tx{{0, 1, 1.0 + i, 0},
                                             {1, 0, 1.0 + i, 0},
                                             {1.0 - i, 1.0 - i, 1, 0},
                                             {0, 0, 0, -1}};
  const std::vector<std::vector<Complex>> ty{{0, -i, i, (2.0 + 4.0 * i) / 3.0},
                                             {i, 0, 1, (1.0 - i) / 3.0},
                                             {-i, 1, 0, -1},
                                             {(2.0 - 4.0 * i) / 3.0, (1.0 + i) / 3.0, -1, 0}};
  const std::vector<std::vector<Complex>> tz{{1, 0, -(4.0 + 4.0 * i) / 9.0, (7.0 + 8.0 * i) / 9.0},
                                             {0, -1, (5.0 + 5.0 * i) / 9.0, -(16.0 - i) / 9.0},
                                             {-(4.0 - 4.0 * i) / 9.0, (5.0 - 5.0 * i) / 9.0, 0, -i},
                                             {(7.0 - 8.0 * i) / 9.0, -(16.0 + i) / 9.0, i, 0}};
  const SigmaMatrices s = sigma_matrices();
  bool entries = true;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      entries = entries && s.x(r, c) == tx[r][c] && s.y(r, c) == ty[r][c] && s.z(r, c) == tz[r][c];
    }
  }
  const double cxy = oracle::frobenius(oracle::commutator(s.x.matrix(), s.y.matrix()));
  const double cxz = oracle::frobenius(oracle::commutator(s.x.matrix(), s.z.matrix()));
  const double cyz = oracle::frobenius(oracle::commutator(s.y.matrix(), s.z.matrix()));
  const double worst = std::max({cxy, cxz, cyz});
  const bool blocks = CMatrix(s.x.matrix().topLeftCorner(2, 2)) == pauli::X() &&
                      CMatrix(s.y.matrix().topLeftCorner(2, 2)) == pauli::Y() &&
                      CMatrix(s.z.matrix().topLeftCorner(2, 2)) == pauli::Z();
  return {entries && blocks && worst < 1e-12,
          fmt("entries %s, top-left blocks %s, max commutator %.2e", entries ? "exact" : "MISMATCH",
              blocks ? "X/Y/Z" : "WRONG", worst)};
}

// 2 ------------------------------------------------------------------------------------

Outcome pair_constructions() {
  int failures = 0, total = 0;
  double worst_tensor = 0, worst_schur = 0, worst_qubit = 0;
  Rng rng(20260001);
  for (int d = 2; d <= 8; ++d) {
    for (int s = 0; s < 200; ++s) {
      const HermitianOperator a = random_hermitian(d, rng), b = random_hermitian(d, rng);
      const Purification t = purify_pair_tensor(a, b);
      const Purification c = purify_pair_schur(a, b);
      const VerifyReport rt = verify(t, 1e-9), rc = verify(c, 1e-9);
      worst_tensor = std::max({worst_tensor, rt.max_commutator_norm, rt.max_recovery_error});
      worst_schur = std::max({worst_schur, rc.max_commutator_norm, rc.max_recovery_error});
      failures += !rt.pass || t.d_E() != 2 * d;
      failures += !rc.pass || c.d_E() != 2 * d - 1;
      total += 2;
    }
  }
  for (int s = 0; s < 200; ++s) {
    const Purification q = purify_pair_qubit(random_hermitian(2, rng), random_hermitian(2, rng));
    const VerifyReport r = verify(q, 1e-10);
    worst_qubit = std::max({worst_qubit, r.max_commutator_norm, r.max_recovery_error});
    failures += !r.pass || q.d_E() != 3;
    ++total;
  }
  return {failures == 0, fmt("%d/%d verified; worst residual tensor %.1e, schur %.1e, qubit(d_E=3) %.1e",
                             total - failures, total, worst_tensor, worst_schur, worst_qubit)};
}

// 3 ------------------------------------------------------------------------------------

Outcome partial_isometry() {
  int failures = 0, total = 0;
  double worst = 0;
  Rng rng(20260002);
  for (int d = 2; d <= 6; ++d) {
    for (int m = 2; m <= 5; ++m) {
      for (int s = 0; s < 50; ++s) {
        std::vector<HermitianOperator> hs;
        for (int j = 0; j < m; ++j) hs.push_back(random_hermitian(d, rng));
        const Purification p = purify_m_md(hs);
        const VerifyReport r = verify(p, 1e-9);
        worst = std::max({worst, r.max_commutator_norm, r.max_recovery_error});
        failures += !r.pass || p.d_E() != m * d;
        ++total;
      }
    }
  }
  return {failures == 0, fmt("%d/%d verified with d_E = m d; worst residual %.1e", total - failures, total, worst)};
}

// 4 ------------------------------------------------------------------------------------

Outcome algebra_purifier() {
  bool ok = true;
  double worst_ratio = 1.0, worst_res = 0.0;
  Rng rng(20260003);
  for (int d = 2; d <= 8; ++d) {
    const AlgebraPurifier p = build_algebra_purifier(d);
    const double ratio = p.spectrum.min_singular_value / p.spectrum.max_singular_value;
    worst_ratio = std::min(worst_ratio, ratio);
    ok = ok && p.spectrum.rank == d * d && ratio > 1e-8;
    for (const auto& basis : {gell_mann_basis(d), [&] {
                                std::vector<HermitianOperator> b;
                                for (int k = 0; k < d * d; ++k) b.push_back(random_hermitian(d, rng));
                                return b;
                              }()}) {
      const VerifyReport r = verify(purify_full_basis(p, basis), 1e-9);
      worst_res = std::max({worst_res, r.max_commutator_norm, r.max_recovery_error});
      ok = ok && r.pass;
    }
  }
  const Complex i(0.0, 1.0);
  CMatrix printed(4, 16);
  printed << 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0,
             0, 1, 0, 0, 1, 0, 0, 1, 1, 0, i, 0, 0, 1, 1, 0,
             0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, i, 0, i, 0, 1,
             0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, i, 0, i, i;
  const bool fixture = raw_spanning_rows(4) == printed;
  return {ok && fixture, fmt("rank d^2 for d=2..8, min sigma ratio %.2e; basis purifications worst %.1e; d=4 raw rows %s",
                             worst_ratio, worst_res, fixture ? "exact" : "MISMATCH")};
}

// 5 ------------------------------------------------------------------------------------

Outcome genericity() {
  int surjective = 0, total = 0;
  double worst = 1.0;
  for (int d = 2; d <= 4; ++d) {
    for (int s = 0; s < 50; ++s) {
      const SurjectivityReport r =
          surjectivity_test(random_unitary_haar(d * d, derive_seed(20260004, static_cast<std::uint64_t>(100 * d + s))), d);
      surjective += r.surjective;
      worst = std::min(worst, r.min_singular_value / r.max_singular_value);
      ++total;
    }
  }
  bool identity_rejected = true;
  for (int d = 2; d <= 4; ++d) identity_rejected = identity_rejected && !surjectivity_test(UnitaryOperator::identity(d * d), d).surjective;
  return {surjective == total && identity_rejected,
          fmt("%d/%d Haar samples surjective (min sigma ratio %.2e); identity %s", surjective, total, worst,
              identity_rejected ? "non-surjective" : "WRONGLY surjective")};
}

// 6 ------------------------------------------------------------------------------------

Outcome generators() {
  bool ok = true;
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const VerifyReport r = verify(generator_purification(d), 1e-12);
    worst = std::max({worst, r.max_commutator_norm, r.max_recovery_error});
    ok = ok && r.pass;
  }
  std::string dims;
  for (int d = 2; d <= 6; ++d) {
    const LieClosureReport r = lie_closure(generator_purification(d).inputs);
    ok = ok && r.saturated && r.dimension == d * d;
    dims += (dims.empty() ? "" : ",") + std::to_string(r.dimension);
  }
  return {ok, fmt("d_E=d+1 verified d=2..8 (worst %.1e); closure dims d=2..6: %s", worst, dims.c_str())};
}

// 7 ------------------------------------------------------------------------------------

Outcome zeno() {
  bool ok = true;
  double lo = 0.0, hi = -2.0;
  Rng rng(20260005);
  for (int de : {4, 6}) {
    for (int s = 0; s < 20; ++s) {
      const ZenoRun run = zeno_sweep(random_hermitian(de, rng), ProjectionConvention(de / 2, de), 1.0, {100, 1000, 10000});
      lo = std::min(lo, run.slope);
      hi = std::max(hi, run.slope);
      ok = ok && run.slope >= -1.3 && run.slope <= -0.7;
    }
  }
  double closed = 0.0;
  for (long long n : {1LL, 10LL, 100LL, 1000LL, 10000LL}) {
    const CMatrix z = zeno_product(HermitianOperator(pauli::X()), ProjectionConvention(1, 2), 1.0, n);
    closed = std::max(closed, std::abs(z(0, 0) - std::pow(std::cos(1.0 / n), static_cast<double>(n))));
  }
  ok = ok && closed < 1e-12;
  return {ok, fmt("40 slopes in [%.3f, %.3f]; closed-form deviation %.1e", lo, hi, closed)};
}

// 8 ------------------------------------------------------------------------------------

struct Transition {
  int d, m, de_min, de_max, expected;
};

Outcome frontier() {
  FrontierOptions opt;
  opt.restarts = 50;
  bool ok = true;
  std::string detail;
  for (const Transition& t : {Transition{2, 2, 2, 4, 3}, Transition{3, 2, 4, 6, 5}, Transition{3, 9, 8, 10, 9}}) {
    const auto rows = frontier_scan(t.d, t.m, t.de_min, t.de_max, 5, 20260006 + t.d * 10 + t.m, opt);
    std::string frac;
    for (const auto& r : rows) {
      const bool want = r.d_E >= t.expected;
      ok = ok && (want ? r.feasible_fraction == 1.0 : r.feasible_fraction == 0.0 && r.infeasible_fraction == 1.0);
      frac += fmt("%s%d:%.0f%%", frac.empty() ? "" : " ", r.d_E, 100.0 * r.feasible_fraction);
    }
    detail += fmt("(d=%d,m=%d) %s; ", t.d, t.m, frac.c_str());
  }
  int feasible_below = 0;
  double floor = 1e300;
  for (int s = 0; s < 50; ++s) {
    SearchProblem p;
    p.targets = random_targets(4, 2, derive_seed(20260007, static_cast<std::uint64_t>(s)));
    p.d_E_candidate = 5;
    p.seed = derive_seed(20260008, static_cast<std::uint64_t>(s));
    const SearchResult r = search(p);
    feasible_below += r.feasible;
    floor = std::min(floor, r.best_residual);
  }
  ok = ok && feasible_below == 0;
  detail += fmt("guard d=4,d_E=5: %d/50 feasible (lowest residual %.2e)", feasible_below, floor);
  return {ok, detail};
}

Outcome frontier_soft() {
  SearchProblem p;
  p.targets = random_targets(4, 2, 20260009);
  p.d_E_candidate = 6;
  p.restarts = 100;
  p.seed = 20260010;
  const SearchResult r = search(p);
  return {r.feasible, fmt("d=4,m=2,d_E=6: residual %.2e after %d restart(s)", r.best_residual, r.restarts_used)};
}

// 9 ------------------------------------------------------------------------------------

Outcome properties() {
  Rng rng(20260011);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  int ok_bundles = 0;
  for (int s = 0; s < 100; ++s) {
    const int d = 2 + s % 4;
    const HermitianOperator a = random_hermitian(d, rng), b = random_hermitian(d, rng);
    const Purification p = s % 3 == 0 ? purify_pair_tensor(a, b)
                           : s % 3 == 1 ? purify_pair_schur(a, b)
                                        : purify_m_md(std::vector<HermitianOperator>{a, b});
    RMatrix alpha(2, 2);
    alpha << coeff(rng), coeff(rng), coeff(rng), coeff(rng);
    const std::vector<double> shifts{coeff(rng), coeff(rng)};
    const bool good = verify(recombine(p, alpha), 1e-10).pass && verify(shift(p, shifts), 1e-10).pass &&
                      verify(conjugate(p, random_unitary_haar(d, rng)), 1e-10).pass;
    ok_bundles += good;
  }

  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int point = 0; point < 20; ++point) {
    const int d = 2 + point % 3, de = d + 1 + point % 3, m = 1 + point % 4;
    std::vector<CMatrix> ts;
    for (int j = 0; j < m; ++j) ts.push_back(random_hermitian(d, rng).matrix());
    const ResidualObjective obj(ts, random_unitary_haar(de, rng));
    RVector x(obj.num_parameters()), g(obj.num_parameters()), fd(obj.num_parameters());
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = normal(rng);
    obj.evaluate(x.data(), g.data());
    RVector xp = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      xp(k) = x(k) + 1e-6;
      const double fp = obj.evaluate(xp.data(), nullptr);
      xp(k) = x(k) - 1e-6;
      const double fm = obj.evaluate(xp.data(), nullptr);
      xp(k) = x(k);
      fd(k) = (fp - fm) / 2e-6;
    }
    worst = std::max(worst, (g - fd).norm() / fd.norm());
  }
  return {ok_bundles == 100 && worst < 1e-5,
          fmt("%d/100 bundles keep both invariants under recombination/shift/conjugation; "
              "gradient max relative error %.1e over 20 points",
              ok_bundles, worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sigma-regression", 1e-3, sigma_regression},
      {2, "pair-constructions", 30, pair_constructions},
      {3, "m-operator-purification", 60, partial_isometry},
      {4, "full-algebra-purification", 10, algebra_purifier},
      {5, "surjectivity-genericity", 10, genericity},
      {6, "generator-purification", 120, generators},
      {7, "zeno-convergence", 30, zeno},
      {8, "frontier-transitions", 900, frontier},
      {8, "frontier-soft (not gating)", 900, frontier_soft, false},
      {9, "property-suites", 120, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = elapsed(t0);
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    const char* tag = c.gating ? (pass ? "PASS" : "FAIL") : (pass ? "SOFT-PASS" : "SOFT-FAIL");
    std::printf("[%s] criterion %d %s: %s; %.3f s (budget %g s%s)\n", tag, c.id, c.name, o.detail.c_str(), secs,
                c.budget_seconds, in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
    failed += c.gating && !pass;
  }
  std::printf("%s: %d gating criteria failed\n", failed ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failed);
  return failed ? 1 : 0;
}
