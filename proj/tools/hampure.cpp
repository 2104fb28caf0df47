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

// Command-line front end. Exit codes: 0 success or pass, 1 verification failure or
// infeasible search, 2 usage, I/O, format or dimension errors.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hampure/hampure.hpp"

namespace {

using namespace hampure;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

/// Seed, tolerance, parameters and timing shared by every JSON report.
class CommandReport {
 public:
  explicit CommandReport(std::string command) : start_(std::chrono::steady_clock::now()) {
    body_["command"] = std::move(command);
    body_["parameters"] = Json::object();
    body_["seed"] = nullptr;
    body_["tolerance"] = nullptr;
  }

  Json& operator[](const char* key) { return body_[key]; }
  Json& parameters() { return body_["parameters"]; }
  void seed(std::uint64_t s) { body_["seed"] = s; }
  void tolerance(double t) { body_["tolerance"] = t; }

  /// Merges the report header into `payload` and stamps the wall clock.
  Json finish(Json payload = Json::object()) const {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    for (const auto& [k, v] : body_.items()) {
      if (!payload.contains(k)) payload[k] = v;
    }
    payload["wall_clock_seconds"] = dt.count();
    return payload;
  }

 private:
  Json body_;
  std::chrono::steady_clock::time_point start_;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text << '\n';
  if (!out) throw FormatError("write to '" + path + "' failed");
}

void emit(const Json& j, const std::string& path) { emit(j.dump(2), path); }

std::vector<HermitianOperator> random_operators(int d, int m, std::uint64_t seed) {
  return random_targets(d, m, seed);
}

Json verify_json(const VerifyReport& r) {
  return {{"max_commutator_norm", r.max_commutator_norm},
          {"max_recovery_error", r.max_recovery_error},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

/// Writes the purification with its verification summary; fails (exit 1) if it does not verify.
int finish_purification(CommandReport& report, const Purification& p, std::optional<double> tol,
                        const std::string& output) {
  const VerifyReport v = verify(p, tol);
  report.tolerance(v.tolerance);
  Json out = to_json(p, v.tolerance);
  out["verify"] = verify_json(v);
  emit(report.finish(std::move(out)), output);
  return v.pass ? kOk : kFail;
}

std::vector<long long> parse_steps(const std::string& csv) {
  std::vector<long long> steps;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long n = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      steps.push_back(n);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--steps", "'" + item + "' is not an integer");
    }
  }
  if (steps.empty()) throw CLI::ValidationError("--steps", "empty list");
  return steps;
}

struct Options {
  std::string output;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string input;
  std::string method;
  std::string orthonormalization = "symmetric";
  int d = 2;
  int m = 2;
  int de = 0;
  int de_min = 0;
  int de_max = 0;
  int samples = 50;
  int trials = 10;
  int restarts = 20;
  int max_iters = 2000;
  int max_dim = 0;
  double t = 1.0;
  std::string steps = "10,100,1000,10000";
};

int run_purify_pair(const Options& o) {
  CommandReport report("purify-pair");
  std::vector<HermitianOperator> hs;
  if (!o.input.empty()) {
    hs = operators_from_json(read_json_file(o.input));
    report.parameters()["input"] = o.input;
  } else {
    const std::uint64_t seed = o.seed.value_or(0);
    hs = random_operators(o.d, 2, seed);
    report.seed(seed);
    report.parameters()["d"] = o.d;
  }
  if (hs.size() != 2) throw DimensionError("purify-pair expects exactly two operators");
  report.parameters()["method"] = o.method;
  const Method method = method_from_string(o.method);
  Purification p = method == Method::tensor2d    ? purify_pair_tensor(hs[0], hs[1])
                   : method == Method::qubit3    ? purify_pair_qubit(hs[0], hs[1])
                   : method == Method::schur2dm1 ? purify_pair_schur(hs[0], hs[1])
                   : throw CLI::ValidationError("--method", "expected tensor2d, qubit3 or schur2dm1");
  return finish_purification(report, p, o.tol, o.output);
}

int run_purify_m(const Options& o) {
  CommandReport report("purify-m");
  std::vector<HermitianOperator> hs;
  if (!o.input.empty()) {
    hs = operators_from_json(read_json_file(o.input));
    report.parameters()["input"] = o.input;
  } else {
    const std::uint64_t seed = o.seed.value_or(0);
    hs = random_operators(o.d, o.m, seed);
    report.seed(seed);
    report.parameters()["d"] = o.d;
    report.parameters()["m"] = o.m;
  }
  return finish_purification(report, purify_m_md(hs), o.tol, o.output);
}

int run_purify_algebra(const Options& o) {
  CommandReport report("purify-algebra");
  report.parameters()["d"] = o.d;
  report.parameters()["orthonormalization"] = o.orthonormalization;
  const Orthonormalization how = o.orthonormalization == "triangular"
                                     ? Orthonormalization::triangular
                                     : Orthonormalization::symmetric;
  std::vector<HermitianOperator> hs;
  if (!o.input.empty()) {
    hs = operators_from_json(read_json_file(o.input));
    report.parameters()["input"] = o.input;
    if (hs.front().dim() != o.d) {
      throw DimensionError("basis operators have dim " + std::to_string(hs.front().dim()) +
                           ", --d is " + std::to_string(o.d));
    }
  } else {
    hs = gell_mann_basis(o.d);
    report.parameters()["input"] = "generalized Gell-Mann basis";
  }
  const AlgebraPurifier purifier = build_algebra_purifier(o.d, how);
  report["fmap_rank"] = purifier.spectrum.rank;
  report["fmap_singular_ratio"] =
      purifier.spectrum.min_singular_value / purifier.spectrum.max_singular_value;
  return finish_purification(report, purify_full_basis(purifier, hs), o.tol, o.output);
}

int run_purify_generators(const Options& o) {
  CommandReport report("purify-generators");
  report.parameters()["d"] = o.d;
  return finish_purification(report, generator_purification(o.d), o.tol, o.output);
}

int run_genericity(const Options& o) {
  CommandReport report("genericity");
  const std::uint64_t seed = o.seed.value_or(0);
  const double cutoff = o.tol.value_or(1e-8);
  report.seed(seed);
  report.tolerance(cutoff);
  report.parameters()["d"] = o.d;
  report.parameters()["samples"] = o.samples;
  if (o.samples < 1) throw CLI::ValidationError("--samples", "must be positive");
  int failures = 0;
  int min_rank = o.d * o.d;
  double min_ratio = 1.0;
  for (int s = 0; s < o.samples; ++s) {
    const auto u = random_unitary_haar(o.d * o.d, derive_seed(seed, static_cast<std::uint64_t>(s)));
    const SurjectivityReport r = surjectivity_test(u, o.d, cutoff);
    failures += !r.surjective;
    min_rank = std::min(min_rank, r.rank);
    min_ratio = std::min(min_ratio, r.min_singular_value / r.max_singular_value);
  }
  emit(report.finish({{"samples", o.samples},
                      {"failures", failures},
                      {"min_rank", min_rank},
                      {"min_singular_ratio", min_ratio},
                      {"pass", failures == 0}}),
       o.output);
  return failures == 0 ? kOk : kFail;
}

int run_lie_closure(const Options& o) {
  CommandReport report("lie-closure");
  const double cutoff = o.tol.value_or(1e-8);
  report.tolerance(cutoff);
  report.parameters()["input"] = o.input;
  report.parameters()["max_dim"] = o.max_dim;
  const auto gens = operators_from_json(read_json_file(o.input));
  const LieClosureReport r = lie_closure(gens, o.max_dim, cutoff);
  emit(report.finish({{"dimension", r.dimension},
                      {"saturated", r.saturated},
                      {"generations", r.generations},
                      {"full_dimension", gens.front().dim() * gens.front().dim()}}),
       o.output);
  return kOk;
}

int run_zeno(const Options& o) {
  CommandReport report("zeno");
  report.parameters()["input"] = o.input;
  report.parameters()["d"] = o.d;
  report.parameters()["t"] = o.t;
  report.parameters()["steps"] = o.steps;
  const auto hs = operators_from_json(read_json_file(o.input));
  if (hs.size() != 1) throw DimensionError("zeno expects a single operator");
  const ProjectionConvention conv(o.d, hs.front().dim());
  const ZenoRun run = zeno_sweep(hs.front(), conv, o.t, parse_steps(o.steps));
  Json table = Json::array();
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    table.push_back({{"N", run.steps[i]},
                     {"error", run.errors[i]},
                     {"frobenius_error", run.frobenius_errors[i]}});
  }
  Json out{{"table", std::move(table)}};
  out["slope"] = std::isnan(run.slope) ? Json(nullptr) : Json(run.slope);
  emit(report.finish(std::move(out)), o.output);
  return kOk;
}

Json search_json(const SearchResult& r) {
  Json diags = Json::array();
  for (const auto& dj : r.best_diagonals) diags.push_back(dj.values());
  return {{"best_residual", r.best_residual},
          {"raw_residual", r.raw_residual},
          {"feasible", r.feasible},
          {"verdict", to_string(r.verdict)},
          {"restarts_used", r.restarts_used},
          {"iterations_used", r.iterations_used},
          {"best_restart", r.best_restart},
          {"lower_bound", r.lower_bound},
          {"contradicts_lower_bound", r.contradicts_lower_bound},
          {"best_U", to_json(r.best_U.matrix())},
          {"best_diagonals", std::move(diags)}};
}

int run_search(const Options& o) {
  CommandReport report("search");
  SearchProblem p;
  p.seed = o.seed.value_or(0);
  p.restarts = o.restarts;
  p.max_iters = o.max_iters;
  p.tol_feasible = o.tol.value_or(1e-7);
  p.d_E_candidate = o.de;
  if (!o.input.empty()) {
    p.targets = operators_from_json(read_json_file(o.input));
    report.parameters()["targets"] = o.input;
  } else {
    p.targets = random_operators(o.d, o.m, p.seed);
    report.parameters()["d"] = o.d;
    report.parameters()["m"] = o.m;
  }
  report.seed(p.seed);
  report.tolerance(p.tol_feasible);
  report.parameters()["de"] = o.de;
  report.parameters()["restarts"] = o.restarts;
  report.parameters()["max_iters"] = o.max_iters;
  const SearchResult r = search(p);
  emit(report.finish(search_json(r)), o.output);
  return r.feasible ? kOk : kFail;
}

int run_frontier(const Options& o) {
  const std::uint64_t seed = o.seed.value_or(0);
  FrontierOptions opt;
  opt.restarts = o.restarts;
  opt.max_iters = o.max_iters;
  opt.tol_feasible = o.tol.value_or(1e-7);
  const auto start = std::chrono::steady_clock::now();
  const auto rows = frontier_scan(o.d, o.m, o.de_min, o.de_max, o.trials, seed, opt);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  std::ostringstream csv;
  csv << "# command=frontier d=" << o.d << " m=" << o.m << " trials=" << o.trials
      << " restarts=" << o.restarts << " max_iters=" << o.max_iters << " seed=" << seed
      << " tolerance=" << opt.tol_feasible << " wall_clock_seconds=" << dt.count() << '\n';
  csv << "d_E,feasible_fraction,median_residual,infeasible_fraction\n";
  csv.precision(17);
  for (const auto& r : rows) {
    csv << r.d_E << ',' << r.feasible_fraction << ',' << r.median_residual << ','
        << r.infeasible_fraction << '\n';
  }
  std::string text = csv.str();
  text.pop_back();
  emit(text, o.output);
  return kOk;
}

int run_verify(const Options& o) {
  CommandReport report("verify");
  report.parameters()["input"] = o.input;
  const Json j = read_json_file(o.input);
  const Purification p = purification_from_json(j);
  const std::optional<double> tol = o.tol ? o.tol : recorded_tolerance(j);
  const VerifyReport v = verify(p, tol);
  report.tolerance(v.tolerance);
  Json out = verify_json(v);
  out["d"] = p.d();
  out["d_E"] = p.d_E();
  out["method"] = to_string(p.method);
  emit(report.finish(std::move(out)), o.output);
  return v.pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commuting extensions (purifications) of Hermitian operators", "hampure"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--output,-o", o.output, "Write the result here instead of stdout");
    sub->add_option("--tol", o.tol, "Override the default tolerance");
  };
  auto seeded = [&o](CLI::App* sub) { sub->add_option("--seed", o.seed, "RNG seed (default 0)"); };

  auto* pair = app.add_subcommand("purify-pair", "Purify two operators");
  pair->add_option("--method", o.method, "tensor2d | qubit3 | schur2dm1")
      ->required()
      ->check(CLI::IsMember({"tensor2d", "qubit3", "schur2dm1"}));
  pair->add_option("--input", o.input, "Operator list JSON (default: random GUE pair)");
  pair->add_option("--d", o.d, "Dimension of the random pair")->check(CLI::PositiveNumber);
  common(pair);
  seeded(pair);

  auto* many = app.add_subcommand("purify-m", "Purify m operators on m*d dimensions");
  many->add_option("--input", o.input, "Operator list JSON (default: random GUE set)");
  many->add_option("--d", o.d, "Dimension of the random set")->check(CLI::PositiveNumber);
  many->add_option("--m", o.m, "Number of random operators")->check(CLI::PositiveNumber);
  common(many);
  seeded(many);

  auto* algebra = app.add_subcommand("purify-algebra", "Purify a basis of u(d) on d^2 dimensions");
  algebra->add_option("--d", o.d, "Input dimension")->required()->check(CLI::Range(2, 64));
  algebra->add_option("--input", o.input, "Operator list JSON (default: Gell-Mann basis)");
  algebra->add_option("--orthonormalization", o.orthonormalization)
      ->check(CLI::IsMember({"symmetric", "triangular"}));
  common(algebra);

  auto* gens = app.add_subcommand("purify-generators", "Purify a generating pair on d+1 dimensions");
  gens->add_option("--d", o.d, "Input dimension")->required()->check(CLI::Range(2, 4096));
  common(gens);

  auto* generic = app.add_subcommand("genericity", "Surjectivity rate of Haar-random unitaries");
  generic->add_option("--d", o.d, "Input dimension")->required()->check(CLI::Range(1, 64));
  generic->add_option("--samples", o.samples, "Number of Haar samples");
  common(generic);
  seeded(generic);

  auto* lie = app.add_subcommand("lie-closure", "Dimension of the generated Lie algebra");
  lie->add_option("--input", o.input, "Generator list JSON")->required();
  lie->add_option("--max-dim", o.max_dim, "Stop at this dimension (0: no cap)")
      ->check(CLI::NonNegativeNumber);
  common(lie);

  auto* zeno = app.add_subcommand("zeno", "Convergence of the projected product formula");
  zeno->add_option("--input", o.input, "Hamiltonian JSON on d_E dimensions")->required();
  zeno->add_option("--d", o.d, "Dimension of the projected block")->required();
  zeno->add_option("--t", o.t, "Evolution time");
  zeno->add_option("--steps", o.steps, "Comma-separated step counts");
  common(zeno);

  auto* srch = app.add_subcommand("search", "Numerical search for a purification on d_E dimensions");
  srch->add_option("--d", o.d, "Dimension of the random targets")->check(CLI::PositiveNumber);
  srch->add_option("--m", o.m, "Number of random targets")->check(CLI::PositiveNumber);
  srch->add_option("--de", o.de, "Candidate extended dimension")->required()->check(CLI::PositiveNumber);
  srch->add_option("--restarts", o.restarts, "Random restarts")->check(CLI::PositiveNumber);
  srch->add_option("--max-iters", o.max_iters, "Optimizer iterations per restart")
      ->check(CLI::PositiveNumber);
  srch->add_option("--targets", o.input, "Operator list JSON (default: random GUE set)");
  common(srch);
  seeded(srch);

  auto* front = app.add_subcommand("frontier", "Feasibility fraction across d_E (CSV)");
  front->add_option("--d", o.d, "Dimension of the random targets")->check(CLI::PositiveNumber);
  front->add_option("--m", o.m, "Number of random targets")->check(CLI::PositiveNumber);
  front->add_option("--de-min", o.de_min, "Smallest d_E scanned")->required()->check(CLI::PositiveNumber);
  front->add_option("--de-max", o.de_max, "Largest d_E scanned")->required()->check(CLI::PositiveNumber);
  front->add_option("--trials", o.trials, "Random target sets per d_E")->check(CLI::PositiveNumber);
  front->add_option("--restarts", o.restarts, "Random restarts per trial")->check(CLI::PositiveNumber);
  front->add_option("--max-iters", o.max_iters, "Optimizer iterations per restart")
      ->check(CLI::PositiveNumber);
  common(front);
  seeded(front);

  auto* ver = app.add_subcommand("verify", "Check a purification file");
  ver->add_option("--input", o.input, "Purification JSON")->required();
  common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(pair)) return run_purify_pair(o);
    if (app.got_subcommand(many)) return run_purify_m(o);
    if (app.got_subcommand(algebra)) return run_purify_algebra(o);
    if (app.got_subcommand(gens)) return run_purify_generators(o);
    if (app.got_subcommand(generic)) return run_genericity(o);
    if (app.got_subcommand(lie)) return run_lie_closure(o);
    if (app.got_subcommand(zeno)) return run_zeno(o);
    if (app.got_subcommand(srch)) return run_search(o);
    if (app.got_subcommand(front)) return run_frontier(o);
    if (app.got_subcommand(ver)) return run_verify(o);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const NumericError& e) {
    std::cerr << "hampure: numerical failure: " << e.what() << '\n';
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "hampure: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
