// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero when
// any criterion fails.

#include "scs/bench/config.hpp"
#include "scs/bench/results.hpp"
#include "scs/bench/runner.hpp"
#include "scs/bench/verify.hpp"
#include "scs/direction.hpp"
#include "scs/optim.hpp"
#include "scs/problems/corpus.hpp"
#include "scs/sampling.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace scs;
using namespace scs::bench;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

// Failing verify checks, or "all N checks passed".
Outcome from_suite(const std::string& suite) {
  Outcome o{true, {}};
  int total = 0;
  for (const Check& c : run_suite(suite)) {
    ++total;
    if (!c.passed) {
      o.passed = false;
      o.detail += "[" + c.name + ": " + c.detail + "] ";
    }
  }
  if (o.passed) o.detail = "verify " + suite + ": " + std::to_string(total) + " checks passed";
  return o;
}

Outcome both(Outcome a, const Outcome& b) {
  a.passed = a.passed && b.passed;
  a.detail += "; " + b.detail;
  return a;
}

// Criterion 1, recomputed here with its own grid.
Outcome direction_oracle() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> z;
  double worst = -1e300;
  int pairs = 0;
  for (int dim : {1, 2, 10, 1000}) {
    for (int k = 0; k < 2500; ++k, ++pairs) {
      Vector d(dim), g(dim);
      for (auto& x : d) x = z(rng);
      for (auto& x : g) x = z(rng) * (k % 3 == 0 ? 0.1 : 1.0);
      if (k % 5 == 0) g = d * 1.5 + g * 0.01;  // near-collinear
      const double dd = d.squaredNorm(), dg = d.dot(g), gg = g.squaredNorm();
      auto value = [&](double l) { return (1 - l) * (1 - l) * dd + 2 * l * (1 - l) * dg + l * l * gg; };
      double grid_min = 1e300;
      for (int i = 0; i < 10000; ++i) grid_min = std::min(grid_min, value(i / 9999.0));
      const double l = lambda_star(d, g);
      worst = std::max(worst, ((1 - l) * d + l * g).squaredNorm() - grid_min);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d pairs, max excess over grid %.3g", pairs, worst);
  return {worst <= 1e-10, buf};
}

// Criterion 5 on a direct grid.
Outcome p_lambda_oracle() {
  bool ok = true;
  std::ostringstream s;
  for (double eta : {0.1, 1.0, 10.0}) {
    const double a = 2 + 1 / eta + eta, b = -2 * (1 + eta);
    auto p = [&](double l) { return a * l * l + b * l + eta; };
    const int n = 100000;
    const double h = 5.0 / (n - 1);
    int arg = 0;
    double best = 1e300;
    for (int i = 0; i < n; ++i) {
      const double v = p(-2 + i * h);
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    // The grid spacing is coarser than the tolerance; refine with the
    // parabola through the three grid points around the minimum.
    const double x0 = -2 + (arg - 1) * h, y0 = p(x0), y1 = p(x0 + h), y2 = p(x0 + 2 * h);
    const double refined = x0 + h + h * (y0 - y2) / (2 * (y0 - 2 * y1 + y2));
    const double target = eta / (1 + eta);
    const bool here = best >= -1e-12 && std::abs(refined - target) <= 1e-6 && std::abs(-2 + arg * h - target) <= h &&
                      std::abs(p_lambda(-2 + arg * h, eta) - best) <= 1e-12;
    ok = ok && here;
    s << "eta=" << eta << " min=" << best << " argmin=" << refined << " ";
  }
  return {ok, s.str()};
}

Outcome sample_size_oracle() {
  const auto n = required_sample_size(0.01, 1, 8, 0.5);
  // -8 ln(0.005) * 4 / (64 * 0.0625) = 42.39
  const long direct = static_cast<long>(std::ceil(-8 * std::log(0.005) * 4 / (64 * 0.0625)));
  // Nonincreasing in eps, kappa, delta and nondecreasing in M, checked
  // against every neighbour on a 10^4-point grid.
  auto ax = [](double lo, double hi, int i) { return lo * std::pow(hi / lo, i / 9.0); };
  long breaks = 0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c)
        for (int d = 0; d < 10; ++d) {
          const double e = ax(1e-4, 0.9, a), m = ax(0.01, 50, b), k = ax(0.05, 100, c), dl = ax(0.02, 3, d);
          const auto here = required_sample_size(e, m, k, dl);
          if (a < 9 && required_sample_size(ax(1e-4, 0.9, a + 1), m, k, dl) > here) ++breaks;
          if (b < 9 && required_sample_size(e, ax(0.01, 50, b + 1), k, dl) < here) ++breaks;
          if (c < 9 && required_sample_size(e, m, ax(0.05, 100, c + 1), dl) > here) ++breaks;
          if (d < 9 && required_sample_size(e, m, k, ax(0.02, 3, d + 1)) > here) ++breaks;
        }
  return {n == 43 && direct == 43 && breaks == 0,
          "N=" + std::to_string(n) + ", monotonicity breaks on 10^4 grid: " + std::to_string(breaks)};
}

Outcome hand_value_oracle() {
  OptimizerState<double> s(OptimizerKind::scsadamw, HyperParams{});
  Vector theta = Vector::Zero(1);
  step_scsadamw(s, theta, Vector(Vector::Ones(1)));
  const double err = std::abs(theta[0] - (-0.000999999990));
  char buf[96];
  std::snprintf(buf, sizeof buf, "theta1=%.12f err=%.3g", theta[0], err);
  return {err <= 1e-12, buf};
}

fs::path work_dir() {
  const fs::path d = fs::temp_directory_path() / "scs_acceptance";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path nonsmooth_path(const std::string& opt, int seed) {
  return work_dir() / ("l1_" + opt + "_" + std::to_string(seed) + ".jsonl");
}

fs::path lm_path(const std::string& opt) { return work_dir() / ("charlm_" + opt + ".jsonl"); }

RunOutcome nonsmooth_run(const std::string& opt, int seed) {
  return execute_run(make_config({{"problem", "l1-quadratic"},
                                  {"optimizer", opt},
                                  {"dim", "50"},
                                  {"seed", std::to_string(seed)},
                                  {"max-steps", "5000"},
                                  {"lr", "0.001"},
                                  {"wd", "0.001"},
                                  {"out", nonsmooth_path(opt, seed).string()}}));
}

RunOutcome lm_run(const std::string& opt) {
  return execute_run(make_config({{"problem", "charlm"},
                                  {"optimizer", opt},
                                  {"seed", "1"},
                                  {"epochs", "3"},
                                  {"lr", "0.001"},
                                  {"wd", "0.001"},
                                  {"out", lm_path(opt).string()}}));
}

const std::vector<std::string> kNonsmooth{"adam", "adamw", "scsadamw"};
const std::vector<std::string> kAll{"sgd", "polyak", "adam", "adamw", "scsadamw"};

Outcome nonsmooth_ordering() {
  std::ostringstream s;
  std::vector<double> mean(3, 0.0);
  bool finite = true;
  for (int seed = 1; seed <= 5; ++seed) {
    s << "seed " << seed << ":";
    for (std::size_t k = 0; k < kNonsmooth.size(); ++k) {
      const RunOutcome r = nonsmooth_run(kNonsmooth[k], seed);
      const double f = r.summary.final_loss.value_or(std::nan(""));
      finite = finite && std::isfinite(f) && r.exit_code == kExitOk;
      mean[k] += f / 5;
      char buf[64];
      std::snprintf(buf, sizeof buf, " %s=%.6f", kNonsmooth[k].c_str(), f);
      s << buf;
    }
    s << "; ";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "mean adam=%.6f adamw=%.6f scsadamw=%.6f", mean[0], mean[1], mean[2]);
  s << buf;
  return {finite && mean[2] <= mean[1] && mean[2] <= mean[0], s.str()};
}

Outcome lm_smoke() {
  const double ln_v = std::log(static_cast<double>(load_corpus(bundled_corpus_path(), 256).symbols.size()));
  std::ostringstream s;
  char buf[96];
  std::snprintf(buf, sizeof buf, "ln V=%.6f", ln_v);
  s << buf;
  bool ok = true;
  for (const auto& opt : kAll) {
    const RunOutcome r = lm_run(opt);
    const double f = r.summary.final_loss.value_or(std::nan(""));
    ok = ok && r.exit_code == kExitOk && std::isfinite(f) && f < ln_v;
    std::snprintf(buf, sizeof buf, " %s=%.4f(%s)", opt.c_str(), f, r.summary.stop_reason.c_str());
    s << buf;
  }
  return {ok, s.str()};
}

Outcome determinism() {
  std::vector<std::pair<fs::path, std::string>> first;
  for (int seed = 1; seed <= 5; ++seed)
    for (const auto& opt : kNonsmooth) first.emplace_back(nonsmooth_path(opt, seed), "");
  for (const auto& opt : kAll) first.emplace_back(lm_path(opt), "");
  for (auto& [p, bytes] : first) {
    if (!fs::exists(p)) return {false, "missing " + p.string() + " (criteria 10 and 11 must run first)"};
    bytes = slurp(p);
  }
  for (int seed = 1; seed <= 5; ++seed)
    for (const auto& opt : kNonsmooth) nonsmooth_run(opt, seed);
  for (const auto& opt : kAll) lm_run(opt);
  int differ = 0;
  std::string which;
  for (const auto& [p, bytes] : first) {
    if (slurp(p) != bytes) {
      ++differ;
      which += " " + p.filename().string();
    }
  }
  return {differ == 0, std::to_string(first.size() - differ) + "/" + std::to_string(first.size()) +
                           " results files byte-identical" + which};
}

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "direction optimality", 30,
       [] { return both(direction_oracle(), from_suite("direction-optimality")); }},
      {2, "hull membership and reconstruction", 30, [] { return from_suite("hull-membership"); }},
      {3, "norm decay rate", 60, [] { return from_suite("norm-rate"); }},
      {4, "stationarity implication", 30, [] { return from_suite("stationarity-certificate"); }},
      {5, "p(lambda) nonnegativity", 5, [] { return both(p_lambda_oracle(), from_suite("p-lambda")); }},
      {6, "sample-size arithmetic", 5, sample_size_oracle},
      {7, "concentration coverage", 120, [] { return from_suite("concentration"); }},
      {8, "gradient correctness", 60, [] { return from_suite("grad-check"); }},
      {9, "optimizer reductions", 30,
       [] { return both(hand_value_oracle(), from_suite("optimizer-reductions")); }},
      {10, "nonsmooth convergence ordering", 120, nonsmooth_ordering},
      {11, "char-LM smoke", 600, lm_smoke},
      {12, "determinism", 720, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    if (!in_time) o.detail += "; over time limit";
    const bool pass = o.passed && in_time;
    failed += !pass;
    std::printf("criterion %2d %s: %s (%.1fs, limit %.0fs) %s\n", c.id, c.title.c_str(), pass ? "PASS" : "FAIL", secs,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
