#include "scs/bench/verify.hpp"

#include "scs/direction.hpp"
#include "scs/optim.hpp"
#include "scs/problems/charlm.hpp"
#include "scs/problems/synthetic.hpp"
#include "scs/sampling.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace scs::bench {
namespace {

using Rng = std::mt19937_64;

Vector gaussian(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> z(0.0, 1.0);
  Vector v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

/// Uniform in the ball of radius r.
Vector in_ball(Rng& rng, Eigen::Index n, double r) {
  Vector v = gaussian(rng, n);
  const double norm = v.norm();
  if (norm == 0) return Vector::Zero(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return v * (r * std::pow(u(rng), 1.0 / static_cast<double>(n)) / norm);
}

struct FunctionRule {
  const LambdaFn* fn;
  template <typename A, typename B>
  double operator()(const Eigen::MatrixBase<A>& d, const Eigen::MatrixBase<B>& g) const {
    return (*fn)(Vector(d), Vector(g));
  }
};

LambdaFn effective(const VerifyOptions& o) {
  if (o.lambda) return o.lambda;
  return [](const Vector& d, const Vector& g) { return lambda_star(d, g); };
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Check make(std::string suite, std::string name, bool passed, double value, double limit, std::string detail = {}) {
  return Check{std::move(suite), std::move(name), passed, value, limit, std::move(detail)};
}

// ---------------------------------------------------------------------------

std::vector<Check> direction_optimality(const VerifyOptions& o) {
  const std::string suite = "direction-optimality";
  const LambdaFn lam = effective(o);
  constexpr std::array<Eigen::Index, 4> dims{1, 2, 10, 1000};
  constexpr int pairs = 10000;
  constexpr int grid = 10000;

  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_outside = 0;
  double worst_growth = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < pairs; ++k) {
    Rng rng(mix_seed(o.seed, static_cast<std::uint64_t>(k)));
    const Eigen::Index n = dims[static_cast<std::size_t>(k) % dims.size()];
    std::uniform_real_distribution<double> logscale(-2.0, 2.0);
    const Vector d = gaussian(rng, n) * std::exp(logscale(rng));
    const Vector g = gaussian(rng, n) * std::exp(logscale(rng));
    const double l = lam(d, g);
    const Vector mix = (1.0 - l) * d + l * g;
    const double value = mix.squaredNorm();

    const Vector diff = g - d;
    const double a = d.squaredNorm();
    const double b = d.dot(diff);
    const double c = diff.squaredNorm();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
      const double x = static_cast<double>(i) / (grid - 1);
      best = std::min(best, a + 2.0 * x * b + x * x * c);
    }
    worst_excess = std::max(worst_excess, value - best);
    worst_outside = std::max({worst_outside, -l, l - 1.0});
    worst_growth = std::max(worst_growth, mix.norm() - std::min(d.norm(), g.norm()));
  }

  std::vector<Check> out;
  out.push_back(make(suite, "norm-vs-grid-minimum", worst_excess <= 1e-10, worst_excess, 1e-10,
                     "max of ||mix||^2 - grid min over 10000 pairs, dims 1/2/10/1000"));
  out.push_back(make(suite, "lambda-in-unit-interval", worst_outside <= 0.0, worst_outside, 0.0,
                     "largest distance of lambda outside [0, 1]"));
  out.push_back(make(suite, "norm-not-above-endpoints", worst_growth <= 1e-12, worst_growth, 1e-12));

  struct Example {
    Vector d, g;
    double lambda;
  };
  const std::vector<Example> examples{{Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}, 0.5},
                                      {Vector{{2.0, 0.0}}, Vector{{1.0, 0.0}}, 1.0},
                                      {Vector{{3.0, 4.0}}, Vector{{3.0, 4.0}}, 1.0},
                                      {Vector{{1.0, 0.0}}, Vector{{-1.0, 0.0}}, 0.5}};
  double worst = 0;
  for (const auto& e : examples) worst = std::max(worst, std::abs(lam(e.d, e.g) - e.lambda));
  out.push_back(make(suite, "worked-examples", worst <= 1e-12, worst, 1e-12));
  return out;
}

std::vector<Check> hull_membership(const VerifyOptions& o) {
  const std::string suite = "hull-membership";
  const LambdaFn lam = effective(o);
  const FunctionRule rule{&lam};
  constexpr int streams = 1000;
  constexpr int steps = 100;
  constexpr Eigen::Index dim = 5;

  double recon = 0, min_weight = std::numeric_limits<double>::infinity(), sum_err = 0, growth = -1;
  for (int s = 0; s < streams; ++s) {
    Rng rng(mix_seed(o.seed ^ 0x68756c6cULL, static_cast<std::uint64_t>(s)));
    const Vector drift = gaussian(rng, dim) * 0.5;
    DirectionState<double> state(true);
    std::vector<Vector> history;
    for (int t = 0; t < steps; ++t) {
      std::uniform_real_distribution<double> logscale(-1.5, 1.5);
      const Vector g = (drift + gaussian(rng, dim)) * std::exp(logscale(rng));
      const double prev = state.empty() ? std::numeric_limits<double>::infinity() : state.direction().norm();
      history.push_back(g);
      const auto step = update_direction(state, g, rule);
      growth = std::max(growth, step.d_norm - std::min(prev, g.norm()));
      const auto& w = state.weights();
      recon = std::max(recon, (reconstruct(w, history) - state.direction()).cwiseAbs().maxCoeff());
      double total = 0;
      for (double x : w) {
        min_weight = std::min(min_weight, x);
        total += x;
      }
      sum_err = std::max(sum_err, std::abs(total - 1.0));
    }
  }
  std::vector<Check> out;
  out.push_back(make(suite, "reconstruction", recon <= 1e-10, recon, 1e-10, "max-abs over 1000 streams x 100 steps"));
  out.push_back(make(suite, "weights-nonnegative", min_weight >= -1e-14, min_weight, -1e-14));
  out.push_back(make(suite, "weights-sum-to-one", sum_err <= 1e-12, sum_err, 1e-12));
  out.push_back(make(suite, "monotone-norm", growth <= 1e-12, growth, 1e-12));
  return out;
}

std::vector<Check> norm_rate(const VerifyOptions& o) {
  const std::string suite = "norm-rate";
  const LambdaFn lam = effective(o);
  const FunctionRule rule{&lam};
  constexpr double c_bound = 1.0;
  constexpr int streams = 100;
  constexpr long steps = 10000;
  constexpr Eigen::Index dim = 10;

  std::vector<Check> out;
  for (const double m : {0.1, 0.5}) {
    long violations = 0, late_violations = 0, rejected = 0;
    int bad_streams = 0;
    long first_t = 0;
    double first_norm = 0, first_bound = 0, worst_ratio = 0;
    for (int s = 0; s < streams; ++s) {
      Rng rng(mix_seed(o.seed ^ static_cast<std::uint64_t>(m * 1000), static_cast<std::uint64_t>(s)));
      DirectionState<double> state;
      bool bad = false;
      for (long t = 1; t <= steps; ++t) {
        // Rejection sampling of the angle condition on the resulting direction.
        DirectionState<double> trial = state;
        for (int attempt = 0;; ++attempt) {
          trial = state;
          const Vector g = in_ball(rng, dim, c_bound);
          const auto step = update_direction(trial, g, rule);
          if (step.d_norm == 0 || step.d.dot(g) >= m * step.d_norm * step.d_norm) break;
          ++rejected;
          if (attempt > 1000) throw std::runtime_error("norm-rate: rejection sampling stalled");
        }
        state = std::move(trial);
        const double norm = state.direction().norm();
        const double bound = c_bound / ((1.0 - m) * std::sqrt(static_cast<double>(t + 1)));
        worst_ratio = std::max(worst_ratio, norm / bound);
        if (norm > bound) {
          if (violations == 0) {
            first_t = t;
            first_norm = norm;
            first_bound = bound;
          }
          ++violations;
          if (t > 1) ++late_violations;
          bad = true;
        }
      }
      bad_streams += bad;
    }
    std::string detail = "violations=" + std::to_string(violations) + " in " + std::to_string(bad_streams) +
                         " streams; at t>1: " + std::to_string(late_violations) +
                         "; rejected draws=" + std::to_string(rejected) + "; max ||d_t||/bound=" + fmt(worst_ratio);
    if (violations > 0) {
      detail += "; first at t=" + std::to_string(first_t) + " ||d_t||=" + fmt(first_norm) + " bound=" + fmt(first_bound);
    }
    out.push_back(make(suite, "m=" + fmt(m), violations == 0, static_cast<double>(violations), 0.0, detail));
  }
  return out;
}

std::vector<Check> stationarity_certificate(const VerifyOptions& o) {
  const std::string suite = "stationarity-certificate";
  const LambdaFn lam = effective(o);
  const FunctionRule rule{&lam};
  constexpr int tuples = 100000;
  constexpr std::array<double, 3> etas{0.5, 1.0, 2.0};
  constexpr std::array<double, 2> epsilons{0.01, 0.1};
  constexpr std::array<Eigen::Index, 4> dims{2, 3, 5, 10};

  long applicable = 0, violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < tuples; ++k) {
    Rng rng(mix_seed(o.seed ^ 0x74686d32ULL, static_cast<std::uint64_t>(k)));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double eta = etas[static_cast<std::size_t>(k) % etas.size()];
    const double eps = epsilons[(static_cast<std::size_t>(k) / etas.size()) % epsilons.size()];
    const Eigen::Index n = dims[(static_cast<std::size_t>(k) / 6) % dims.size()];

    Vector dir = gaussian(rng, n);
    dir.normalize();
    const Vector d_prev = dir * eps * (0.5 + 4.5 * u(rng));
    Vector perp = gaussian(rng, n);
    perp -= perp.dot(dir) * dir;
    if (perp.norm() > 0) perp.normalize();
    const Vector g = dir * eps * (-0.5 + 3.5 * u(rng)) + perp * eps * (4.0 * u(rng));

    DirectionState<double> state;
    update_direction(state, d_prev);
    const auto step = update_direction(state, g, rule);
    const StoppingReport r = stopping_report(step, eps, eta);
    if (!r.certificate_applicable) continue;
    ++applicable;
    worst = std::max(worst, r.g_norm / r.certificate_bound);
    if (r.g_norm > r.certificate_bound) ++violations;
  }
  std::vector<Check> out;
  out.push_back(make(suite, "no-violations", violations == 0, static_cast<double>(violations), 0.0,
                     "applicable tuples=" + std::to_string(applicable) + " of " + std::to_string(tuples) +
                         "; max ||g||/bound=" + fmt(worst)));
  out.push_back(make(suite, "hypotheses-exercised", applicable >= 1000, static_cast<double>(applicable), 1000.0));

  const auto ex = stopping_report(0.05, 0.1, 0.5, true, 0.2, 0.3, 0.1, 1.0);
  const bool ex_ok = ex.certificate_applicable && std::abs(ex.certificate_bound - std::sqrt(2.0) * 0.1) <= 1e-15 &&
                     !stopping_report(0.5, 0.1, 0.5, true, 0.2, 0.3, 0.1, 1.0).certificate_applicable &&
                     !stopping_report(0.05, 0.1, 0.5, true, 0.2, -0.01, 0.1, 1.0).certificate_applicable;
  out.push_back(make(suite, "worked-examples", ex_ok, ex.certificate_bound, std::sqrt(2.0) * 0.1));
  return out;
}

std::vector<Check> p_lambda_suite(const VerifyOptions&) {
  const std::string suite = "p-lambda";
  constexpr int grid = 100000;
  constexpr double lo = -2.0, hi = 3.0;
  const double h = (hi - lo) / (grid - 1);
  std::vector<Check> out;
  for (const double eta : {0.1, 1.0, 10.0}) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int i = 0; i < grid; ++i) {
      const double v = p_lambda(lo + h * i, eta);
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    // Vertex of the parabola through the grid minimum and its neighbours;
    // exact for a quadratic, so it locates the minimiser below grid spacing.
    const int i = std::clamp(arg, 1, grid - 2);
    const double x0 = lo + h * (i - 1), x1 = lo + h * i, x2 = lo + h * (i + 1);
    const double f0 = p_lambda(x0, eta), f1 = p_lambda(x1, eta), f2 = p_lambda(x2, eta);
    const double vertex = x1 - 0.5 * h * (f2 - f0) / (f2 - 2.0 * f1 + f0);
    const double expected = eta / (1.0 + eta);
    const double grid_offset = std::abs(lo + h * arg - expected);
    out.push_back(make(suite, "min-nonnegative eta=" + fmt(eta), best >= -1e-12, best, -1e-12));
    out.push_back(make(suite, "argmin eta=" + fmt(eta), std::abs(vertex - expected) <= 1e-6 && grid_offset <= h,
                       std::abs(vertex - expected), 1e-6,
                       "grid argmin " + fmt(lo + h * arg) + ", refined " + fmt(vertex) + ", expected " + fmt(expected)));
  }
  const double e1 = std::abs(p_lambda(0.5, 1.0));
  const double e2 = std::abs(p_lambda(0.0, 2.0) - 2.0);
  const double e3 = std::abs(p_lambda(2.0 / 3.0, 2.0));
  const double worst = std::max({e1, e2, e3});
  out.push_back(make(suite, "worked-examples", worst <= 1e-12, worst, 1e-12));
  return out;
}

std::vector<Check> grad_check_suite(const VerifyOptions& o) {
  const std::string suite = "grad-check";
  constexpr int points = 20;
  constexpr double limit = 1e-4;
  std::vector<Check> out;

  auto check_objective = [&](const Objective& obj, const std::string& label, double spread) {
    double worst = 0;
    for (int p = 0; p < points; ++p) {
      Rng rng(mix_seed(o.seed ^ 0x67726164ULL, static_cast<std::uint64_t>(p)));
      const Vector theta = obj.initial_point() + gaussian(rng, static_cast<Eigen::Index>(obj.dimension())) * spread;
      const auto batch = draw_batch(obj.dataset_size(), 8, mix_seed(o.seed, 1000 + p));
      worst = std::max(worst, grad_check(obj, theta, batch, 1e-5));
    }
    out.push_back(make(suite, label, worst <= limit, worst, limit, std::to_string(points) + " seeded points"));
  };

  for (const auto name : synthetic_names()) {
    const auto obj = synthetic_objective(name, 10, o.seed);
    check_objective(*obj, std::string(name), name == "rosenbrock" ? 0.3 : 1.0);
  }

  std::string text;
  Rng rng(mix_seed(o.seed, 77));
  std::uniform_int_distribution<int> letter(0, 14);
  for (int i = 0; i < 600; ++i) text.push_back(static_cast<char>('a' + letter(rng)));
  BatchSpec spec{2, 6, o.seed};
  const auto lm = charlm_objective(build_corpus(text, 16), 1, 8, spec);
  check_objective(*lm, "charlm layers=1 hidden=8 vocab=" + std::to_string(lm->vocab_size()), 0.3);
  return out;
}

std::vector<Check> concentration(const VerifyOptions& o) {
  const std::string suite = "concentration";
  std::vector<Check> out;
  const std::size_t n43 = required_sample_size(0.01, 1.0, 8.0, 0.5);
  out.push_back(make(suite, "sample-size eps=0.01 M=1 kappa=8 delta=0.5", n43 == 43, static_cast<double>(n43), 43));

  // Monotonicity over a 10^4-point grid, comparing each point with its
  // neighbour along every axis.
  std::array<double, 10> eps{}, ms{}, kappas{}, deltas{};
  for (int i = 0; i < 10; ++i) {
    eps[i] = 0.005 + 0.09 * i;
    ms[i] = 0.25 * i * i;
    kappas[i] = 0.5 + 2.0 * i;
    deltas[i] = 0.1 + 0.15 * i;
  }
  long breaks = 0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c)
        for (int d = 0; d < 10; ++d) {
          const auto n = required_sample_size(eps[a], ms[b], kappas[c], deltas[d]);
          if (a + 1 < 10 && required_sample_size(eps[a + 1], ms[b], kappas[c], deltas[d]) > n) ++breaks;
          if (b + 1 < 10 && required_sample_size(eps[a], ms[b + 1], kappas[c], deltas[d]) < n) ++breaks;
          if (c + 1 < 10 && required_sample_size(eps[a], ms[b], kappas[c + 1], deltas[d]) > n) ++breaks;
          if (d + 1 < 10 && required_sample_size(eps[a], ms[b], kappas[c], deltas[d + 1]) > n) ++breaks;
        }
  out.push_back(make(suite, "sample-size-monotone", breaks == 0, static_cast<double>(breaks), 0, "10^4 grid points"));

  constexpr std::size_t trials = 10000;
  for (const double m : {0.5, 1.0, 5.0})
    for (const double delta : {0.25, 0.5, 1.0})
      for (const double e : {0.1, 0.01}) {
        const double cov = verify_concentration(m, 8.0, delta, e, trials, mix_seed(o.seed, 500));
        out.push_back(make(suite, "coverage M=" + fmt(m) + " delta=" + fmt(delta) + " eps=" + fmt(e),
                           cov >= 1.0 - e, cov, 1.0 - e,
                           "N=" + std::to_string(required_sample_size(e, m, 8.0, delta))));
      }
  const double weak = verify_concentration_with(1, 1.0, 0.2, 0.5, trials, mix_seed(o.seed, 501));
  out.push_back(make(suite, "single-sample-undercovers", weak < 0.99, weak, 0.99,
                     "N forced to 1 with tolerance 0.025 on Uniform[-1, 1]"));
  return out;
}

std::vector<Check> optimizer_reductions(const VerifyOptions& o) {
  const std::string suite = "optimizer-reductions";
  std::vector<Check> out;
  constexpr Eigen::Index dim = 10;
  constexpr int steps = 1000;

  {
    HyperParams h;
    h.lambda_wd = 0.0;
    OptimizerState<double> adam(OptimizerKind::adam, h), adamw(OptimizerKind::adamw, h);
    Rng rng(mix_seed(o.seed, 9));
    Vector a = gaussian(rng, dim), b = a;
    double worst = 0;
    for (int t = 0; t < steps; ++t) {
      const Vector g = gaussian(rng, dim);
      step_adam(adam, a, g);
      step_adamw(adamw, b, g);
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    out.push_back(make(suite, "adamw-equals-adam-without-decay", worst <= 1e-15, worst, 1e-15, "1000 steps"));
  }
  {
    HyperParams h;
    h.theta_momentum = 0.0;
    h.lambda_wd = 0.001;
    OptimizerState<double> polyak(OptimizerKind::polyak, h), sgd(OptimizerKind::sgd, h);
    Rng rng(mix_seed(o.seed, 10));
    Vector a = gaussian(rng, dim), b = a;
    double worst = 0;
    for (int t = 0; t < steps; ++t) {
      const Vector g = gaussian(rng, dim);
      step_polyak(polyak, a, g);
      step_sgd(sgd, b, g);
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    out.push_back(make(suite, "polyak-without-momentum-equals-sgd", worst == 0.0, worst, 0.0, "exact"));
  }
  {
    HyperParams h;
    OptimizerState<double> s(OptimizerKind::scsadamw, h);
    Vector theta = Vector::Zero(1);
    step_scsadamw(s, theta, Vector(Vector::Ones(1)));
    const double expected = -0.001 / (1.0 + 1e-8);
    const double err = std::abs(theta[0] - expected);
    out.push_back(make(suite, "scsadamw-first-step", err <= 1e-12, err, 1e-12, "theta_1=" + fmt(theta[0])));
  }
  {
    HyperParams h;
    h.fixed_lambda = 1.0;
    OptimizerState<double> s(OptimizerKind::scsadamw, h);
    Rng rng(mix_seed(o.seed, 11));
    Vector theta = gaussian(rng, dim);
    double worst = 0;
    for (int t = 0; t < steps; ++t) {
      const Vector g = gaussian(rng, dim);
      step_scsadamw(s, theta, g);
      worst = std::max(worst, (s.direction.direction() - g).cwiseAbs().maxCoeff());
    }
    out.push_back(make(suite, "fixed-lambda-one-is-subgradient", worst == 0.0, worst, 0.0));
  }
  {
    // Decoupled decay leaves the second moment untouched.
    HyperParams with, without;
    with.lambda_wd = 0.01;
    OptimizerState<double> a(OptimizerKind::scsadamw, with), b(OptimizerKind::scsadamw, without);
    OptimizerState<double> c(OptimizerKind::adamw, with), d(OptimizerKind::adamw, without);
    Rng rng(mix_seed(o.seed, 12));
    Vector ta = gaussian(rng, dim), tb = ta, tc = ta, td = ta;
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
      const Vector g = gaussian(rng, dim);
      step_scsadamw(a, ta, g);
      step_scsadamw(b, tb, g);
      step_adamw(c, tc, g);
      step_adamw(d, td, g);
      worst = std::max({worst, (a.v - b.v).cwiseAbs().maxCoeff(), (c.v - d.v).cwiseAbs().maxCoeff()});
    }
    out.push_back(make(suite, "decay-leaves-second-moment", worst == 0.0, worst, 0.0));
  }
  {
    // Heavy-ball displacement under a constant gradient grows as eta * Theta_t.
    HyperParams h;
    h.theta_momentum = 0.9;
    OptimizerState<double> s(OptimizerKind::polyak, h);
    Vector theta = Vector::Zero(1);
    double worst = 0;
    for (int t = 1; t <= 50; ++t) {
      const double before = theta[0];
      step_polyak(s, theta, Vector(Vector::Ones(1)));
      const double big_theta = (1.0 - std::pow(0.9, t)) / 0.1;
      worst = std::max(worst, std::abs((before - theta[0]) - h.eta * big_theta));
    }
    out.push_back(make(suite, "polyak-geometric-weights", worst <= 1e-15, worst, 1e-15));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"direction-optimality", "hull-membership", "norm-rate",
                                              "stationarity-certificate", "p-lambda",        "grad-check",
                                              "concentration",        "optimizer-reductions"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& options) {
  if (suite == "direction-optimality") return direction_optimality(options);
  if (suite == "hull-membership") return hull_membership(options);
  if (suite == "norm-rate") return norm_rate(options);
  if (suite == "stationarity-certificate") return stationarity_certificate(options);
  if (suite == "p-lambda") return p_lambda_suite(options);
  if (suite == "grad-check") return grad_check_suite(options);
  if (suite == "concentration") return concentration(options);
  if (suite == "optimizer-reductions") return optimizer_reductions(options);
  throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

LambdaFn fault_lambda(const std::string& name) {
  if (name == "unclamped") {
    return [](const Vector& d, const Vector& g) {
      const double denom = (d - g).squaredNorm();
      if (denom < 1e-300) return 1.0;
      return (d.squaredNorm() - d.dot(g)) / denom;
    };
  }
  if (name == "swapped") {
    return [](const Vector& d, const Vector& g) { return 1.0 - lambda_star(d, g); };
  }
  throw std::invalid_argument("unknown fault '" + name + "' (expected unclamped or swapped)");
}

std::string to_json_line(const Check& c) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  const nlohmann::json j = {{"suite", c.suite}, {"check", c.name},   {"passed", c.passed},
                            {"value", num(c.value)}, {"limit", num(c.limit)}, {"detail", c.detail}};
  return j.dump();
}

}  // namespace scs::bench
