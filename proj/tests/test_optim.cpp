#include <doctest.h>

#include "scs/optim.hpp"
#include "scs/problems/synthetic.hpp"
#include "scs/run.hpp"

#include <cmath>
#include <random>

using namespace scs;

namespace {

Vector scalar(double x) { return Vector::Constant(1, x); }

Vector gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> z;
  Vector v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

// 1/2 ||x||^2 as a one-example dataset.
std::unique_ptr<Quadratic> half_norm(Eigen::Index n) {
  return std::make_unique<Quadratic>(RowMatrix::Identity(n, n), Vector::Zero(n), RowMatrix::Zero(1, n));
}

// Gradient x; throws on the third evaluation.
class Flaky final : public Objective {
 public:
  std::string name() const override { return "flaky"; }
  std::size_t dimension() const override { return 2; }
  std::size_t dataset_size() const override { return 1; }
  Smoothness smoothness() const override { return Smoothness::smooth; }
  Vector initial_point() const override { return Vector::Ones(2); }
  Evaluation evaluate(const Vector& theta, std::span<const std::size_t>) const override {
    if (++calls_ == 3) throw std::runtime_error("disk on fire");
    return {0.5 * theta.squaredNorm(), theta};
  }

 private:
  mutable int calls_ = 0;
};

}  // namespace

TEST_SUITE("optim") {
  TEST_CASE("optimizer names round-trip") {
    for (auto k : {OptimizerKind::sgd, OptimizerKind::polyak, OptimizerKind::adam, OptimizerKind::adamw,
                   OptimizerKind::scsadamw}) {
      CHECK(parse_optimizer(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_optimizer("lion"), std::invalid_argument);
  }

  TEST_CASE("hyperparameter validation") {
    HyperParams h;
    h.eta = -1;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h = {};
    h.beta2 = 1.0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h = {};
    h.zeta = 0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
    h = {};
    h.restart_period = 0;
    CHECK_THROWS_AS(h.validate(), std::invalid_argument);
  }

  TEST_CASE("scsadamw first step by hand") {
    OptimizerState<double> s(OptimizerKind::scsadamw, HyperParams{});
    Vector theta = scalar(0.0);
    const StepInfo info = step_scsadamw(s, theta, scalar(1.0));
    // d1 = 1, v1 = 0.001, v^1 = 1.
    CHECK(std::abs(theta[0] - (-0.001 / (1.0 + 1e-8))) <= 1e-12);
    CHECK(std::abs(theta[0] - (-0.000999999990)) <= 1e-12);
    CHECK(info.lambda_star == 1.0);
    CHECK(s.t == 1);
    CHECK(std::abs(s.v[0] - 0.001) <= 1e-18);
  }

  TEST_CASE("scsadamw second step applies the direction bias correction") {
    OptimizerState<double> s(OptimizerKind::scsadamw, HyperParams{});
    Vector theta = Vector::Zero(2);
    step_scsadamw(s, theta, Vector{{1.0, 0.0}});
    const Vector before = theta;
    const StepInfo info = step_scsadamw(s, theta, Vector{{0.0, 1.0}});
    CHECK(info.lambda_star == 0.5);
    CHECK(s.direction.direction() == Vector{{0.5, 0.5}});
    // d^2 = d2 / (1 - 0.5^2) = (2/3, 2/3); v2 = (0.999 * 0.001, 0.001); v^2 = v2 / (1 - 0.999^2).
    const double c2 = 1.0 - 0.999 * 0.999;
    const double v_hat[] = {0.999 * 0.001 / c2, 0.001 / c2};
    for (int i = 0; i < 2; ++i) {
      const double expected = -0.001 * (2.0 / 3.0) / (std::sqrt(v_hat[i]) + 1e-8);
      CHECK(std::abs((theta[i] - before[i]) - expected) <= 1e-15);
    }
  }

  TEST_CASE("decoupled decay alone") {
    HyperParams h;
    h.lambda_wd = 0.001;
    OptimizerState<double> s(OptimizerKind::scsadamw, h);
    Vector theta = scalar(10.0);
    step_scsadamw(s, theta, scalar(0.0));
    CHECK(theta[0] == doctest::Approx(9.99999).epsilon(1e-15));

    OptimizerState<double> w(OptimizerKind::adamw, h);
    Vector t2 = scalar(1.0);
    step_adamw(w, t2, scalar(0.0));
    CHECK(t2[0] == 1.0 - 0.001 * 0.001);
  }

  TEST_CASE("adam examples") {
    OptimizerState<double> s(OptimizerKind::adam, HyperParams{});
    Vector theta = scalar(0.0);
    step_adam(s, theta, scalar(1.0));
    CHECK(theta[0] == doctest::Approx(-0.001).epsilon(1e-7));

    OptimizerState<double> z(OptimizerKind::adam, HyperParams{});
    Vector still = scalar(2.0);
    for (int i = 0; i < 100; ++i) step_adam(z, still, scalar(0.0));
    CHECK(still[0] == 2.0);

    HyperParams h;
    h.lambda_wd = 0.001;
    OptimizerState<double> c(OptimizerKind::adam, h);
    Vector coupled = scalar(1.0);
    step_adam(c, coupled, scalar(0.0));
    CHECK(c.m[0] == doctest::Approx(0.1 * 0.001));
    CHECK(coupled[0] < 1.0);
  }

  TEST_CASE("adamw matches adam without decay") {
    std::mt19937_64 rng(1);
    OptimizerState<double> a(OptimizerKind::adam, HyperParams{}), b(OptimizerKind::adamw, HyperParams{});
    Vector ta = gaussian(rng, 7), tb = ta;
    for (int t = 0; t < 1000; ++t) {
      const Vector g = gaussian(rng, 7);
      step_adam(a, ta, g);
      step_adamw(b, tb, g);
    }
    CHECK((ta - tb).cwiseAbs().maxCoeff() <= 1e-15);
  }

  TEST_CASE("polyak") {
    HyperParams h;
    h.theta_momentum = 0.9;
    OptimizerState<double> p(OptimizerKind::polyak, h);
    Vector theta = scalar(0.0);
    step_polyak(p, theta, scalar(2.0));
    CHECK(theta[0] == -0.002);  // first step has no momentum

    for (int t = 2; t <= 30; ++t) {
      const double before = theta[0];
      step_polyak(p, theta, scalar(2.0));
      const double big_theta = (1 - std::pow(0.9, t)) / 0.1;
      CHECK(std::abs((before - theta[0]) - 0.001 * 2.0 * big_theta) <= 1e-15);
    }

    // Weights theta^{t-i} / Theta_t form a convex combination.
    for (int t = 1; t <= 200; ++t) {
      const double big_theta = (1 - std::pow(0.9, t)) / 0.1;
      double total = 0;
      for (int i = 1; i <= t; ++i) total += std::pow(0.9, t - i) / big_theta;
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("polyak without momentum is sgd") {
    HyperParams h;
    h.theta_momentum = 0.0;
    std::mt19937_64 rng(3);
    OptimizerState<double> p(OptimizerKind::polyak, h), s(OptimizerKind::sgd, h);
    Vector a = gaussian(rng, 4), b = a;
    for (int t = 0; t < 500; ++t) {
      const Vector g = gaussian(rng, 4);
      step_polyak(p, a, g);
      step_sgd(s, b, g);
      CHECK((a.array() == b.array()).all());
    }
  }

  TEST_CASE("non-finite gradient is rejected with the step index") {
    OptimizerState<double> s(OptimizerKind::scsadamw, HyperParams{});
    Vector theta = scalar(1.0);
    step_scsadamw(s, theta, scalar(0.5));
    const Vector v_before = s.v;
    const Vector theta_before = theta;
    try {
      step(s, theta, scalar(std::nan("")));
      FAIL("expected rejection");
    } catch (const NumericalError& e) {
      CHECK(std::string(e.what()).find("step 2") != std::string::npos);
    }
    CHECK(s.t == 1);
    CHECK(s.v == v_before);
    CHECK(theta == theta_before);
  }

  TEST_CASE("second moment stays non-negative and step count advances by one") {
    std::mt19937_64 rng(6);
    for (auto kind : {OptimizerKind::adam, OptimizerKind::adamw, OptimizerKind::scsadamw}) {
      OptimizerState<double> s(kind, HyperParams{});
      Vector theta = gaussian(rng, 5);
      for (long t = 1; t <= 50; ++t) {
        step(s, theta, gaussian(rng, 5));
        CHECK(s.t == t);
        CHECK((s.v.array() >= 0).all());
      }
    }
  }

  TEST_CASE("scsadamw step is bounded by the denominator floor") {
    std::mt19937_64 rng(7);
    OptimizerState<double> s(OptimizerKind::scsadamw, HyperParams{});
    Vector theta = gaussian(rng, 6);
    for (int t = 1; t <= 200; ++t) {
      const Vector before = theta;
      const StepInfo info = step_scsadamw(s, theta, gaussian(rng, 6));
      const bool skip = t == 1 || info.lambda_star >= 1 - kLambdaSkipTolerance;
      const double scale = skip ? 1.0 : 1.0 / (1.0 - std::pow(info.lambda_star, t));
      const Vector d_hat = s.direction.direction() * scale;
      for (Eigen::Index i = 0; i < 6; ++i) {
        CHECK(std::abs(theta[i] - before[i]) <= 0.001 * std::abs(d_hat[i]) / 1e-8 * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("restart period resets the direction") {
    HyperParams h;
    h.restart_period = 3;
    OptimizerState<double> s(OptimizerKind::scsadamw, h);
    Vector theta = Vector::Zero(2);
    step(s, theta, Vector{{1.0, 0.0}});
    step(s, theta, Vector{{0.0, 1.0}});
    step(s, theta, Vector{{1.0, 1.0}});
    const StepInfo info = step(s, theta, Vector{{-3.0, 2.0}});  // t = 4 = 1 + period
    CHECK(info.lambda_star == 1.0);
    CHECK(s.direction.direction() == Vector{{-3.0, 2.0}});
  }

  TEST_CASE("run converges on half squared norm") {
    const auto obj = half_norm(2);
    HyperParams h;
    h.epsilon_stop = 1e-6;
    OptimizerState<double> s(OptimizerKind::scsadamw, h);
    SamplerConfig sc;
    sc.batch = 1;
    Sampler sampler(sc, obj->dataset_size(), 1);
    const RunResult r = run_until_stopped(*obj, Vector{{3.0, -4.0}}, s, 100000, sampler);
    CHECK(r.reason == StopReason::converged);
    CHECK(r.records.back().d_norm <= 1e-6);
    CHECK(r.theta.norm() <= 1e-3);
    for (std::size_t i = 1; i < r.records.size(); ++i) CHECK(r.records[i].t == r.records[i - 1].t + 1);
  }

  TEST_CASE("run edge cases") {
    const auto obj = half_norm(2);
    OptimizerState<double> s(OptimizerKind::scsadamw, HyperParams{});
    Sampler sampler(SamplerConfig{}, 1, 1);
    CHECK_THROWS_AS(run_until_stopped(*obj, Vector::Zero(2), s, 0, sampler), std::invalid_argument);

    const RunResult still = run_until_stopped(*obj, Vector::Zero(2), s, 100, sampler);
    CHECK(still.reason == StopReason::converged);
    CHECK(still.records.size() == 1);
    CHECK(still.records[0].d_norm == 0.0);

    Flaky flaky;
    OptimizerState<double> a(OptimizerKind::adam, HyperParams{});
    const RunResult broken = run_until_stopped(flaky, flaky.initial_point(), a, 10, sampler);
    CHECK(broken.reason == StopReason::evaluation_error);
    CHECK(broken.records.size() == 2);
    CHECK(broken.message.find("step 3") != std::string::npos);
  }
}
