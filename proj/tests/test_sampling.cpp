#include <doctest.h>

#include "scs/sampling.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <random>

using namespace scs;

TEST_SUITE("sampling") {
  TEST_CASE("sample size arithmetic") {
    // -8 ln(0.005) = 42.3866; times (1 + 1)^2 / (64 * 0.5^4) = 1 -> 43
    CHECK(required_sample_size(0.01, 1.0, 8.0, 0.5) == 43);
    CHECK(required_sample_size(0.01, 1.0, 8.0, 1.0) == 3);
    CHECK(required_sample_size(0.5, 0.0, 1e6, 1.0) == 1);
    CHECK_THROWS_AS(required_sample_size(0.0, 1, 8, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(required_sample_size(1.0, 1, 8, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(required_sample_size(0.1, -1, 8, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(required_sample_size(0.1, 1, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(required_sample_size(0.1, 1, 8, 0), std::invalid_argument);
  }

  TEST_CASE("sample size matches the formula") {
    for (double e : {0.3, 0.05, 0.001})
      for (double m : {0.0, 2.0, 7.5})
        for (double d : {0.3, 0.9}) {
          const double raw = -8.0 * std::log(e / 2.0) * (m + 1) * (m + 1) / (4.0 * 4.0 * std::pow(d, 4));
          CHECK(required_sample_size(e, m, 4.0, d) == std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw))));
        }
  }

  TEST_CASE("sample size is monotone on a 10^4 grid") {
    auto axis = [](double lo, double hi, int i) { return lo + (hi - lo) * i / 9.0; };
    int breaks = 0;
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b)
        for (int c = 0; c < 10; ++c)
          for (int d = 0; d < 10; ++d) {
            const double e = axis(0.001, 0.9, a), m = axis(0, 10, b), k = axis(0.1, 20, c), dl = axis(0.05, 2, d);
            const auto n = required_sample_size(e, m, k, dl);
            if (a < 9 && required_sample_size(axis(0.001, 0.9, a + 1), m, k, dl) > n) ++breaks;
            if (b < 9 && required_sample_size(e, axis(0, 10, b + 1), k, dl) < n) ++breaks;
            if (c < 9 && required_sample_size(e, m, axis(0.1, 20, c + 1), dl) > n) ++breaks;
            if (d < 9 && required_sample_size(e, m, k, axis(0.05, 2, d + 1)) > n) ++breaks;
          }
    CHECK(breaks == 0);
  }

  TEST_CASE("draw_batch basics") {
    CHECK_THROWS_AS(draw_batch(0, 3, 1), std::invalid_argument);
    CHECK(draw_batch(50, 50, 9) == draw_batch(50, 50, 9));
    const auto one = draw_batch(7, 1, 3);
    REQUIRE(one.size() == 1);
    CHECK(one[0] < 7);
  }

  TEST_CASE("draw_batch is uniform by chi-square") {
    const auto draws = draw_batch(100, 1000000, 2024);
    std::vector<double> counts(100, 0.0);
    for (auto i : draws) counts[i] += 1;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
    // Upper 0.001 quantile of chi-square with 99 degrees of freedom.
    CHECK(chi2 < 148.23);
  }

  TEST_CASE("estimate updates") {
    SamplePlan plan = make_plan(0.1, 8.0, 1.0, 0.1);
    plan = update_estimates(plan, 3.2, 0.0, 0.0);
    CHECK(plan.m_bound == 3.2);
    const double before = plan.lipschitz_est;
    plan = update_estimates(plan, -1.0, 0.0, 5.0);
    CHECK(plan.lipschitz_est == before);
    CHECK(plan.m_bound == 3.2);
  }

  TEST_CASE("lipschitz estimate of a 5-Lipschitz function") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> z;
    const Eigen::Vector2d u = Eigen::Vector2d(0.6, 0.8);
    auto f = [&](const Eigen::Vector2d& x) { return 5.0 * u.dot(x); };
    SamplePlan plan = make_plan(0.1, 1e6, 1.0, 0.1);
    Eigen::Vector2d x(z(rng), z(rng));
    for (int i = 0; i < 1000; ++i) {
      const Eigen::Vector2d y(z(rng), z(rng));
      plan = update_estimates(plan, f(y), (y - x).norm(), f(y) - f(x));
      CHECK(plan.lipschitz_est <= 5.0 + 1e-6);
      x = y;
    }
    CHECK(plan.lipschitz_est >= 4.0);
  }

  TEST_CASE("kappa hypothesis") {
    CHECK_THROWS_AS(make_plan(0.1, 8.0, 1.0, 0.1, 0.0, 0.2), std::invalid_argument);  // 4 * 0.2 / 0.1 = 8
    SamplePlan plan = make_plan(0.1, 8.0, 1.0, 0.1);
    plan = update_estimates(plan, 1.0, 1.0, 0.3);
    CHECK_FALSE(plan.kappa_ok);
  }

  TEST_CASE("concentration coverage") {
    const double cov = verify_concentration(1.0, 8.0, 0.5, 0.01, 10000, 5);
    CHECK(cov >= 0.99);
    CHECK(cov <= 1.0);
    const double weak = verify_concentration_with(1, 1.0, 0.1, 0.5, 10000, 5);
    CHECK(weak >= 0.0);
    CHECK(weak < 0.9);
    CHECK_THROWS(verify_concentration(1.0, 8.0, 0.5, 0.01, 99, 5));
  }

  TEST_CASE("coverage holds on the full grid") {
    for (double m : {0.5, 1.0, 5.0})
      for (double d : {0.25, 0.5, 1.0})
        for (double e : {0.1, 0.01}) CHECK(verify_concentration(m, 8.0, d, e, 10000, 77) >= 1.0 - e);
  }

  TEST_CASE("fixed mode keeps the batch size") {
    SamplerConfig c;
    c.batch = 12;
    Sampler s(c, 1000, 3);
    for (long t = 1; t <= 20; ++t) {
      CHECK(s.next(t).indices.size() == 12);
      s.observe(5.0, 1.0, 100.0);
      CHECK(s.plan().n_t == 12);
    }
  }

  TEST_CASE("adaptive mode sizes, caps and decays") {
    SamplerConfig c;
    c.adaptive = true;
    c.eps_conf = 0.01;
    c.kappa = 8.0;
    c.delta0 = 0.5;
    c.delta_min = 0.1;
    c.delta_decay = 0.5;
    Sampler s(c, 10000, 3);
    const Draw first = s.next(1);
    CHECK(first.indices.size() == required_sample_size(0.01, 0.0, 8.0, 0.5));
    CHECK_FALSE(first.capped);
    CHECK(s.plan().delta_t == 0.25);
    s.observe(1.0, 0.0, 0.0);
    s.next(2);
    s.next(3);
    CHECK(s.plan().delta_t == 0.1);  // floored at delta_min
    const Draw late = s.next(4);
    CHECK(late.capped);
    CHECK(late.indices.size() == 10000);
  }
}
