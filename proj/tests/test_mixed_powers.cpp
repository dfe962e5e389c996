#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "polycanon/mixed_powers.hpp"

using namespace polycanon;

namespace {

factor_system binomial_system(long long n) {
  factor_system sys;
  sys.factors.push_back(binomial_factor(static_cast<int>(n) + 2));
  sys.weights.push_back(2 * n);
  sys.target_power = n;
  return sys;
}

factor_system exp_system(long long n, long long m) {
  factor_system sys;
  sys.factors.push_back(exp_series(static_cast<int>(n) + 4));
  sys.weights.push_back(m);
  sys.target_power = n;
  return sys;
}

}  // namespace

TEST_CASE("critical point of the balance equation") {
  SECTION("single binomial factor has the closed form x = 1 at t0 = 1/3") {
    factor_system sys = binomial_system(10);
    direction dir{1.0 / 3.0, {2.0 / 3.0}};
    const critical_point cp = find_critical_point(sys, dir, 0.7);
    CHECK(cp.x == Approx(1.0).epsilon(1e-12));
    CHECK(cp.residual <= 1e-10);
  }

  SECTION("exponential factor: x f'/f = x, so x = t0/t1") {
    factor_system sys = exp_system(20, 20);
    direction dir{0.5, {0.5}};
    const critical_point cp = find_critical_point(sys, dir, 2.0);
    CHECK(cp.x == Approx(1.0).epsilon(1e-12));
  }

  SECTION("degenerate direction t0 = 0 is reported") {
    factor_system sys = binomial_system(4);
    direction dir{0.0, {1.0}};
    CHECK_THROWS_AS(find_critical_point(sys, dir, 1.0), std::domain_error);
  }

  SECTION("direction outside the admissible cone") {
    // x/(1+x) < 1 for all x, so t0/t1 = 1 is unreachable
    factor_system sys = binomial_system(4);
    direction dir{0.5, {0.5}};
    CHECK_THROWS_AS(find_critical_point(sys, dir, 1.0), std::domain_error);
  }
}

TEST_CASE("strict minimality on the critical circle") {
  SECTION("binomial factor is strictly minimal") {
    factor_system sys = binomial_system(8);
    const critical_point cp = find_critical_point(sys, direction{1.0 / 3.0, {2.0 / 3.0}}, 1.0);
    const auto rep = check_minimality(sys, cp, 1024);
    CHECK(rep.strict);
    CHECK(rep.margin > 1e-7);
  }

  SECTION("even factor ties at the antipode") {
    factor_system sys;
    uni_series f(6);
    f.set_coeff(0, 1.0);
    f.set_coeff(2, 1.0);  // 1 + z^2
    sys.factors.push_back(f);
    sys.weights.push_back(4);
    sys.target_power = 2;
    critical_point cp;
    cp.x = 0.5;
    cp.dir = direction{1.0 / 3.0, {2.0 / 3.0}};
    const auto rep = check_minimality(sys, cp, 1024);
    CHECK_FALSE(rep.strict);
    CHECK(std::abs(rep.margin) < 1e-12);
  }

  SECTION("exponential factor is strictly minimal") {
    factor_system sys = exp_system(10, 10);
    const critical_point cp = find_critical_point(sys, direction{0.5, {0.5}}, 1.0);
    CHECK(check_minimality(sys, cp, 512).strict);
  }
}

TEST_CASE("phase function") {
  factor_system sys = exp_system(12, 12);
  const critical_point cp = find_critical_point(sys, direction{0.5, {0.5}}, 1.0);

  SECTION("vanishes identically at the origin") {
    CHECK(phase_value(sys, cp, 0.0) == cplx{0.0, 0.0});
  }

  SECTION("closed form for the exponential factor") {
    // F(theta) = (i theta + 1 - e^{i theta}) / 2
    for (double theta : {0.3, -0.7, 1.9, 3.0}) {
      const cplx expect = (cplx{0.0, 1.0} * theta + 1.0 - std::polar(1.0, theta)) / 2.0;
      CHECK(std::abs(phase_value(sys, cp, theta) - expect) < 1e-12);
    }
  }

  SECTION("second derivative from the series") {
    CHECK(phase_curvature(sys, cp).real() == Approx(0.5).epsilon(1e-12));
  }

  SECTION("first derivative vanishes by finite differences") {
    const double h = 1e-4;
    const cplx fd = (phase_value(sys, cp, h) - phase_value(sys, cp, -h)) / (2.0 * h);
    CHECK(std::abs(fd) < 1e-8);
  }

  SECTION("binomial curvature 1/6 with finite-difference cross check") {
    factor_system bs = binomial_system(8);
    const critical_point bcp = find_critical_point(bs, direction{1.0 / 3.0, {2.0 / 3.0}}, 1.0);
    CHECK(phase_curvature(bs, bcp).real() == Approx(1.0 / 6.0).epsilon(1e-12));
    const double h = 1e-3;
    const cplx fd =
        (phase_value(bs, bcp, h) - 2.0 * phase_value(bs, bcp, 0.0) + phase_value(bs, bcp, -h)) /
        (h * h);
    CHECK(fd.real() == Approx(1.0 / 6.0).epsilon(1e-5));
  }

  SECTION("real part is nonnegative at quadrature nodes when minimal") {
    factor_system bs = binomial_system(10);
    const critical_point bcp = find_critical_point(bs, direction{1.0 / 3.0, {2.0 / 3.0}}, 1.0);
    for (int j = 0; j < 128; ++j) {
      const double theta = -pi + 2.0 * pi * j / 128.0 + pi / 128.0;
      REQUIRE(phase_value(bs, bcp, theta).real() >= -1e-12);
    }
  }
}

TEST_CASE("exact coefficients") {
  SECTION("[z^2] (1+z)^4 = 6") {
    factor_system sys;
    sys.factors.push_back(binomial_factor(4));
    sys.weights.push_back(4);
    sys.target_power = 2;
    CHECK(exact_coefficient(sys).real() == Approx(6.0).epsilon(1e-14));
  }

  SECTION("constant coefficient is the product of constant terms") {
    factor_system sys;
    sys.factors.push_back(uni_series(2, {cplx{2.0, 0.0}, cplx{1.0, 0.0}}));
    sys.factors.push_back(uni_series(2, {cplx{3.0, 0.0}, cplx{-1.0, 0.0}}));
    sys.weights = {3, 2};
    sys.target_power = 0;
    CHECK(exact_coefficient(sys).real() == Approx(8.0 * 9.0).epsilon(1e-14));
  }

  SECTION("[z^10] (1+z)^20 against the binomial oracle") {
    factor_system sys = binomial_system(10);
    CHECK(exact_coefficient(sys).real() == Approx(oracle::binomial(20, 10)).epsilon(1e-12));
  }

  SECTION("truncation shortfall is reported") {
    factor_system sys;
    sys.factors.push_back(binomial_factor(3));
    sys.weights.push_back(8);
    sys.target_power = 5;
    CHECK_THROWS_AS(exact_coefficient(sys), std::domain_error);
  }
}

TEST_CASE("saddle estimates") {
  SECTION("binomial coefficient at n = 10") {
    factor_system sys = binomial_system(10);
    const auto est = estimate_coefficient(sys);
    const double exact = oracle::binomial(20, 10);
    CHECK(std::abs(est.estimate / exact - 1.0) < 5e-3);
    CHECK(est.gaussian_leading == Approx(std::pow(4.0, 10) / std::sqrt(10.0 * pi)).epsilon(1e-10));
    CHECK(std::abs(est.gaussian_leading / exact - 1.0) < 0.014);
    CHECK(est.imag_ratio < 1e-10);
  }

  SECTION("degree-one polynomial is recovered exactly by the contour") {
    factor_system sys;
    sys.factors.push_back(binomial_factor(1));
    sys.weights.push_back(1);
    sys.target_power = 1;
    const cplx v = contour_coefficient(sys, 1.0, 256);
    CHECK(std::abs(v - 1.0) < 1e-10);
  }

  SECTION("exponential mixed power at n = m = 20") {
    factor_system sys = exp_system(20, 20);
    const auto est = estimate_coefficient(sys);
    const double exact = std::pow(20.0, 20) / oracle::factorial(20);
    CHECK(std::abs(est.estimate / exact - 1.0) < 1e-2);
  }

  SECTION("conjugate symmetry keeps the estimate real") {
    factor_system sys = binomial_system(16);
    const auto est = estimate_coefficient(sys);
    CHECK(est.imag_ratio <= 1e-10);
  }

  SECTION("estimate refuses a non-minimal point") {
    factor_system sys;
    uni_series f(10);
    f.set_coeff(0, 1.0);
    f.set_coeff(2, 1.0);
    sys.factors.push_back(f);
    sys.weights.push_back(8);
    sys.target_power = 4;
    CHECK_THROWS_AS(estimate_coefficient(sys), std::domain_error);
  }
}

TEST_CASE("gaussian error shrinks like the inverse square root") {
  double prev = std::numeric_limits<double>::infinity();
  for (long long n : {10, 20, 40, 80}) {
    factor_system sys = binomial_system(n);
    const auto est = estimate_coefficient(sys);
    const double exact = exact_coefficient(sys).real();
    const double err = std::abs(est.gaussian_leading / exact - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 2e-3);
}

TEST_CASE("critical point varies continuously over the direction grid") {
  factor_system sys;
  sys.factors.push_back(exp_series(40));  // high truncation: x ranges up to 4
  sys.weights.push_back(6);
  sys.target_power = 6;
  double prev_x = -1.0;
  double max_jump = 0.0;
  const int grid = 25;
  for (int g = 0; g < grid; ++g) {
    const double t0 = 0.2 + 0.6 * g / (grid - 1);
    direction dir{t0, {1.0 - t0}};
    const critical_point cp = find_critical_point(sys, dir, 1.0);
    // x = t0/(1 - t0) in closed form for the exponential factor
    CHECK(cp.x == Approx(t0 / (1.0 - t0)).epsilon(1e-10));
    if (prev_x > 0.0) max_jump = std::max(max_jump, std::abs(cp.x - prev_x));
    prev_x = cp.x;
  }
  CHECK(max_jump < 0.75);
}
