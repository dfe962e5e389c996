#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "polycanon/circle.hpp"
#include "polycanon/multi_series.hpp"
#include "polycanon/poly.hpp"
#include "polycanon/random_gen.hpp"
#include "polycanon/uni_series.hpp"

using namespace polycanon;

namespace {

uni_series from_vec(int trunc, std::vector<cplx> c) { return uni_series(trunc, std::move(c)); }

}  // namespace

TEST_CASE("series arithmetic on the worked examples") {
  SECTION("difference of squares") {
    const uni_series a = from_vec(2, {1.0, 1.0});
    const uni_series b = from_vec(2, {1.0, -1.0});
    const uni_series p = a * b;
    CHECK(p.coeff(0) == cplx{1.0, 0.0});
    CHECK(p.coeff(1) == cplx{0.0, 0.0});
    CHECK(p.coeff(2) == cplx{-1.0, 0.0});
  }

  SECTION("additive identity") {
    std::mt19937_64 rng(11);
    const uni_series f = random_uni_series(rng, 9);
    CHECK(max_deviation(f + uni_series(9), f) == 0.0);
  }

  SECTION("(1 + t1 + t2)^2 expanded") {
    multi_series f(2, 2);
    f.set_coeff({0, 0}, 1.0);
    f.set_coeff({1, 0}, 1.0);
    f.set_coeff({0, 1}, 1.0);
    const multi_series sq = f * f;
    CHECK(sq.coeff({0, 0}) == cplx{1.0, 0.0});
    CHECK(sq.coeff({1, 0}) == cplx{2.0, 0.0});
    CHECK(sq.coeff({0, 1}) == cplx{2.0, 0.0});
    CHECK(sq.coeff({2, 0}) == cplx{1.0, 0.0});
    CHECK(sq.coeff({1, 1}) == cplx{2.0, 0.0});
    CHECK(sq.coeff({0, 2}) == cplx{1.0, 0.0});
  }

  SECTION("dimension mismatch rejected") {
    CHECK_THROWS_AS(multi_series(2, 3) * multi_series(3, 3), std::invalid_argument);
  }
}

TEST_CASE("series reciprocal") {
  SECTION("geometric series") {
    const uni_series g = from_vec(4, {1.0, -1.0}).reciprocal();
    for (int n = 0; n <= 4; ++n) CHECK(g.coeff(n) == cplx{1.0, 0.0});
  }

  SECTION("reciprocal of one") {
    const uni_series g = uni_series::constant(5, 1.0).reciprocal();
    CHECK(max_deviation(g, uni_series::constant(5, 1.0)) == 0.0);
  }

  SECTION("1/(1+z+z^2) against the convolution oracle") {
    const std::vector<cplx> f{1.0, 1.0, 1.0};
    const std::vector<cplx> expect = oracle::recip(f, 4);
    const uni_series g = from_vec(4, {1.0, 1.0, 1.0}).reciprocal();
    // frozen oracle values: 1 - z + z^3 - z^4
    CHECK(expect[1] == cplx{-1.0, 0.0});
    CHECK(expect[2] == cplx{0.0, 0.0});
    CHECK(expect[3] == cplx{1.0, 0.0});
    for (int n = 0; n <= 4; ++n) {
      CHECK(std::abs(g.coeff(n) - expect[static_cast<std::size_t>(n)]) < 1e-15);
    }
  }

  SECTION("vanishing constant term rejected") {
    CHECK_THROWS_AS(uni_series(3).reciprocal(), std::domain_error);
  }
}

TEST_CASE("series roots") {
  SECTION("perfect square") {
    const uni_series r = from_vec(4, {1.0, 2.0, 1.0}).nth_root(2, 0);
    CHECK(std::abs(r.coeff(0) - 1.0) < 1e-14);
    CHECK(std::abs(r.coeff(1) - 1.0) < 1e-14);
    CHECK(std::abs(r.coeff(2)) < 1e-14);
  }

  SECTION("cube root of unity on branch 1") {
    const uni_series r = uni_series::constant(2, 1.0).nth_root(3, 1);
    const cplx expect = std::polar(1.0, 2.0 * pi / 3.0);
    CHECK(std::abs(r.coeff(0) - expect) < 1e-15);
  }

  SECTION("(1+z)^(1/2) against the binomial oracle") {
    const std::vector<cplx> expect = oracle::sqrt_binomial(3);
    CHECK(expect[1] == cplx{0.5, 0.0});
    CHECK(expect[2] == cplx{-0.125, 0.0});
    CHECK(expect[3] == cplx{0.0625, 0.0});
    const uni_series r = from_vec(3, {1.0, 1.0}).nth_root(2, 0);
    for (int n = 0; n <= 3; ++n) {
      CHECK(std::abs(r.coeff(n) - expect[static_cast<std::size_t>(n)]) < 1e-14);
    }
  }
}

TEST_CASE("univariate composition") {
  SECTION("substitute z^2 into the geometric series") {
    uni_series g(4);
    g.set_coeff(2, 1.0);
    const uni_series c = geometric_series(4).compose(g);
    CHECK(c.coeff(0) == cplx{1.0, 0.0});
    CHECK(c.coeff(2) == cplx{1.0, 0.0});
    CHECK(c.coeff(4) == cplx{1.0, 0.0});
    CHECK(c.coeff(1) == cplx{0.0, 0.0});
  }

  SECTION("identity inner series") {
    std::mt19937_64 rng(5);
    const uni_series f = random_uni_series(rng, 8);
    CHECK(max_deviation(f.compose(uni_series::identity(8)), f) < 1e-15);
  }

  SECTION("(z + z^2) after (z + z^3)") {
    uni_series f(4), g(4);
    f.set_coeff(1, 1.0);
    f.set_coeff(2, 1.0);
    g.set_coeff(1, 1.0);
    g.set_coeff(3, 1.0);
    const uni_series c = f.compose(g);
    CHECK(std::abs(c.coeff(1) - 1.0) < 1e-15);
    CHECK(std::abs(c.coeff(2) - 1.0) < 1e-15);
    CHECK(std::abs(c.coeff(3) - 1.0) < 1e-15);
    CHECK(std::abs(c.coeff(4) - 2.0) < 1e-15);
  }

  SECTION("nonzero inner constant term rejected") {
    CHECK_THROWS_AS(uni_series::identity(3).compose(uni_series::constant(3, 1.0)),
                    std::domain_error);
  }
}

TEST_CASE("series reversion") {
  SECTION("identity and scaling") {
    CHECK(max_deviation(uni_series::identity(4).revert(), uni_series::identity(4)) == 0.0);
    uni_series f(3);
    f.set_coeff(1, 2.0);
    const uni_series g = f.revert();
    CHECK(std::abs(g.coeff(1) - 0.5) < 1e-15);
    CHECK(std::abs(g.coeff(2)) < 1e-15);
  }

  SECTION("z + z^2 gives signed Catalan numbers") {
    uni_series f(5);
    f.set_coeff(1, 1.0);
    f.set_coeff(2, 1.0);
    const uni_series g = f.revert();
    const std::vector<double> expect{0.0, 1.0, -1.0, 2.0, -5.0, 14.0};
    for (int n = 0; n <= 5; ++n) {
      CHECK(std::abs(g.coeff(n) - expect[static_cast<std::size_t>(n)]) < 1e-12);
    }
    // and the Lagrange-inversion oracle agrees
    const std::vector<cplx> lag = oracle::lagrange_inverse({0.0, 1.0, 1.0}, 5);
    for (int n = 0; n <= 5; ++n) {
      CHECK(std::abs(g.coeff(n) - lag[static_cast<std::size_t>(n)]) < 1e-12);
    }
  }

  SECTION("non-invertible jet rejected") {
    uni_series f(4);
    f.set_coeff(2, 1.0);
    CHECK_THROWS_AS(f.revert(), std::domain_error);
  }
}

TEST_CASE("partial derivatives") {
  multi_series f(2, 3);
  f.set_coeff({1, 1}, 1.0);
  f.set_coeff({0, 3}, 1.0);
  const multi_series d = f.partial_derivative(1);
  CHECK(d.coeff({1, 0}) == cplx{1.0, 0.0});
  CHECK(d.coeff({0, 2}) == cplx{3.0, 0.0});

  multi_series t2sq(2, 2);
  t2sq.set_coeff({0, 2}, 1.0);
  CHECK(t2sq.partial_derivative(1).coeff({0, 1}) == cplx{2.0, 0.0});

  CHECK(multi_series::constant(2, 2, 5.0).partial_derivative(0).max_abs_coeff() == 0.0);
}

TEST_CASE("circle norms") {
  CHECK(circle_norm(uni_series::identity(1), 0.5, 256) == Approx(0.5).epsilon(1e-12));
  CHECK(circle_norm(uni_series::constant(0, cplx{3.0, 4.0}), 0.9, 256) == Approx(5.0));
  // |1 + z| on the unit circle peaks at z = 1
  const uni_series f = from_vec(1, {1.0, 1.0});
  CHECK(circle_norm(f, 1.0, 256) == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("polynomial roots") {
  SECTION("quadratic") {
    const auto r = poly({-1.0, 0.0, 1.0}).roots();
    REQUIRE(r.size() == 2);
    const double lo = std::min(r[0].real(), r[1].real());
    const double hi = std::max(r[0].real(), r[1].real());
    CHECK(lo == Approx(-1.0).margin(1e-10));
    CHECK(hi == Approx(1.0).margin(1e-10));
  }

  SECTION("triple root at the origin") {
    const auto r = poly({0.0, 0.0, 0.0, 1.0}).roots();
    REQUIRE(r.size() == 3);
    for (cplx z : r) CHECK(std::abs(z) < 1e-12);
  }

  SECTION("cubic with roots 1, 2, 3") {
    const auto r = poly({-6.0, 11.0, -6.0, 1.0}).roots();
    REQUIRE(r.size() == 3);
    std::vector<double> re;
    for (cplx z : r) {
      re.push_back(z.real());
      CHECK(std::abs(z.imag()) < 1e-9);
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == Approx(1.0).margin(1e-9));
    CHECK(re[1] == Approx(2.0).margin(1e-9));
    CHECK(re[2] == Approx(3.0).margin(1e-9));
  }

  SECTION("degenerate leading coefficient rejected") {
    CHECK_THROWS_AS(poly({cplx{1.0, 0.0}}).roots(), std::domain_error);
  }
}

TEST_CASE("ring axioms on sampled series") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const multi_series a = random_multi_series(rng, 2, 10);
    const multi_series b = random_multi_series(rng, 2, 10);
    const multi_series c = random_multi_series(rng, 2, 10);
    CHECK(max_deviation((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(max_deviation(a * (b + c), a * b + a * c) < 1e-12);
  }
}

TEST_CASE("reciprocal is a two-sided inverse") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    multi_series f = random_multi_series(rng, 2, 8, 0.8);
    multi_index zero{0, 0};
    f.set_coeff(zero, f.coeff(zero) + cplx{1.2, 0.0});
    const multi_series g = f.reciprocal();
    const multi_series one = multi_series::constant(2, 8, 1.0);
    CHECK(max_deviation(f * g, one) < 1e-10);
    CHECK(max_deviation(g * f, one) < 1e-10);
  }
}

TEST_CASE("nth_root round trip") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 3);
    multi_series f = random_multi_series(rng, 2, 8, 0.3);
    multi_index zero{0, 0};
    f.set_coeff(zero, std::polar(mag(rng), 0.3 * static_cast<double>(trial)));
    const multi_series g = f.nth_root(m, 0);
    CHECK(max_deviation(g.pow(m), f) < 1e-10);
  }
}

TEST_CASE("revert round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    uni_series f = random_uni_series(rng, 12, 0.7, /*zero_constant=*/true);
    f.set_coeff(1, f.coeff(1) + cplx{1.5, 0.0});
    const uni_series g = f.revert();
    CHECK(max_deviation(f.compose(g), uni_series::identity(12)) < 1e-10);
    CHECK(max_deviation(g.compose(f), uni_series::identity(12)) < 1e-10);
  }
}

TEST_CASE("circle norm is monotone in the radius") {
  std::mt19937_64 rng(9);
  const uni_series f = random_uni_series(rng, 10);
  double prev = 0.0;
  for (double r : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double v = circle_norm(f, r, 512);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("root multiset reproduces the coefficients") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 6);  // degree 3..8
    // well-separated roots on a ring
    std::vector<cplx> roots;
    for (int i = 0; i < k; ++i) {
      roots.push_back(std::polar(0.5 + 0.1 * (i % 3), 2.0 * pi * i / k + 0.1 * trial));
    }
    const poly p = poly::from_roots(roots, cplx{1.3, -0.4});
    const auto found = p.roots();
    REQUIRE(static_cast<int>(found.size()) == k);
    // compare via elementary symmetric functions (order-free)
    const auto e_true = oracle::elementary_symmetric(roots);
    const auto e_found = oracle::elementary_symmetric(found);
    for (std::size_t i = 0; i < e_true.size(); ++i) {
      CHECK(std::abs(e_true[i] - e_found[i]) < 1e-8 * (1.0 + std::abs(e_true[i])));
    }
  }
}

TEST_CASE("coefficient drop keeps stores clean") {
  multi_series f(2, 4);
  f.set_coeff({1, 1}, cplx{1e-15, 0.0});
  CHECK(f.coeffs().empty());
  f.set_coeff({1, 1}, cplx{1e-3, 0.0});
  CHECK(f.coeffs().size() == 1);
}
