#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "polycanon/scalar.hpp"
#include "polycanon/uni_series.hpp"

namespace polycanon {

/// Dense univariate polynomial, coefficients a_0..a_k with a_k != 0.
class poly {
 public:
  explicit poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("poly: empty coefficient list");
    for (cplx v : c_) require_finite(v, "poly");
    while (c_.size() > 1 && std::abs(c_.back()) <= coeff_drop_tol) c_.pop_back();
    if (c_.size() > 1 && c_.back() == cplx{0.0, 0.0}) {
      throw std::invalid_argument("poly: degenerate leading coefficient");
    }
  }

  static poly from_roots(std::span<const cplx> roots, cplx lead = 1.0) {
    std::vector<cplx> c{lead};
    for (cplx r : roots) {
      c.push_back(cplx{0.0, 0.0});
      for (std::size_t i = c.size() - 1; i >= 1; --i) c[i] = c[i - 1] - r * c[i];
      c[0] *= -r;
    }
    return poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  cplx coeff(int n) const {
    return (n >= 0 && n < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(n)] : cplx{};
  }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx evaluate(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  poly derivative() const {
    if (degree() == 0) return poly({cplx{0.0, 0.0}});
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
    return poly(std::move(d));
  }

  friend poly operator*(const poly& a, const poly& b) {
    std::vector<cplx> c(static_cast<std::size_t>(a.degree() + b.degree()) + 1, cplx{});
    for (int i = 0; i <= a.degree(); ++i)
      for (int j = 0; j <= b.degree(); ++j) c[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    return poly(std::move(c));
  }

  uni_series as_series(int trunc) const {
    uni_series s(trunc);
    for (int n = 0; n <= std::min(trunc, degree()); ++n) s.set_coeff(n, coeff(n));
    return s;
  }

  /// Horner evaluation at a series argument (no constant-term restriction).
  uni_series evaluate_at(const uni_series& g) const {
    uni_series acc = uni_series::constant(g.trunc(), coeff(degree()));
    for (int n = degree() - 1; n >= 0; --n) {
      acc = acc * g;
      acc.set_coeff(0, acc.coeff(0) + coeff(n));
    }
    return acc;
  }

  /// All roots with multiplicity, via Aberth-Ehrlich simultaneous iteration.
  /// Exact zero roots are stripped first; clusters of radius
  /// `cluster_radius` are merged into multiple roots at their centroid.
  std::vector<cplx> roots(double tol = default_root_tol,
                          double cluster_radius = root_cluster_radius) const;

 private:
  std::vector<cplx> c_;
};

namespace detail {

inline void aberth_iterate(const std::vector<cplx>& monic, std::vector<cplx>& x) {
  const int k = static_cast<int>(monic.size()) - 1;
  // derivative of the monic polynomial
  std::vector<cplx> dmonic(static_cast<std::size_t>(k));
  for (int n = 1; n <= k; ++n) dmonic[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * monic[static_cast<std::size_t>(n)];

  auto eval = [](const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };

  const int max_iter = 300;
  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      const cplx pi_ = eval(monic, x[static_cast<std::size_t>(i)]);
      cplx dpi = eval(dmonic, x[static_cast<std::size_t>(i)]);
      if (dpi == cplx{0.0, 0.0}) dpi = cplx{1e-30, 0.0};
      const cplx newton = pi_ / dpi;
      cplx repel = 0.0;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        cplx d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
        if (d == cplx{0.0, 0.0}) d = cplx{1e-20, 1e-20};
        repel += 1.0 / d;
      }
      const cplx denom = 1.0 - newton * repel;
      const cplx step = (denom == cplx{0.0, 0.0}) ? newton : newton / denom;
      x[static_cast<std::size_t>(i)] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(x[static_cast<std::size_t>(i)])));
    }
    if (worst < 1e-14) break;
  }
}

}  // namespace detail

inline std::vector<cplx> poly::roots(double tol, double cluster_radius) const {
  const int k = degree();
  if (k < 1) throw std::domain_error("poly::roots: degree must be at least 1");

  // strip roots at the origin
  int zero_mult = 0;
  double scale = 0.0;
  for (cplx v : c_) scale = std::max(scale, std::abs(v));
  while (zero_mult < k && std::abs(c_[static_cast<std::size_t>(zero_mult)]) <= coeff_drop_tol * scale) ++zero_mult;

  std::vector<cplx> out(static_cast<std::size_t>(zero_mult), cplx{0.0, 0.0});
  const int kr = k - zero_mult;
  if (kr == 0) return out;

  std::vector<cplx> monic(static_cast<std::size_t>(kr) + 1);
  const cplx lead = c_.back();
  for (int n = 0; n <= kr; ++n) monic[static_cast<std::size_t>(n)] = c_[static_cast<std::size_t>(n + zero_mult)] / lead;

  double radius = 0.0;
  for (int n = 0; n < kr; ++n) radius = std::max(radius, std::abs(monic[static_cast<std::size_t>(n)]));
  radius += 1.0;

  std::vector<cplx> x(static_cast<std::size_t>(kr));
  for (int i = 0; i < kr; ++i) {
    x[static_cast<std::size_t>(i)] = std::polar(radius, 2.0 * pi * i / kr + 0.7);
  }
  detail::aberth_iterate(monic, x);

  // cluster nearby approximations into multiple roots at their centroid
  std::vector<bool> used(static_cast<std::size_t>(kr), false);
  std::vector<cplx> clustered;
  for (int i = 0; i < kr; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    std::vector<int> group{i};
    used[static_cast<std::size_t>(i)] = true;
    for (int j = i + 1; j < kr; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]) <= cluster_radius) {
        group.push_back(j);
        used[static_cast<std::size_t>(j)] = true;
      }
    }
    cplx centroid = 0.0;
    for (int g : group) centroid += x[static_cast<std::size_t>(g)];
    centroid /= static_cast<double>(group.size());
    for (std::size_t g = 0; g < group.size(); ++g) clustered.push_back(centroid);
  }
  out.insert(out.end(), clustered.begin(), clustered.end());

  for (cplx r : out) {
    const double bound = tol * std::pow(1.0 + std::abs(r), k) * std::abs(c_.back());
    if (std::abs(evaluate(r)) > bound) {
      throw std::runtime_error("poly::roots: residual bound violated");
    }
  }
  return out;
}

}  // namespace polycanon
