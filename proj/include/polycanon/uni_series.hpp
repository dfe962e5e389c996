#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polycanon/scalar.hpp"

namespace polycanon {

/// Dense truncated power series in one complex variable.
///
/// Coefficients are stored for degrees 0..trunc; everything beyond the
/// truncation order is unknown, not zero. Arithmetic truncates results to
/// the shorter of the operands, so the stored coefficients are always the
/// exact coefficients of the (formal) result.
class uni_series {
 public:
  explicit uni_series(int trunc) {
    if (trunc < 0) throw std::invalid_argument("uni_series: negative truncation");
    c_.assign(static_cast<std::size_t>(trunc) + 1, cplx{});
  }

  uni_series(int trunc, std::vector<cplx> coeffs) : uni_series(trunc) {
    if (coeffs.size() > c_.size()) {
      throw std::invalid_argument("uni_series: more coefficients than truncation allows");
    }
    std::copy(coeffs.begin(), coeffs.end(), c_.begin());
    for (cplx v : c_) require_finite(v, "uni_series");
  }

  static uni_series constant(int trunc, cplx value) {
    uni_series s(trunc);
    s.c_[0] = value;
    return s;
  }

  // The series z.
  static uni_series identity(int trunc) {
    uni_series s(trunc);
    if (trunc >= 1) s.c_[1] = 1.0;
    return s;
  }

  int trunc() const { return static_cast<int>(c_.size()) - 1; }

  cplx coeff(int n) const {
    return (n >= 0 && n < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(n)] : cplx{};
  }

  void set_coeff(int n, cplx v) {
    if (n < 0 || n > trunc()) throw std::out_of_range("uni_series::set_coeff: degree out of range");
    require_finite(v, "uni_series::set_coeff");
    c_[static_cast<std::size_t>(n)] = v;
  }

  const std::vector<cplx>& coeffs() const { return c_; }

  uni_series truncated(int new_trunc) const {
    uni_series out(new_trunc);
    const int n = std::min(new_trunc, trunc());
    for (int i = 0; i <= n; ++i) out.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
    return out;
  }

  cplx evaluate(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  uni_series derivative() const {
    if (trunc() == 0) return uni_series(0);
    uni_series out(trunc() - 1);
    for (int n = 1; n <= trunc(); ++n) {
      out.c_[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * c_[static_cast<std::size_t>(n)];
    }
    return out;
  }

  friend uni_series operator+(const uni_series& a, const uni_series& b) {
    uni_series out(std::min(a.trunc(), b.trunc()));
    for (int n = 0; n <= out.trunc(); ++n) out.c_[static_cast<std::size_t>(n)] = a.coeff(n) + b.coeff(n);
    return out;
  }

  friend uni_series operator-(const uni_series& a, const uni_series& b) {
    uni_series out(std::min(a.trunc(), b.trunc()));
    for (int n = 0; n <= out.trunc(); ++n) out.c_[static_cast<std::size_t>(n)] = a.coeff(n) - b.coeff(n);
    return out;
  }

  friend uni_series operator-(const uni_series& a) { return a * cplx{-1.0, 0.0}; }

  friend uni_series operator*(const uni_series& a, const uni_series& b) {
    uni_series out(std::min(a.trunc(), b.trunc()));
    for (int n = 0; n <= out.trunc(); ++n) {
      cplx acc = 0.0;
      const int lo = std::max(0, n - b.trunc());
      const int hi = std::min(n, a.trunc());
      for (int i = lo; i <= hi; ++i) acc += a.coeff(i) * b.coeff(n - i);
      out.c_[static_cast<std::size_t>(n)] = acc;
    }
    return out;
  }

  friend uni_series operator*(const uni_series& a, cplx s) {
    uni_series out = a;
    for (cplx& v : out.c_) v *= s;
    return out;
  }
  friend uni_series operator*(cplx s, const uni_series& a) { return a * s; }

  uni_series pow(int e) const {
    if (e < 0) throw std::invalid_argument("uni_series::pow: negative exponent");
    uni_series acc = constant(trunc(), 1.0);
    uni_series base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = (e >>= 1) > 0 ? base * base : base;
    }
    return acc;
  }

  /// Multiplicative inverse; requires a nonzero constant term.
  uni_series reciprocal() const {
    if (c_[0] == cplx{0.0, 0.0}) {
      throw std::domain_error("uni_series::reciprocal: vanishing constant term");
    }
    uni_series out(trunc());
    out.c_[0] = 1.0 / c_[0];
    for (int n = 1; n <= trunc(); ++n) {
      cplx acc = 0.0;
      for (int j = 1; j <= n; ++j) acc += c_[static_cast<std::size_t>(j)] * out.c_[static_cast<std::size_t>(n - j)];
      out.c_[static_cast<std::size_t>(n)] = -acc / c_[0];
    }
    return out;
  }

  /// m-th root with the constant term on the selected branch; g^m = f up to
  /// the truncation order.
  uni_series nth_root(int m, int branch = 0) const {
    if (m <= 0) throw std::invalid_argument("uni_series::nth_root: order must be positive");
    if (c_[0] == cplx{0.0, 0.0}) {
      throw std::domain_error("uni_series::nth_root: vanishing constant term");
    }
    uni_series g = constant(trunc(), nth_root_scalar(c_[0], m, branch));
    const cplx pivot = static_cast<double>(m) * std::pow(g.c_[0], m - 1);
    for (int n = 1; n <= trunc(); ++n) {
      // with g_n still zero, f - g^m starts at degree n
      const uni_series gm = g.pow(m);
      g.c_[static_cast<std::size_t>(n)] = (coeff(n) - gm.coeff(n)) / pivot;
    }
    return g;
  }

  /// Composition f(g(z)); g must have zero constant term.
  uni_series compose(const uni_series& g) const {
    if (g.coeff(0) != cplx{0.0, 0.0}) {
      throw std::domain_error("uni_series::compose: inner series has nonzero constant term");
    }
    const int n = std::min(trunc(), g.trunc());
    const uni_series inner = g.truncated(n);
    uni_series acc = constant(n, coeff(trunc()));
    for (int i = trunc() - 1; i >= 0; --i) {
      acc = acc * inner;
      acc.c_[0] += coeff(i);
    }
    return acc;
  }

  /// Compositional inverse: returns g with f(g(z)) = g(f(z)) = z up to the
  /// truncation order. Requires f(0) = 0 and f'(0) != 0.
  uni_series revert() const {
    if (c_[0] != cplx{0.0, 0.0}) {
      throw std::domain_error("uni_series::revert: constant term must vanish");
    }
    if (trunc() < 1 || c_[1] == cplx{0.0, 0.0}) {
      throw std::domain_error("uni_series::revert: linear coefficient must be nonzero");
    }
    const int n_max = trunc();
    uni_series g(n_max);
    g.c_[1] = 1.0 / c_[1];
    for (int n = 2; n <= n_max; ++n) {
      // the z^n coefficient of f(g) with g_n = 0 is the defect to cancel
      const uni_series h = truncated(n).compose(g.truncated(n));
      g.c_[static_cast<std::size_t>(n)] = -h.coeff(n) / c_[1];
    }
    return g;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (cplx v : c_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::vector<cplx> c_;
};

inline double max_deviation(const uni_series& a, const uni_series& b) {
  double dev = 0.0;
  const int n = std::max(a.trunc(), b.trunc());
  for (int i = 0; i <= n; ++i) dev = std::max(dev, std::abs(a.coeff(i) - b.coeff(i)));
  return dev;
}

// Common factor series.

inline uni_series geometric_series(int trunc, cplx ratio = 1.0) {
  uni_series s(trunc);
  cplx p = 1.0;
  for (int n = 0; n <= trunc; ++n) {
    s.set_coeff(n, p);
    p *= ratio;
  }
  return s;
}

inline uni_series exp_series(int trunc, cplx scale = 1.0) {
  uni_series s(trunc);
  cplx term = 1.0;
  for (int n = 0; n <= trunc; ++n) {
    s.set_coeff(n, term);
    term *= scale / static_cast<double>(n + 1);
  }
  return s;
}

inline uni_series binomial_factor(int trunc, cplx scale = 1.0) {
  uni_series s(trunc);
  s.set_coeff(0, 1.0);
  if (trunc >= 1) s.set_coeff(1, scale);
  return s;
}

}  // namespace polycanon
