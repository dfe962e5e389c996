#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "polycanon/scalar.hpp"
#include "polycanon/uni_series.hpp"

namespace polycanon {

using multi_index = std::vector<int>;

inline int total_degree(const multi_index& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

/// Visit every exponent vector of the given length with the given total
/// degree, in lexicographic order.
inline void for_each_monomial(int nvars, int degree,
                              const std::function<void(const multi_index&)>& visit) {
  multi_index e(static_cast<std::size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == nvars - 1) {
      e[static_cast<std::size_t>(pos)] = remaining;
      visit(e);
      return;
    }
    for (int d = remaining; d >= 0; --d) {
      e[static_cast<std::size_t>(pos)] = d;
      rec(pos + 1, remaining - d);
    }
  };
  if (nvars == 0) {
    if (degree == 0) visit(e);
    return;
  }
  rec(0, degree);
}

/// Truncated formal power series in several complex variables.
///
/// Truncation is by total degree: coefficients are stored (sparsely) for
/// every multi-index of total degree <= trunc, coefficients beyond that are
/// unknown. Stores drop coefficients below `coeff_drop_tol` so long
/// convolutions do not accumulate noise entries.
class multi_series {
 public:
  multi_series() : nvars_(1), trunc_(0) {}  // empty placeholder

  multi_series(int nvars, int trunc) : nvars_(nvars), trunc_(trunc) {
    if (nvars < 1) throw std::invalid_argument("multi_series: need at least one variable");
    if (trunc < 0) throw std::invalid_argument("multi_series: negative truncation");
  }

  static multi_series constant(int nvars, int trunc, cplx value) {
    multi_series s(nvars, trunc);
    s.set_coeff(multi_index(static_cast<std::size_t>(nvars), 0), value);
    return s;
  }

  // The series t_var.
  static multi_series variable(int nvars, int trunc, int var) {
    multi_series s(nvars, trunc);
    if (trunc < 1) throw std::invalid_argument("multi_series::variable: truncation too small");
    multi_index e(static_cast<std::size_t>(nvars), 0);
    e.at(static_cast<std::size_t>(var)) = 1;
    s.set_coeff(e, 1.0);
    return s;
  }

  static multi_series monomial(int nvars, int trunc, const multi_index& e, cplx value) {
    multi_series s(nvars, trunc);
    s.set_coeff(e, value);
    return s;
  }

  int nvars() const { return nvars_; }
  int trunc() const { return trunc_; }
  const std::map<multi_index, cplx>& coeffs() const { return c_; }

  cplx coeff(const multi_index& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? cplx{} : it->second;
  }

  void set_coeff(const multi_index& e, cplx v) {
    check_index(e);
    require_finite(v, "multi_series::set_coeff");
    if (std::abs(v) <= coeff_drop_tol) {
      c_.erase(e);
    } else {
      c_[e] = v;
    }
  }

  void add_coeff(const multi_index& e, cplx v) { set_coeff(e, coeff(e) + v); }

  multi_series truncated(int new_trunc) const {
    multi_series out(nvars_, new_trunc);
    for (const auto& [e, v] : c_) {
      if (total_degree(e) <= new_trunc) out.c_[e] = v;
    }
    return out;
  }

  friend multi_series operator+(const multi_series& a, const multi_series& b) {
    return combine(a, b, +1.0);
  }
  friend multi_series operator-(const multi_series& a, const multi_series& b) {
    return combine(a, b, -1.0);
  }
  friend multi_series operator-(const multi_series& a) { return a * cplx{-1.0, 0.0}; }

  friend multi_series operator*(const multi_series& a, cplx s) {
    multi_series out(a.nvars_, a.trunc_);
    for (const auto& [e, v] : a.c_) out.set_coeff(e, v * s);
    return out;
  }
  friend multi_series operator*(cplx s, const multi_series& a) { return a * s; }

  friend multi_series operator*(const multi_series& a, const multi_series& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("multi_series: dimension mismatch");
    multi_series out(a.nvars_, std::min(a.trunc_, b.trunc_));
    std::map<multi_index, cplx> acc;
    multi_index e(static_cast<std::size_t>(a.nvars_));
    for (const auto& [ea, va] : a.c_) {
      const int da = total_degree(ea);
      for (const auto& [eb, vb] : b.c_) {
        if (da + total_degree(eb) > out.trunc_) continue;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        acc[e] += va * vb;
      }
    }
    for (const auto& [ee, v] : acc) {
      if (std::abs(v) > coeff_drop_tol) out.c_[ee] = v;
    }
    return out;
  }

  multi_series pow(int e) const {
    if (e < 0) throw std::invalid_argument("multi_series::pow: negative exponent");
    multi_series acc = constant(nvars_, trunc_, 1.0);
    multi_series base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return acc;
  }

  cplx constant_term() const { return coeff(multi_index(static_cast<std::size_t>(nvars_), 0)); }

  /// Multiplicative inverse, built grade by grade; requires a nonzero
  /// constant term.
  multi_series reciprocal() const {
    const cplx c0 = constant_term();
    if (c0 == cplx{0.0, 0.0}) {
      throw std::domain_error("multi_series::reciprocal: vanishing constant term");
    }
    multi_series g = constant(nvars_, trunc_, 1.0 / c0);
    for (int grade = 1; grade <= trunc_; ++grade) {
      const multi_series defect = constant(nvars_, trunc_, 1.0) - (*this) * g;
      for (const auto& [e, v] : defect.c_) {
        if (total_degree(e) == grade) g.add_coeff(e, v / c0);
      }
    }
    return g;
  }

  /// m-th root on the selected branch of the constant term.
  multi_series nth_root(int m, int branch = 0) const {
    if (m <= 0) throw std::invalid_argument("multi_series::nth_root: order must be positive");
    const cplx c0 = constant_term();
    if (c0 == cplx{0.0, 0.0}) {
      throw std::domain_error("multi_series::nth_root: vanishing constant term");
    }
    const cplx g0 = nth_root_scalar(c0, m, branch);
    const cplx pivot = static_cast<double>(m) * std::pow(g0, m - 1);
    multi_series g = constant(nvars_, trunc_, g0);
    for (int grade = 1; grade <= trunc_; ++grade) {
      const multi_series defect = (*this) - g.pow(m);
      for (const auto& [e, v] : defect.c_) {
        if (total_degree(e) == grade) g.add_coeff(e, v / pivot);
      }
    }
    return g;
  }

  multi_series partial_derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("multi_series: variable index out of range");
    multi_series out(nvars_, std::max(0, trunc_ - 1));
    for (const auto& [e, v] : c_) {
      const int p = e[static_cast<std::size_t>(var)];
      if (p == 0) continue;
      multi_index d = e;
      d[static_cast<std::size_t>(var)] = p - 1;
      out.set_coeff(d, static_cast<double>(p) * v);
    }
    return out;
  }

  cplx evaluate(std::span<const cplx> point) const {
    if (static_cast<int>(point.size()) != nvars_) {
      throw std::invalid_argument("multi_series::evaluate: wrong point dimension");
    }
    cplx acc = 0.0;
    for (const auto& [e, v] : c_) {
      cplx term = v;
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int p = 0; p < e[i]; ++p) term *= point[i];
      }
      acc += term;
    }
    return acc;
  }

  /// Restriction to the last-variable axis: all other variables at zero.
  uni_series axis_series() const {
    uni_series s(trunc_);
    for (const auto& [e, v] : c_) {
      bool axis = true;
      for (std::size_t i = 0; i + 1 < e.size(); ++i) axis = axis && (e[i] == 0);
      if (axis) s.set_coeff(e.back(), v);
    }
    return s;
  }

  /// Evaluate the leading nvars-1 variables at a numeric point; the last
  /// variable stays symbolic.
  uni_series slice_last(std::span<const cplx> prefix) const {
    if (static_cast<int>(prefix.size()) != nvars_ - 1) {
      throw std::invalid_argument("multi_series::slice_last: wrong prefix dimension");
    }
    uni_series s(trunc_);
    for (const auto& [e, v] : c_) {
      cplx term = v;
      for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        for (int p = 0; p < e[i]; ++p) term *= prefix[i];
      }
      s.set_coeff(e.back(), s.coeff(e.back()) + term);
    }
    return s;
  }

  /// Coefficient of (last variable)^n as a series in the remaining
  /// variables. Requires nvars >= 2.
  multi_series coeff_of_last(int n) const {
    if (nvars_ < 2) throw std::invalid_argument("multi_series::coeff_of_last: need at least two variables");
    multi_series out(nvars_ - 1, std::max(0, trunc_ - n));
    for (const auto& [e, v] : c_) {
      if (e.back() != n) continue;
      multi_index p(e.begin(), e.end() - 1);
      out.set_coeff(p, v);
    }
    return out;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, v] : c_) m = std::max(m, std::abs(v));
    return m;
  }

  bool operator==(const multi_series& other) const {
    return nvars_ == other.nvars_ && trunc_ == other.trunc_ && c_ == other.c_;
  }

 private:
  static multi_series combine(const multi_series& a, const multi_series& b, double sign) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("multi_series: dimension mismatch");
    multi_series out(a.nvars_, std::min(a.trunc_, b.trunc_));
    for (const auto& [e, v] : a.c_) {
      if (total_degree(e) <= out.trunc_) out.add_coeff(e, v);
    }
    for (const auto& [e, v] : b.c_) {
      if (total_degree(e) <= out.trunc_) out.add_coeff(e, sign * v);
    }
    return out;
  }

  void check_index(const multi_index& e) const {
    if (static_cast<int>(e.size()) != nvars_) {
      throw std::invalid_argument("multi_series: index length mismatch");
    }
    for (int p : e) {
      if (p < 0) throw std::invalid_argument("multi_series: negative exponent");
    }
    if (total_degree(e) > trunc_) {
      throw std::invalid_argument("multi_series: index exceeds truncation order");
    }
  }

  int nvars_;
  int trunc_;
  std::map<multi_index, cplx> c_;
};

/// Coefficientwise deviation over the union of supports.
inline double max_deviation(const multi_series& a, const multi_series& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("max_deviation: dimension mismatch");
  double dev = 0.0;
  for (const auto& [e, v] : a.coeffs()) dev = std::max(dev, std::abs(v - b.coeff(e)));
  for (const auto& [e, v] : b.coeffs()) dev = std::max(dev, std::abs(v - a.coeff(e)));
  return dev;
}

/// Embed a series in (t_1..t_{d-1}) into d variables, the new last variable
/// unused.
inline multi_series lift_prefix(const multi_series& s, int trunc) {
  multi_series out(s.nvars() + 1, trunc);
  for (const auto& [e, v] : s.coeffs()) {
    if (total_degree(e) > trunc) continue;
    multi_index p = e;
    p.push_back(0);
    out.set_coeff(p, v);
  }
  return out;
}

/// Embed a univariate series as a series in the last of d variables.
inline multi_series lift_axis(const uni_series& s, int nvars, int trunc) {
  multi_series out(nvars, trunc);
  for (int n = 0; n <= std::min(trunc, s.trunc()); ++n) {
    multi_index e(static_cast<std::size_t>(nvars), 0);
    e.back() = n;
    out.set_coeff(e, s.coeff(n));
  }
  return out;
}

/// Total degree in the leading nvars-1 variables.
inline int prefix_grade(const multi_index& e) {
  int g = 0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) g += e[i];
  return g;
}

}  // namespace polycanon
