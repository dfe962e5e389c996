#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "polycanon/multi_series.hpp"
#include "polycanon/poly.hpp"
#include "polycanon/scalar.hpp"

namespace polycanon {

/// Weierstrass preparation U = V * (t_d^k + sum_j u_j(t') t_d^j) of a germ
/// vanishing to order k along the t_d axis. `unit` is V in all d variables;
/// `lower` holds u_0..u_{k-1} in the leading d-1 variables, each with zero
/// constant term.
struct weierstrass_form {
  int k = 0;
  multi_series unit;
  std::vector<multi_series> lower;
  int trunc = 0;

  int nvars() const { return unit.nvars(); }

  /// The monic polynomial factor as a d-variable series.
  multi_series weierstrass_poly() const {
    const int d = nvars();
    multi_index e(static_cast<std::size_t>(d), 0);
    e.back() = k;
    multi_series p = multi_series::monomial(d, trunc, e, 1.0);
    for (int j = 0; j < k; ++j) {
      multi_index ej(static_cast<std::size_t>(d), 0);
      ej.back() = j;
      p = p + lift_prefix(lower[static_cast<std::size_t>(j)], trunc) *
                  multi_series::monomial(d, trunc, ej, 1.0);
    }
    return p;
  }

  /// Monic polynomial in t_d on the slice t' = const.
  poly slice_poly(std::span<const cplx> tprime) const {
    std::vector<cplx> coeffs(static_cast<std::size_t>(k) + 1, cplx{});
    for (int j = 0; j < k; ++j) {
      coeffs[static_cast<std::size_t>(j)] = lower[static_cast<std::size_t>(j)].evaluate(tprime);
    }
    coeffs[static_cast<std::size_t>(k)] = 1.0;
    for (cplx v : coeffs) require_finite(v, "weierstrass_form::slice_poly");
    return poly(std::move(coeffs));
  }
};

/// Order of vanishing along the t_d axis: the smallest n whose axis
/// coefficient is nonzero relative to the largest axis coefficient.
inline int vanishing_order(const multi_series& u) {
  const uni_series axis = u.axis_series();
  double scale = axis.max_abs_coeff();
  if (scale == 0.0) {
    throw std::domain_error("vanishing_order: order undetermined at this truncation");
  }
  for (int n = 0; n <= axis.trunc(); ++n) {
    if (std::abs(axis.coeff(n)) > axis_rel_tol * scale) return n;
  }
  throw std::domain_error("vanishing_order: order undetermined at this truncation");
}

/// Weierstrass preparation to total degree N by order-by-order matching in
/// the t'-grade. Grade 0 fixes the unit on the axis; each grade m then
/// yields, per t'-monomial, a triangular system solved by back-substitution
/// (u_j coefficients from the rows t_d^j, j < k, unit coefficients from the
/// rows t_d^n, n >= k).
inline weierstrass_form weierstrass_prepare(const multi_series& u_in, int n_trunc) {
  if (u_in.nvars() < 2) {
    throw std::invalid_argument("weierstrass_prepare: need at least two variables");
  }
  const int d = u_in.nvars();
  n_trunc = std::min(n_trunc, u_in.trunc());
  const multi_series u = u_in.truncated(n_trunc);
  const int k = vanishing_order(u);

  const uni_series axis = u.axis_series();
  // axis part of the unit: V(0', t_d) = U(0', t_d) / t_d^k, degrees <= N-k
  uni_series v_axis(n_trunc);
  for (int n = 0; n + k <= n_trunc && n <= n_trunc - k; ++n) v_axis.set_coeff(n, axis.coeff(n + k));

  weierstrass_form form;
  form.k = k;
  form.trunc = n_trunc;
  form.unit = lift_axis(v_axis, d, n_trunc);
  form.lower.assign(static_cast<std::size_t>(k), multi_series(d - 1, n_trunc));

  const cplx v00 = v_axis.coeff(0);

  for (int m = 1; m <= n_trunc; ++m) {
    const multi_series defect = u - form.unit * form.weierstrass_poly();
    const int n_max = n_trunc - m;
    for_each_monomial(d - 1, m, [&](const multi_index& mu) {
      std::vector<cplx> w(static_cast<std::size_t>(n_max) + 1);
      bool any = false;
      multi_index e = mu;
      e.push_back(0);
      for (int n = 0; n <= n_max; ++n) {
        e.back() = n;
        w[static_cast<std::size_t>(n)] = defect.coeff(e);
        any = any || (w[static_cast<std::size_t>(n)] != cplx{0.0, 0.0});
      }
      if (!any) return;

      std::vector<cplx> uhat(static_cast<std::size_t>(k), cplx{});
      for (int n = 0; n <= std::min(k - 1, n_max); ++n) {
        cplx acc = w[static_cast<std::size_t>(n)];
        for (int j = 0; j < n; ++j) acc -= v_axis.coeff(n - j) * uhat[static_cast<std::size_t>(j)];
        uhat[static_cast<std::size_t>(n)] = acc / v00;
        form.lower[static_cast<std::size_t>(n)].add_coeff(mu, uhat[static_cast<std::size_t>(n)]);
      }
      for (int n = k; n <= n_max; ++n) {
        cplx acc = w[static_cast<std::size_t>(n)];
        for (int j = 0; j <= std::min(n, k - 1); ++j) {
          acc -= v_axis.coeff(n - j) * uhat[static_cast<std::size_t>(j)];
        }
        e.back() = n - k;
        form.unit.add_coeff(e, acc);
      }
    });
  }
  return form;
}

inline multi_series weierstrass_residual(const multi_series& u, const weierstrass_form& form) {
  return u.truncated(form.trunc) - form.unit * form.weierstrass_poly();
}

/// The k roots (with multiplicity) of the Weierstrass polynomial on the
/// slice t' = const.
inline std::vector<cplx> slice_roots(const weierstrass_form& form, std::span<const cplx> tprime) {
  return form.slice_poly(tprime).roots();
}

}  // namespace polycanon
