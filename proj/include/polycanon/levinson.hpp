#pragma once

#include <algorithm>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "polycanon/linalg.hpp"
#include "polycanon/multi_series.hpp"
#include "polycanon/scalar.hpp"
#include "polycanon/weierstrass.hpp"

namespace polycanon {

/// Polynomial canonical representation U = sum_j v_j(t') x(t)^j with the
/// normalized auxiliary variable x: x(t', 0) = 0 and dx/dt_d(t', 0) = 1
/// identically, v_j(0') = 0 for j < k, v_k(0') != 0.
struct levinson_form {
  int k = 0;
  std::vector<multi_series> coeff_fns;  // v_0..v_k in the leading d-1 variables
  multi_series aux;                     // x in all d variables
  int trunc = 0;

  int nvars() const { return aux.nvars(); }

  /// sum_j v_j x^j as a d-variable series.
  multi_series combine() const {
    const int d = nvars();
    multi_series acc(d, trunc);
    multi_series xp = multi_series::constant(d, trunc, 1.0);
    for (int j = 0; j <= k; ++j) {
      acc = acc + lift_prefix(coeff_fns[static_cast<std::size_t>(j)], trunc) * xp;
      if (j < k) xp = xp * aux;
    }
    return acc;
  }

  /// Horner evaluation of the same sum; algebraically identical, different
  /// floating-point path.
  multi_series combine_horner() const {
    multi_series acc = lift_prefix(coeff_fns[static_cast<std::size_t>(k)], trunc);
    for (int j = k - 1; j >= 0; --j) {
      acc = acc * aux + lift_prefix(coeff_fns[static_cast<std::size_t>(j)], trunc);
    }
    return acc;
  }
};

struct decompose_options {
  bool permuted = false;  // reorder rows and evaluation; same system, new pivot path
  std::uint64_t seed = 0;
};

/// Compute the canonical representation to total degree N. Grade 0 is
/// forced by the normalization (a k-th root along the axis); each higher
/// grade yields one square linear system per t'-monomial, solved by LU with
/// partial pivoting. Unknowns are the grade-m coefficients of v_0..v_k and
/// of x at axis degrees 2..N-m-k+1; lower axis degrees of x are pinned by
/// the normalization, higher ones do not reach total degree N.
inline levinson_form levinson_decompose(const multi_series& u_in, int n_trunc,
                                        const decompose_options& opts = {}) {
  if (u_in.nvars() < 2) {
    throw std::invalid_argument("levinson_decompose: need at least two variables");
  }
  const int d = u_in.nvars();
  n_trunc = std::min(n_trunc, u_in.trunc());
  const multi_series u = u_in.truncated(n_trunc);
  const int k = vanishing_order(u);
  if (k < 1) {
    throw std::domain_error("levinson_decompose: unit germ (order 0) has no canonical form");
  }
  if (k > n_trunc) {
    throw std::domain_error("levinson_decompose: truncation below the vanishing order");
  }

  const uni_series axis = u.axis_series();
  const cplx ck = axis.coeff(k);

  // grade 0: x(0', t_d) = t_d * (U(0', t_d) / (c_k t_d^k))^{1/k}, branch 0
  uni_series ratio(n_trunc - k);
  for (int n = 0; n <= n_trunc - k; ++n) ratio.set_coeff(n, axis.coeff(n + k) / ck);
  const uni_series root = ratio.nth_root(k, 0);
  uni_series x_axis(n_trunc);
  for (int n = 0; n <= root.trunc() && n + 1 <= n_trunc; ++n) x_axis.set_coeff(n + 1, root.coeff(n));

  levinson_form form;
  form.k = k;
  form.trunc = n_trunc;
  form.aux = lift_axis(x_axis, d, n_trunc);
  form.coeff_fns.assign(static_cast<std::size_t>(k) + 1, multi_series(d - 1, n_trunc));
  form.coeff_fns[static_cast<std::size_t>(k)] = multi_series::constant(d - 1, n_trunc, ck);

  std::vector<uni_series> x_pows;
  x_pows.reserve(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) x_pows.push_back(x_axis.pow(j));

  std::mt19937_64 rng(opts.seed);

  for (int m = 1; m <= n_trunc; ++m) {
    const multi_series defect =
        u - (opts.permuted ? form.combine_horner() : form.combine());
    const int n_max = n_trunc - m;

    std::vector<multi_index> monomials;
    for_each_monomial(d - 1, m, [&](const multi_index& mu) { monomials.push_back(mu); });
    if (opts.permuted) std::shuffle(monomials.begin(), monomials.end(), rng);

    for (const multi_index& mu : monomials) {
      const int n_v = std::min(k, n_max);            // unknowns v_0..v_{n_v}
      const int n_x = std::max(0, n_max - k);        // unknowns x at degrees 2..n_x+1
      const std::size_t dim = static_cast<std::size_t>(n_v + 1 + n_x);

      std::vector<cplx> rhs(static_cast<std::size_t>(n_max) + 1);
      bool any = false;
      multi_index e = mu;
      e.push_back(0);
      for (int n = 0; n <= n_max; ++n) {
        e.back() = n;
        rhs[static_cast<std::size_t>(n)] = defect.coeff(e);
        any = any || (rhs[static_cast<std::size_t>(n)] != cplx{0.0, 0.0});
      }
      if (!any) continue;

      std::vector<std::vector<cplx>> mat(dim, std::vector<cplx>(dim, cplx{}));
      for (int n = 0; n <= n_max; ++n) {
        auto& row = mat[static_cast<std::size_t>(n)];
        for (int j = 0; j <= n_v; ++j) row[static_cast<std::size_t>(j)] = x_pows[static_cast<std::size_t>(j)].coeff(n);
        for (int i = 2; i <= n_x + 1; ++i) {
          row[static_cast<std::size_t>(n_v + i - 1)] =
              ck * static_cast<double>(k) * x_pows[static_cast<std::size_t>(k - 1)].coeff(n - i);
        }
      }

      std::vector<std::size_t> order(dim);
      for (std::size_t i = 0; i < dim; ++i) order[i] = i;
      if (opts.permuted) std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::vector<cplx>> pmat(dim);
      std::vector<cplx> prhs(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        pmat[i] = std::move(mat[order[i]]);
        prhs[i] = rhs[order[i]];
      }

      std::vector<cplx> sol;
      try {
        sol = solve_dense(std::move(pmat), std::move(prhs));
      } catch (const std::runtime_error&) {
        throw std::runtime_error("levinson_decompose: truncation/conditioning failure");
      }

      for (int j = 0; j <= n_v; ++j) {
        form.coeff_fns[static_cast<std::size_t>(j)].add_coeff(mu, sol[static_cast<std::size_t>(j)]);
      }
      for (int i = 2; i <= n_x + 1; ++i) {
        e.back() = i;
        form.aux.add_coeff(e, sol[static_cast<std::size_t>(n_v + i - 1)]);
      }
    }
  }
  return form;
}

inline multi_series levinson_residual(const multi_series& u, const levinson_form& form) {
  return u.truncated(form.trunc) - form.combine();
}

struct match_report {
  bool v_match = false;
  bool x_match = false;
  double max_dev = 0.0;
};

/// Coefficientwise comparison of two representations of the same germ; the
/// uniqueness theorem says both parts must match.
inline match_report uniqueness_check(const levinson_form& a, const levinson_form& b, double tol) {
  if (a.k != b.k || a.nvars() != b.nvars() || a.trunc != b.trunc) {
    throw std::invalid_argument("uniqueness_check: shape mismatch");
  }
  double v_dev = 0.0;
  for (int j = 0; j <= a.k; ++j) {
    v_dev = std::max(v_dev, max_deviation(a.coeff_fns[static_cast<std::size_t>(j)],
                                          b.coeff_fns[static_cast<std::size_t>(j)]));
  }
  const double x_dev = max_deviation(a.aux, b.aux);
  return {v_dev <= tol, x_dev <= tol, std::max(v_dev, x_dev)};
}

/// The uniqueness-transfer series at a fixed t': invert the axis slice of
/// A's auxiliary variable, push B's through it, and rescale by the k-th
/// root of the ratio of leading coefficient functions. If A and B represent
/// the same germ this is the identity series.
inline uni_series transfer_series(const levinson_form& a, const levinson_form& b,
                                  std::span<const cplx> tprime, int n_trunc) {
  if (a.k != b.k || a.nvars() != b.nvars()) {
    throw std::invalid_argument("transfer_series: shape mismatch");
  }
  const uni_series s_slice = a.aux.slice_last(tprime);
  const uni_series t_slice = b.aux.slice_last(tprime);
  const uni_series inverse = s_slice.revert();
  const uni_series pushed = t_slice.compose(inverse);

  const cplx vk = a.coeff_fns[static_cast<std::size_t>(a.k)].evaluate(tprime);
  const cplx wk = b.coeff_fns[static_cast<std::size_t>(b.k)].evaluate(tprime);
  if (vk == cplx{0.0, 0.0} || wk == cplx{0.0, 0.0}) {
    throw std::domain_error("transfer_series: leading coefficient vanishes at t'");
  }

  // branch of (w_k/v_k)^{1/k} continuous from the identity at t' = 0
  cplx scale{};
  double best = std::numeric_limits<double>::infinity();
  for (int branch = 0; branch < a.k; ++branch) {
    const cplx cand = nth_root_scalar(wk / vk, a.k, branch);
    const double dist = std::abs(cand - 1.0);
    if (dist < best) {
      best = dist;
      scale = cand;
    }
  }
  if (best > 0.5) {
    throw std::runtime_error("transfer_series: branch selection failed (ratio far from the identity sheet)");
  }
  return (pushed * scale).truncated(std::min(n_trunc, pushed.trunc()));
}

}  // namespace polycanon
