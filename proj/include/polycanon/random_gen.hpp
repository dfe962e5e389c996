#pragma once

#include <random>
#include <vector>

#include "polycanon/circle.hpp"
#include "polycanon/levinson.hpp"
#include "polycanon/multi_series.hpp"
#include "polycanon/root_operators.hpp"
#include "polycanon/uni_series.hpp"
#include "polycanon/weierstrass.hpp"

namespace polycanon {

// Deterministic sample generators shared by the test suites and the CLI.

inline cplx random_cplx(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

inline uni_series random_uni_series(std::mt19937_64& rng, int trunc, double scale = 1.0,
                                    bool zero_constant = false) {
  uni_series s(trunc);
  for (int n = zero_constant ? 1 : 0; n <= trunc; ++n) s.set_coeff(n, random_cplx(rng, scale));
  return s;
}

inline multi_series random_multi_series(std::mt19937_64& rng, int nvars, int trunc,
                                        double scale = 1.0) {
  multi_series s(nvars, trunc);
  for (int g = 0; g <= trunc; ++g) {
    for_each_monomial(nvars, g, [&](const multi_index& e) { s.set_coeff(e, random_cplx(rng, scale)); });
  }
  return s;
}

inline root_config random_root_config(std::mt19937_64& rng, int k, double rho_max,
                                      const disk_spec& disk) {
  std::uniform_real_distribution<double> radial(0.0, rho_max);
  std::uniform_real_distribution<double> angular(0.0, 2.0 * pi);
  std::vector<cplx> roots;
  roots.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) roots.push_back(std::polar(radial(rng), angular(rng)));
  return root_config(std::move(roots), disk);
}

/// Random perturbation in the subspace vanishing at 0, rescaled so its
/// sampled circle norm at radius r equals the target.
inline uni_series perturbation_with_norm(std::mt19937_64& rng, int trunc, double r,
                                         double target_norm, int samples = 1024) {
  uni_series f = random_uni_series(rng, trunc, 1.0, /*zero_constant=*/true);
  const double norm = circle_norm(f, r, samples);
  return f * cplx{target_norm / norm, 0.0};
}

/// Random Weierstrass data (unit, monic factor) whose coefficients respect
/// the truncation caps of the preparation solve, plus the assembled germ.
/// Preparation applied to the germ recovers the data to roundoff.
struct weierstrass_sample {
  multi_series germ;
  multi_series unit;                // total degree <= N - k
  std::vector<multi_series> lower;  // u_j of total degree <= N - j, zero constant term
};

inline weierstrass_sample random_weierstrass_sample(std::mt19937_64& rng, int nvars, int k,
                                                    int n_trunc, double scale = 0.5) {
  multi_series unit(nvars, n_trunc);
  for (int g = 0; g <= n_trunc - k; ++g) {
    for_each_monomial(nvars, g, [&](const multi_index& e) { unit.set_coeff(e, random_cplx(rng, scale)); });
  }
  // keep the unit a unit
  multi_index zero(static_cast<std::size_t>(nvars), 0);
  unit.set_coeff(zero, unit.coeff(zero) + cplx{1.5, 0.0});

  std::vector<multi_series> lower;
  lower.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    multi_series uj(nvars - 1, n_trunc);
    for (int g = 1; g <= n_trunc - j; ++g) {
      for_each_monomial(nvars - 1, g, [&](const multi_index& e) { uj.set_coeff(e, random_cplx(rng, scale)); });
    }
    lower.push_back(std::move(uj));
  }

  weierstrass_form form;
  form.k = k;
  form.trunc = n_trunc;
  form.unit = unit;
  form.lower = lower;
  weierstrass_sample sample;
  sample.germ = unit * form.weierstrass_poly();
  sample.unit = std::move(unit);
  sample.lower = std::move(lower);
  return sample;
}

/// Random canonical-form data (coefficient functions, auxiliary variable)
/// respecting the decomposition caps, plus the assembled germ.
struct levinson_sample {
  multi_series germ;
  std::vector<multi_series> coeff_fns;  // v_j, grades <= N - j; v_j(0') = 0 for j < k
  multi_series aux;                     // normalized x, total degree <= N - k + 1
};

inline levinson_sample random_levinson_sample(std::mt19937_64& rng, int nvars, int k, int n_trunc,
                                              double scale = 0.4) {
  std::vector<multi_series> v;
  v.reserve(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    multi_series vj(nvars - 1, n_trunc);
    for (int g = (j < k ? 1 : 0); g <= n_trunc - j; ++g) {
      for_each_monomial(nvars - 1, g, [&](const multi_index& e) { vj.set_coeff(e, random_cplx(rng, scale)); });
    }
    if (j == k) {
      multi_index zero(static_cast<std::size_t>(nvars - 1), 0);
      vj.set_coeff(zero, vj.coeff(zero) + cplx{1.5, 0.0});
    }
    v.push_back(std::move(vj));
  }

  multi_series x(nvars, n_trunc);
  multi_index axis1(static_cast<std::size_t>(nvars), 0);
  axis1.back() = 1;
  x.set_coeff(axis1, 1.0);  // dx/dt_d(t',0) = 1, imposed exactly
  for (int m = 0; m <= n_trunc; ++m) {
    for_each_monomial(nvars - 1, m, [&](const multi_index& mu) {
      for (int i = 2; i <= n_trunc - m - k + 1; ++i) {
        multi_index e = mu;
        e.push_back(i);
        x.set_coeff(e, random_cplx(rng, scale));
      }
    });
  }

  levinson_form form;
  form.k = k;
  form.trunc = n_trunc;
  form.coeff_fns = v;
  form.aux = x;
  levinson_sample sample;
  sample.germ = form.combine();
  sample.coeff_fns = std::move(v);
  sample.aux = std::move(x);
  return sample;
}

}  // namespace polycanon
