#pragma once

#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "polycanon/circle.hpp"
#include "polycanon/poly.hpp"
#include "polycanon/scalar.hpp"
#include "polycanon/uni_series.hpp"

namespace polycanon {

/// A finite root configuration z_1..z_k (with multiplicity) inside a disk,
/// in the regime 2 * max|z_i| < r < R.
struct root_config {
  std::vector<cplx> roots;
  double rho = 0.0;  // max modulus of the roots
  disk_spec disk;

  root_config(std::vector<cplx> roots_in, disk_spec disk_in)
      : roots(std::move(roots_in)), disk(disk_in) {
    if (roots.empty()) throw std::invalid_argument("root_config: need at least one root");
    disk.validate();
    for (cplx z : roots) {
      require_finite(z, "root_config");
      rho = std::max(rho, std::abs(z));
    }
    if (!(2.0 * rho < disk.working_radius)) {
      throw std::invalid_argument("root_config: regime violation, need 2*max|z_i| < r");
    }
  }

  int k() const { return static_cast<int>(roots.size()); }

  poly root_poly() const { return poly::from_roots(roots); }
};

/// Averaged power sums of the roots: a_n = (1/k) sum_j z_j^n, with the
/// convention 0^0 = 1 so a_0 = 1.
inline std::vector<cplx> root_power_means(const root_config& cfg, int n_max) {
  if (n_max < 0) throw std::invalid_argument("root_power_means: negative length");
  const int k = cfg.k();
  std::vector<cplx> alphas(static_cast<std::size_t>(n_max) + 1);
  std::vector<cplx> pw(cfg.roots.size(), cplx{1.0, 0.0});
  for (int n = 0; n <= n_max; ++n) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < pw.size(); ++j) {
      acc += pw[j];
      pw[j] *= cfg.roots[j];
    }
    alphas[static_cast<std::size_t>(n)] = acc / static_cast<double>(k);
  }
  return alphas;
}

/// Coefficients of the reciprocal of A(z) = sum alphas_n z^n, by the
/// convolution recurrence b_0 = 1, b_n = -sum_{j=1}^n a_j b_{n-j}.
inline std::vector<cplx> reciprocal_coeffs(std::span<const cplx> alphas) {
  if (alphas.empty() || alphas[0] != cplx{1.0, 0.0}) {
    throw std::invalid_argument("reciprocal_coeffs: leading coefficient must be 1");
  }
  std::vector<cplx> betas(alphas.size());
  betas[0] = 1.0;
  for (std::size_t n = 1; n < alphas.size(); ++n) {
    cplx acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) acc += alphas[j] * betas[n - j];
    betas[n] = -acc;
  }
  return betas;
}

/// The averaged difference-quotient operator
///   f |-> (1/k) sum_j (f(z) - f(z_j)) / (z - z_j),
/// each quotient taken by exact synthetic division of the truncated series,
/// so the removable singularity never appears. Requires f(0) = 0; the
/// result loses one degree.
inline uni_series mean_divided_difference(const uni_series& f, const root_config& cfg) {
  if (f.coeff(0) != cplx{0.0, 0.0}) {
    throw std::domain_error("mean_divided_difference: constant term must vanish");
  }
  const int n = f.trunc();
  if (n < 1) return uni_series(0);
  uni_series out(n - 1);
  for (cplx a : cfg.roots) {
    // quotient of f by (z - a); the remainder f(a) is exactly the value
    // subtracted by the difference quotient
    cplx carry = f.coeff(n);
    uni_series q(n - 1);
    for (int i = n - 1; i >= 0; --i) {
      q.set_coeff(i, carry);
      carry = f.coeff(i) + a * carry;
    }
    out = out + q;
  }
  return out * (1.0 / static_cast<double>(cfg.k()));
}

/// The explicit series inverse of the averaged difference quotient:
///   f |-> z * sum_j ( sum_{l >= j} f_l b_{l-j} ) z^j
/// truncated at n_trunc. Always lands in the subspace vanishing at 0.
inline uni_series mean_divided_difference_inverse(const uni_series& f, const root_config& cfg,
                                                  int n_trunc) {
  const std::vector<cplx> alphas = root_power_means(cfg, f.trunc());
  const std::vector<cplx> betas = reciprocal_coeffs(alphas);
  uni_series out(n_trunc);
  for (int j = 0; j + 1 <= n_trunc; ++j) {
    cplx acc = 0.0;
    for (int l = j; l <= f.trunc(); ++l) acc += f.coeff(l) * betas[static_cast<std::size_t>(l - j)];
    out.set_coeff(j + 1, acc);
  }
  return out;
}

/// The configuration-specific lower-bound constant
///   c = inf_{|z|=r} |(1/k) sum_j 1/(z-z_j)| * (1 + (rho/r)/(1-2 rho/r)^3)^{-1},
/// the inf estimated by circle sampling with one refinement.
inline double stability_constant(const root_config& cfg) {
  const double r = cfg.disk.working_radius;
  const double rho = cfg.rho;
  if (!(2.0 * rho < r)) throw std::domain_error("stability_constant: regime violation");
  auto mean_resolvent = [&](cplx z) {
    cplx acc = 0.0;
    for (cplx a : cfg.roots) acc += 1.0 / (z - a);
    return acc / static_cast<double>(cfg.k());
  };
  const double inf_part = circle_min_abs(mean_resolvent, r, std::max(2048, cfg.disk.samples));
  const double q = rho / r;
  const double correction = 1.0 + q / std::pow(1.0 - 2.0 * q, 3);
  return inf_part / correction;
}

/// Estimate of the uniform constant: the minimum of the per-configuration
/// constant over random configurations with max|z_i| <= rho.
inline double stability_constant_min(int k, double rho, const disk_spec& disk, int trials,
                                     std::uint64_t seed) {
  if (k < 1 || trials < 1) throw std::invalid_argument("stability_constant_min: bad arguments");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radial(0.0, rho);
  std::uniform_real_distribution<double> angular(0.0, 2.0 * pi);
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> roots;
    roots.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) roots.push_back(std::polar(radial(rng), angular(rng)));
    best = std::min(best, stability_constant(root_config(std::move(roots), disk)));
  }
  return best;
}

}  // namespace polycanon
