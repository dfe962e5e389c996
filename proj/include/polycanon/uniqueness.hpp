#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "polycanon/circle.hpp"
#include "polycanon/poly.hpp"
#include "polycanon/root_operators.hpp"
#include "polycanon/scalar.hpp"
#include "polycanon/uni_series.hpp"

namespace polycanon {

struct containment_report {
  bool holds = false;        // the derivative/injectivity criterion
  bool containment = false;  // every root of Q located as a y-image inside the disk
  bool undecided = false;    // the Newton search could not settle containment
  bool agree = false;        // the two sides of the equivalence match
  cplx lead = 0.0;           // the constant q of the factorization
  std::vector<cplx> mapped_roots;
  double premise_residual = 0.0;
  double factor_residual = 0.0;  // only meaningful when holds
};

namespace detail {

inline bool newton_preimage(const uni_series& y, const uni_series& dy, cplx target, cplx seed,
                            double radius, double tol, cplx& out) {
  cplx z = seed;
  for (int it = 0; it < 80; ++it) {
    const cplx val = y.evaluate(z) - target;
    if (std::abs(val) <= tol) {
      out = z;
      return std::abs(z) < radius;
    }
    const cplx slope = dy.evaluate(z);
    if (std::abs(slope) < 1e-14) return false;
    z -= val / slope;
    if (std::abs(z) > 4.0 * radius) return false;  // wandered far outside
  }
  return false;
}

}  // namespace detail

/// Check the root-containment equivalence for P(z) = Q(y(z)) on the disk:
/// the criterion side (y' nonzero at every root of P, y injective on the
/// root set) is evaluated directly, the containment side by a Newton search
/// for a preimage of every root of Q, and the two are compared. When the
/// criterion holds, the factorization Q(w) = q * prod(w - y(z_i)) is
/// verified coefficientwise.
inline containment_report root_containment_check(const poly& p, const poly& q,
                                                 const uni_series& y, const disk_spec& disk,
                                                 double tol = 1e-8) {
  disk.validate();
  if (p.degree() != q.degree() || p.degree() < 1) {
    throw std::invalid_argument("root_containment_check: degrees must match and be positive");
  }
  const int k = p.degree();
  const double radius = disk.outer_radius;

  // premise: P = Q(y) as truncated series
  const uni_series composed = q.evaluate_at(y);
  double premise = 0.0;
  for (int n = 0; n <= y.trunc(); ++n) premise = std::max(premise, std::abs(composed.coeff(n) - p.coeff(n)));
  double scale = 1.0;
  for (int n = 0; n <= p.degree(); ++n) scale = std::max(scale, std::abs(p.coeff(n)));
  if (premise > tol * scale) {
    throw std::invalid_argument("root_containment_check: premise P = Q(y) violated beyond tolerance");
  }

  const std::vector<cplx> p_roots = p.roots();
  for (cplx z : p_roots) {
    if (!(std::abs(z) < radius)) {
      throw std::invalid_argument("root_containment_check: a root of P lies outside the disk");
    }
  }

  containment_report rep;
  rep.premise_residual = premise;

  const uni_series dy = y.derivative();
  rep.mapped_roots.reserve(p_roots.size());
  for (cplx z : p_roots) rep.mapped_roots.push_back(y.evaluate(z));

  bool criterion = true;
  for (std::size_t i = 0; i < p_roots.size(); ++i) {
    if (std::abs(dy.evaluate(p_roots[i])) <= tol) criterion = false;
    for (std::size_t j = i + 1; j < p_roots.size(); ++j) {
      const bool same_z = std::abs(p_roots[i] - p_roots[j]) <= 10.0 * root_cluster_radius;
      const bool same_y = std::abs(rep.mapped_roots[i] - rep.mapped_roots[j]) <= 10.0 * root_cluster_radius;
      if (same_z != same_y) criterion = false;
    }
  }
  rep.holds = criterion;

  // containment side: locate every root of Q as a y-image, Newton from the
  // roots of P (plus the origin) as seeds
  const std::vector<cplx> q_roots = q.roots();
  std::vector<cplx> seeds = p_roots;
  seeds.push_back(cplx{0.0, 0.0});
  bool all_found = true;
  for (cplx w : q_roots) {
    bool found = false;
    for (cplx seed : seeds) {
      cplx z{};
      if (detail::newton_preimage(y, dy, w, seed, radius, tol * (1.0 + std::abs(w)), z)) {
        found = true;
        break;
      }
    }
    all_found = all_found && found;
  }
  rep.containment = all_found;
  rep.undecided = criterion && !all_found;  // search failure despite the criterion
  rep.agree = (rep.holds == rep.containment);

  rep.lead = q.coeff(q.degree());
  if (rep.holds) {
    const poly factored = poly::from_roots(rep.mapped_roots, rep.lead);
    double dev = 0.0;
    for (int n = 0; n <= k; ++n) dev = std::max(dev, std::abs(factored.coeff(n) - q.coeff(n)));
    rep.factor_residual = dev;
  }
  return rep;
}

/// Sampled circle norm of prod(z - z_i) - prod(y(z) - y(z_i)) at the
/// working radius: the defect of y as a solution of the root-product
/// functional equation.
inline double functional_residual(const uni_series& y, const root_config& cfg) {
  if (y.coeff(0) != cplx{0.0, 0.0}) {
    throw std::domain_error("functional_residual: y must vanish at 0");
  }
  std::vector<cplx> images;
  images.reserve(cfg.roots.size());
  for (cplx z : cfg.roots) images.push_back(y.evaluate(z));
  auto defect = [&](cplx z) {
    cplx lhs = 1.0;
    for (cplx a : cfg.roots) lhs *= (z - a);
    cplx rhs = 1.0;
    const cplx yz = y.evaluate(z);
    for (cplx w : images) rhs *= (yz - w);
    return lhs - rhs;
  };
  return circle_max(defect, cfg.disk.working_radius, cfg.disk.samples);
}

struct gap_report {
  double lhs = 0.0;             // sampled norm of the functional defect
  double rhs_bound = 0.0;       // inf|p| * (k c |f| - C_k |f|^2)
  double rhs_bound_coarse = 0.0;  // same with the coarser constant (1 + 2/rho)^k
  double c = 0.0;               // stability constant
  double quad_const = 0.0;      // C_k = (1 + 2/(r-rho))^k
  double delta = 0.0;           // min(1, k c / C_k)
  double perturbation_norm = 0.0;
  bool verdict = false;
};

/// Lower-bound certificate for the functional equation: any y = Id + f with
/// 0 < |f|_r <= delta has a strictly positive defect, bounded below by
/// inf|p| * (k c |f|_r - C_k |f|_r^2). The verdict records whether the
/// sampled defect clears that bound with 1% slack whenever |f|_r <= delta.
inline gap_report uniqueness_gap(const uni_series& y, const root_config& cfg) {
  if (y.coeff(0) != cplx{0.0, 0.0}) {
    throw std::domain_error("uniqueness_gap: y must vanish at 0");
  }
  const double r = cfg.disk.working_radius;
  const double rho = cfg.rho;
  const int k = cfg.k();

  gap_report rep;
  rep.c = stability_constant(cfg);
  rep.quad_const = std::pow(1.0 + 2.0 / (r - rho), k);
  rep.delta = std::min(1.0, k * rep.c / rep.quad_const);

  const uni_series f = y - uni_series::identity(y.trunc());
  rep.perturbation_norm = circle_norm(f, r, cfg.disk.samples);
  rep.lhs = functional_residual(y, cfg);

  const poly p = cfg.root_poly();
  const double inf_p = circle_min_abs([&](cplx z) { return p.evaluate(z); }, r, cfg.disk.samples);
  const double nf = rep.perturbation_norm;
  rep.rhs_bound = inf_p * (k * rep.c * nf - rep.quad_const * nf * nf);
  if (rho > 0.0) {
    const double coarse = std::pow(1.0 + 2.0 / rho, k);
    rep.rhs_bound_coarse = inf_p * (k * rep.c * nf - coarse * nf * nf);
  }

  rep.verdict = (nf > rep.delta) || (rep.lhs >= rep.rhs_bound * 0.99);
  return rep;
}

}  // namespace polycanon
