#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "polycanon/scalar.hpp"
#include "polycanon/uni_series.hpp"

namespace polycanon {

/// A product of analytic factors raised to integer powers, together with
/// the target coefficient index: [z^n0] prod_i f_i(z)^{n_i}.
struct factor_system {
  std::vector<uni_series> factors;
  std::vector<long long> weights;
  long long target_power = 0;

  void validate() const {
    if (factors.empty() || factors.size() != weights.size()) {
      throw std::invalid_argument("factor_system: factors and weights must align");
    }
    for (const uni_series& f : factors) {
      if (f.coeff(0) == cplx{0.0, 0.0}) {
        throw std::invalid_argument("factor_system: factor with vanishing constant term");
      }
    }
    for (long long w : weights) {
      if (w < 0) throw std::invalid_argument("factor_system: negative weight");
    }
    if (target_power < 0) throw std::invalid_argument("factor_system: negative target power");
  }

  double weight_norm() const {  // 1-norm of (n0, n)
    double s = static_cast<double>(target_power);
    for (long long w : weights) s += static_cast<double>(w);
    return s;
  }
};

/// Normalized direction (t0, t) with unit 1-norm.
struct direction {
  double t0 = 0.0;
  std::vector<double> t;

  void validate() const {
    if (t0 < 0.0) throw std::invalid_argument("direction: negative t0");
    double s = t0;
    for (double v : t) {
      if (v < 0.0) throw std::invalid_argument("direction: negative coordinate");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-9) throw std::invalid_argument("direction: 1-norm must be 1");
  }
};

inline direction direction_of(const factor_system& sys) {
  const double norm = sys.weight_norm();
  if (norm <= 0.0) throw std::invalid_argument("direction_of: zero weight vector");
  direction d;
  d.t0 = static_cast<double>(sys.target_power) / norm;
  d.t.reserve(sys.weights.size());
  for (long long w : sys.weights) d.t.push_back(static_cast<double>(w) / norm);
  return d;
}

struct critical_point {
  double x = 0.0;
  direction dir;
  bool minimal = false;
  double residual = 0.0;
};

namespace detail {

// sum_i t_i * x f_i'(x)/f_i(x) - t0 at real x
inline cplx balance_defect(const factor_system& sys, const direction& dir, double x) {
  cplx acc = -dir.t0;
  for (std::size_t i = 0; i < sys.factors.size(); ++i) {
    if (dir.t[i] == 0.0) continue;
    const cplx f = sys.factors[i].evaluate(x);
    if (f == cplx{0.0, 0.0}) throw std::domain_error("critical point: factor vanishes on the axis");
    const cplx df = sys.factors[i].derivative().evaluate(x);
    acc += dir.t[i] * x * df / f;
  }
  return acc;
}

inline cplx balance_slope(const factor_system& sys, const direction& dir, double x) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < sys.factors.size(); ++i) {
    if (dir.t[i] == 0.0) continue;
    const cplx f = sys.factors[i].evaluate(x);
    const cplx df = sys.factors[i].derivative().evaluate(x);
    const cplx ddf = sys.factors[i].derivative().derivative().evaluate(x);
    const cplx lg = df / f;
    acc += dir.t[i] * (lg + x * ddf / f - x * lg * lg);
  }
  return acc;
}

}  // namespace detail

/// Solve t0 = sum_i t_i x f_i'(x)/f_i(x) for x > 0 by safeguarded Newton
/// inside a sign-change bracket grown from the initial guess.
inline critical_point find_critical_point(const factor_system& sys, const direction& dir,
                                          double guess = 1.0) {
  sys.validate();
  dir.validate();
  if (dir.t.size() != sys.factors.size()) {
    throw std::invalid_argument("find_critical_point: direction dimension mismatch");
  }
  if (dir.t0 == 0.0) {
    throw std::domain_error(
        "find_critical_point: degenerate direction, t0 = 0 puts the critical point at the origin");
  }
  if (!(guess > 0.0)) throw std::invalid_argument("find_critical_point: guess must be positive");

  auto g = [&](double x) { return detail::balance_defect(sys, dir, x).real(); };

  double lo = guess, hi = guess;
  double glo = g(lo);
  double ghi = glo;
  for (int it = 0; it < 200 && glo > 0.0; ++it) {
    lo *= 0.5;
    glo = g(lo);
  }
  // a saturating balance function (e.g. x/(1+x) -> 1) must not fake a
  // bracket through rounding, so the upper end needs a strict sign change
  for (int it = 0; it < 40 && !(ghi > 1e-13); ++it) {
    hi *= 2.0;
    ghi = g(hi);
  }
  if (!(glo <= 0.0) || !(ghi > 1e-13)) {
    throw std::domain_error("find_critical_point: direction outside the admissible cone");
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (gx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = detail::balance_slope(sys, dir, x).real();
    double next = (slope != 0.0) ? x - gx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x)) && std::abs(gx) <= 1e-12) {
      x = next;
      break;
    }
    x = next;
    if (std::abs(g(x)) <= 1e-15) break;
  }

  critical_point cp;
  cp.x = x;
  cp.dir = dir;
  cp.residual = std::abs(detail::balance_defect(sys, dir, x));
  if (cp.residual > 1e-10) {
    throw std::runtime_error("find_critical_point: residual bound not reached");
  }
  return cp;
}

struct minimality_report {
  bool strict = false;
  double margin = 0.0;  // smallest log-modulus gap over the sampled circle
};

/// Sampled check that the weighted factor moduli on |z| = x are strictly
/// maximized at z = x. Sampling cannot certify strictness between samples;
/// the margin reports the observed gap.
inline minimality_report check_minimality(const factor_system& sys, const critical_point& cp,
                                          int samples = 1024) {
  sys.validate();
  if (samples < 64) throw std::invalid_argument("check_minimality: need at least 64 samples");
  auto log_weighted = [&](cplx z) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sys.factors.size(); ++i) {
      if (cp.dir.t[i] == 0.0) continue;
      acc += cp.dir.t[i] * std::log(std::abs(sys.factors[i].evaluate(z)));
    }
    return acc;
  };
  const double at_x = log_weighted(cp.x);
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 1; j < samples; ++j) {
    const double theta = 2.0 * pi * j / samples;
    margin = std::min(margin, at_x - log_weighted(std::polar(cp.x, theta)));
  }
  return {margin > 1e-12, margin};
}

/// Phase of the saddle integrand,
///   F(theta) = i t0 theta - sum_i t_i (log f_i(x e^{i theta}) - log f_i(x)),
/// with the logs continued from theta = 0 along the arc (no principal-branch
/// jumps). Throws if a factor vanishes on the path.
inline cplx phase_value(const factor_system& sys, const critical_point& cp, double theta) {
  sys.validate();
  if (std::abs(theta) > pi + 1e-12) throw std::invalid_argument("phase_value: |theta| must be <= pi");

  int steps = std::max(32, static_cast<int>(std::ceil(std::abs(theta) / 0.02)));
  for (int attempt = 0; attempt < 12; ++attempt, steps *= 2) {
    bool ok = true;
    cplx log_sum = 0.0;  // sum_i t_i (log f_i(x e^{i tau}) - log f_i(x)) accumulated
    for (std::size_t i = 0; i < sys.factors.size() && ok; ++i) {
      if (cp.dir.t[i] == 0.0) continue;
      cplx prev = sys.factors[i].evaluate(cp.x);
      if (prev == cplx{0.0, 0.0}) throw std::domain_error("phase_value: factor vanishes at x");
      cplx acc = 0.0;
      for (int s = 1; s <= steps; ++s) {
        const double tau = theta * s / steps;
        const cplx cur = sys.factors[i].evaluate(std::polar(cp.x, tau));
        if (std::abs(cur) < 1e-280) {
          throw std::domain_error("phase_value: factor vanishes on the circle, branch tracking failed");
        }
        const cplx ratio = cur / prev;
        if (std::abs(ratio - 1.0) > 0.5) {
          ok = false;  // step too coarse for a safe principal log
          break;
        }
        acc += std::log(ratio);
        prev = cur;
      }
      log_sum += cp.dir.t[i] * acc;
    }
    if (ok) return cplx{0.0, 1.0} * cp.dir.t0 * theta - log_sum;
  }
  throw std::runtime_error("phase_value: branch tracking failed to resolve the path");
}

/// F''(0) from the series derivatives of the factors.
inline cplx phase_curvature(const factor_system& sys, const critical_point& cp) {
  return detail::balance_slope(sys, cp.dir, cp.x) * cp.x;
}

/// Exact Cauchy-coefficient quadrature on the circle of the given radius:
/// trapezoid nodes, integrand evaluated through integer powers of the
/// factor ratios. Exact for polynomial mixed powers once the node count
/// exceeds the frequency span.
inline cplx contour_coefficient(const factor_system& sys, double radius, int nodes) {
  sys.validate();
  if (!(radius > 0.0)) throw std::invalid_argument("contour_coefficient: radius must be positive");
  if (nodes < 4) throw std::invalid_argument("contour_coefficient: too few nodes");

  auto ipow = [](cplx b, long long e) {
    cplx acc = 1.0;
    while (e > 0) {
      if (e & 1) acc *= b;
      b *= b;
      e >>= 1;
    }
    return acc;
  };

  cplx mean = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double theta = -pi + 2.0 * pi * j / nodes;
    const cplx z = std::polar(radius, theta);
    cplx w = std::polar(1.0, -static_cast<double>(sys.target_power) * theta);
    for (std::size_t i = 0; i < sys.factors.size(); ++i) {
      w *= ipow(sys.factors[i].evaluate(z), sys.weights[i]);
    }
    mean += w;
  }
  mean /= static_cast<double>(nodes);
  return mean * std::pow(radius, -static_cast<double>(sys.target_power));
}

struct coefficient_estimate {
  double estimate = 0.0;
  double imag_ratio = 0.0;      // |imag| of the raw estimate relative to its modulus
  double prefactor = 0.0;       // x^{-n0} prod f_i(x)^{n_i}
  double integral = 0.0;        // value of the saddle integral
  double gaussian_leading = 0.0;
  double curvature = 0.0;       // F''(0)
  int nodes = 0;
  critical_point cp;
};

/// Saddle estimate of [z^n0] prod f_i^{n_i}: locate the strictly minimal
/// critical point for the direction (n0, n)/|(n0, n)|_1 and integrate the
/// saddle integrand over the circle through it.
inline coefficient_estimate estimate_coefficient(const factor_system& sys, double guess = 1.0,
                                                 int minimality_samples = 1024) {
  sys.validate();
  const direction dir = direction_of(sys);
  critical_point cp = find_critical_point(sys, dir, guess);
  const minimality_report mr = check_minimality(sys, cp, minimality_samples);
  if (!mr.strict) {
    throw std::domain_error("estimate_coefficient: critical point is not strictly minimal");
  }
  cp.minimal = true;

  const double norm = sys.weight_norm();
  const int d = static_cast<int>(sys.factors.size());
  const int nodes =
      std::max(256, 8 * static_cast<int>(std::ceil(std::sqrt(norm))) * d);

  const cplx raw = contour_coefficient(sys, cp.x, nodes);

  auto ipow = [](cplx b, long long e) {
    cplx acc = 1.0;
    while (e > 0) {
      if (e & 1) acc *= b;
      b *= b;
      e >>= 1;
    }
    return acc;
  };
  cplx pref = std::pow(cp.x, -static_cast<double>(sys.target_power));
  for (std::size_t i = 0; i < sys.factors.size(); ++i) {
    pref *= ipow(sys.factors[i].evaluate(cp.x), sys.weights[i]);
  }

  coefficient_estimate out;
  out.cp = cp;
  out.nodes = nodes;
  out.estimate = raw.real();
  out.imag_ratio = std::abs(raw) > 0.0 ? std::abs(raw.imag()) / std::abs(raw) : 0.0;
  out.prefactor = pref.real();
  // integral of exp(-|n| F) over [-pi, pi]; raw = prefactor * integral / (2 pi)
  out.integral = (pref != cplx{0.0, 0.0}) ? (raw / pref * 2.0 * pi).real() : 0.0;
  const cplx curv = phase_curvature(sys, cp);
  out.curvature = curv.real();
  out.gaussian_leading = (pref / std::sqrt(2.0 * pi * norm * curv)).real();
  return out;
}

/// [z^n0] prod f_i^{n_i} by truncated binary powering; exact up to
/// floating-point rounding. Every factor must carry coefficients up to the
/// target power.
inline cplx exact_coefficient(const factor_system& sys) {
  sys.validate();
  const int n0 = static_cast<int>(sys.target_power);
  uni_series acc = uni_series::constant(n0, 1.0);
  for (std::size_t i = 0; i < sys.factors.size(); ++i) {
    if (sys.factors[i].trunc() < n0) {
      throw std::domain_error("exact_coefficient: factor truncation below the target power");
    }
    acc = acc * sys.factors[i].truncated(n0).pow(static_cast<int>(sys.weights[i]));
  }
  return acc.coeff(n0);
}

}  // namespace polycanon
