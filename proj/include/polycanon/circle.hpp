#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polycanon/poly.hpp"
#include "polycanon/scalar.hpp"
#include "polycanon/uni_series.hpp"

namespace polycanon {

/// Disk data for sampled sup-norms: outer radius R, working radius r,
/// and the circle sample count.
struct disk_spec {
  double outer_radius = 1.0;   // R
  double working_radius = 0.75;  // r
  int samples = 1024;          // M

  void validate() const {
    if (!(working_radius > 0.0) || !(working_radius < outer_radius)) {
      throw std::invalid_argument("disk_spec: need 0 < r < R");
    }
    if (samples < 64) throw std::invalid_argument("disk_spec: need at least 64 samples");
  }
};

namespace detail {

// golden-section search for the extremum of g on [a, b]; maximize when
// sign = +1, minimize when sign = -1
template <class G>
double golden_refine(G&& g, double a, double b, int sign) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double g1 = sign * g(x1);
  double g2 = sign * g(x2);
  for (int it = 0; it < 48; ++it) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + phi * (b - a);
      g2 = sign * g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - phi * (b - a);
      g1 = sign * g(x1);
    }
  }
  return sign * std::max(g1, g2);
}

}  // namespace detail

/// Sampled maximum of |f| on the circle of radius r, followed by one
/// golden-section refinement around the best sample. A certified lower
/// bound of the true sup-norm.
template <class F>
double circle_max(F&& f, double r, int samples) {
  if (!(r > 0.0)) throw std::invalid_argument("circle_max: radius must be positive");
  if (samples < 64) throw std::invalid_argument("circle_max: need at least 64 samples");
  auto g = [&](double theta) { return std::abs(f(std::polar(r, theta))); };
  double best = -1.0;
  double best_theta = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * pi * j / samples;
    const double v = g(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  const double h = 2.0 * pi / samples;
  const double refined = detail::golden_refine(g, best_theta - h, best_theta + h, +1);
  return std::max(best, refined);
}

/// Sampled minimum of |f| on the circle of radius r with one refinement.
template <class F>
double circle_min_abs(F&& f, double r, int samples) {
  if (!(r > 0.0)) throw std::invalid_argument("circle_min_abs: radius must be positive");
  if (samples < 64) throw std::invalid_argument("circle_min_abs: need at least 64 samples");
  auto g = [&](double theta) { return std::abs(f(std::polar(r, theta))); };
  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * pi * j / samples;
    const double v = g(theta);
    if (v < best) {
      best = v;
      best_theta = theta;
    }
  }
  const double h = 2.0 * pi / samples;
  const double refined = detail::golden_refine(g, best_theta - h, best_theta + h, -1);
  return std::min(best, refined);
}

inline double circle_norm(const uni_series& f, double r, int samples = 1024) {
  return circle_max([&](cplx z) { return f.evaluate(z); }, r, samples);
}

inline double circle_norm(const poly& p, double r, int samples = 1024) {
  return circle_max([&](cplx z) { return p.evaluate(z); }, r, samples);
}

}  // namespace polycanon
