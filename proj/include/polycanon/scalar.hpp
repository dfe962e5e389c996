#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace polycanon {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Tolerances shared across the library.
inline constexpr double coeff_drop_tol = 1e-14;      // sparse stores discard below this
inline constexpr double axis_rel_tol = 1e-10;        // vanishing-order detection, relative
inline constexpr double root_cluster_radius = 1e-6;  // multiplicity clustering
inline constexpr double default_root_tol = 1e-8;     // residual bound in the root finder

inline bool is_finite(cplx v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline void require_finite(cplx v, const char* what) {
  if (!is_finite(v)) {
    throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

// m-th root of w, branch b in {0..m-1}. Branch 0 is the principal root
// (argument in (-pi/m, pi/m]); branch b rotates it by exp(2*pi*i*b/m).
inline cplx nth_root_scalar(cplx w, int m, int branch) {
  if (m <= 0) throw std::invalid_argument("nth_root_scalar: order must be positive");
  if (branch < 0 || branch >= m) throw std::invalid_argument("nth_root_scalar: branch out of range");
  if (w == cplx{0.0, 0.0}) return {0.0, 0.0};
  const double mag = std::pow(std::abs(w), 1.0 / m);
  const double ang = (std::arg(w) + 2.0 * pi * branch) / m;
  return std::polar(mag, ang);
}

}  // namespace polycanon
