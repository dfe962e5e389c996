#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polycanon/scalar.hpp"

namespace polycanon {

/// Solve A x = b for a small dense complex system by LU with partial
/// pivoting. A is given row-major and consumed.
inline std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve_dense: shape mismatch");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("solve_dense: matrix not square");
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col][col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double v = std::abs(a[row][col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (best < 1e-300) throw std::runtime_error("solve_dense: numerically singular system");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const cplx factor = a[row][col] / a[col][col];
      if (factor == cplx{0.0, 0.0}) continue;
      a[row][col] = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }

  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace polycanon
