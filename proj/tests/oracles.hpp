#pragma once

// Test-only oracles, independent of the library's evaluation and quadrature
// paths.

#include <cmath>
#include <vector>

#include "iwq/knot_vector.hpp"

namespace oracles {

/// Textbook Cox-de Boor recursion, B_{i,p}(u), evaluated by definition.
/// Half-open spans; the right domain endpoint is folded into the last span.
inline double cox_de_boor(const std::vector<double>& U, std::size_t i, int p, double u) {
  if (p == 0) {
    const bool last = (i + 2 == U.size()) || (U[i + 1] == U.back() && u == U.back());
    if (u >= U[i] && (u < U[i + 1] || (last && u == U[i + 1]))) return U[i] < U[i + 1] ? 1.0 : 0.0;
    return 0.0;
  }
  double left = 0.0, right = 0.0;
  const double d1 = U[i + static_cast<std::size_t>(p)] - U[i];
  if (d1 > 0.0) left = (u - U[i]) / d1 * cox_de_boor(U, i, p - 1, u);
  const double d2 = U[i + static_cast<std::size_t>(p) + 1] - U[i + 1];
  if (d2 > 0.0) right = (U[i + static_cast<std::size_t>(p) + 1] - u) / d2 * cox_de_boor(U, i + 1, p - 1, u);
  return left + right;
}

/// Gauss mass/stiffness pairing over [lo,hi] by midpoint-refined Simpson on a
/// fine subdivision; deliberately naive and independent of GaussRule.
inline double simpson_pairing(const iwq::UnivariateBasis& A, iwq::Index i, int da,
                              const iwq::UnivariateBasis& B, iwq::Index j, int db, double lo, double hi,
                              int cells_per_span = 64) {
  const double a = std::max({lo, A.support_lo(i), B.support_lo(j)});
  const double b = std::min({hi, A.support_hi(i), B.support_hi(j)});
  if (a >= b) return 0.0;
  // Subdivide at breakpoints so the integrand is smooth per cell.
  std::vector<double> cuts{a, b};
  for (double v : A.breakpoint_values())
    if (v > a && v < b) cuts.push_back(v);
  for (double v : B.breakpoint_values())
    if (v > a && v < b) cuts.push_back(v);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto f = [&](double u) { return A.value(i, u, da) * B.value(j, u, db); };
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double h = (cuts[c + 1] - cuts[c]) / cells_per_span;
    for (int k = 0; k < cells_per_span; ++k) {
      const double x0 = cuts[c] + k * h;
      total += h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
    }
  }
  return total;
}

}  // namespace oracles
