#pragma once

#include <vector>

#include "iwq/types.hpp"

namespace iwq {

/// Gauss-Legendre rule on [-1,1]; exact for polynomials of degree <= 2n-1.
struct GaussRule {
  int order = 0;
  std::vector<double> points;   // ascending, symmetric about 0
  std::vector<double> weights;  // positive

  /// Points/weights mapped to [a,b].
  void mapped(double a, double b, std::vector<double>& x, std::vector<double>& w) const;
};

/// Newton iteration on the Legendre roots; 1 <= n <= 32.
GaussRule gauss_legendre(int n);

}  // namespace iwq
