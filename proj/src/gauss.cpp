#include "iwq/gauss.hpp"

#include <cmath>

namespace iwq {

void GaussRule::mapped(double a, double b, std::vector<double>& x, std::vector<double>& w) const {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  x.resize(points.size());
  w.resize(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    x[k] = mid + half * points[k];
    w[k] = half * weights[k];
  }
}

GaussRule gauss_legendre(int n) {
  if (n < 1 || n > 32) throw std::invalid_argument("gauss_legendre: order out of range [1,32]");
  GaussRule rule;
  rule.order = n;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess for the i-th root (descending).
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.points[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    rule.weights[static_cast<std::size_t>(i)] = w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace iwq
