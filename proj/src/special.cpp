#include "fosc/special.hpp"

#include <cmath>
#include <numbers>

#include "fosc/errors.hpp"

namespace fosc {

QuadratureRule gauss_legendre(int count, double a, double b) {
  if (count < 1) throw InvalidArgument("gauss_legendre: count must be >= 1");
  QuadratureRule rule{Eigen::VectorXd(count), Eigen::VectorXd(count)};
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const int m = (count + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_count.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = mid - half * x;
    rule.nodes(count - 1 - i) = mid + half * x;
    rule.weights(i) = half * w;
    rule.weights(count - 1 - i) = half * w;
  }
  return rule;
}

}  // namespace fosc
