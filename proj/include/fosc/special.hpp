#pragma once

// Orthogonal-polynomial machinery shared by the phase-space modules.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fosc {

/// Normalized Hermite functions phi_0(x) ... phi_{count-1}(x),
/// phi_n(x) = exp(-x^2/2) H_n(x) / (pi^{1/4} sqrt(2^n n!)).
///
/// Uses the three-term recurrence on the normalized functions
///   phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1},
/// which never forms H_n or n! and stays finite for large n.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> hermite_functions(Scalar x, Eigen::Index count) {
  using std::exp;
  using std::sqrt;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> phi(count);
  if (count == 0) return phi;
  const Scalar quarter_root_pi = Scalar(std::pow(std::numbers::pi, 0.25));
  phi(0) = exp(-x * x / Scalar(2)) / quarter_root_pi;
  if (count > 1) phi(1) = sqrt(Scalar(2)) * x * phi(0);
  for (Eigen::Index n = 1; n + 1 < count; ++n) {
    const Scalar np1 = Scalar(n + 1);
    phi(n + 1) = sqrt(Scalar(2) / np1) * x * phi(n) - sqrt(Scalar(n) / np1) * phi(n - 1);
  }
  return phi;
}

/// Physicists' Hermite polynomial H_n(x) by H_{k+1} = 2x H_k - 2k H_{k-1}.
template <typename Scalar = double>
Scalar hermite_polynomial(int n, Scalar x) {
  if (n < 0) throw std::invalid_argument("hermite_polynomial: n < 0");
  Scalar prev = Scalar(1);
  if (n == 0) return prev;
  Scalar cur = Scalar(2) * x;
  for (int k = 1; k < n; ++k) {
    const Scalar next = Scalar(2) * x * cur - Scalar(2 * k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Generalized Laguerre polynomials L_0^{(k)}(x) ... L_{count-1}^{(k)}(x).
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> laguerre_polynomials(Eigen::Index count, Scalar k,
                                                              Scalar x) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> L(count);
  if (count == 0) return L;
  L(0) = Scalar(1);
  if (count > 1) L(1) = Scalar(1) + k - x;
  for (Eigen::Index j = 1; j + 1 < count; ++j) {
    const Scalar jj = Scalar(j);
    L(j + 1) = ((Scalar(2) * jj + Scalar(1) + k - x) * L(j) - (jj + k) * L(j - 1)) / (jj + 1);
  }
  return L;
}

/// Gauss-Legendre nodes and weights on [a, b].
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

QuadratureRule gauss_legendre(int count, double a = -1.0, double b = 1.0);

/// count uniformly spaced points from lo to hi inclusive.
struct UniformAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  [[nodiscard]] double step() const { return count > 1 ? (hi - lo) / (count - 1) : 0.0; }
  [[nodiscard]] double operator[](int i) const {
    return count > 1 ? lo + (hi - lo) * static_cast<double>(i) / (count - 1) : lo;
  }
  [[nodiscard]] std::vector<double> points() const {
    std::vector<double> p(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) p[static_cast<std::size_t>(i)] = (*this)[i];
    return p;
  }
};

/// Composite trapezoid rule for samples on a uniform grid.
template <typename Vector>
auto trapezoid(const Vector& values, double step) {
  using Value = std::decay_t<decltype(values[0])>;
  const auto n = static_cast<Eigen::Index>(values.size());
  Value sum{};
  if (n == 0) return sum;
  for (Eigen::Index i = 0; i < n; ++i) sum += values[i];
  sum -= (values[0] + values[n - 1]) / 2.0;
  return sum * step;
}

}  // namespace fosc
