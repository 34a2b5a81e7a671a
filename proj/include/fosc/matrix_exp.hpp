#pragma once

// Scaling-and-squaring matrix exponential for small dense matrices.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fosc/errors.hpp"

namespace fosc {

struct ExpmOptions {
  /// Taylor series stops once ||term||_1 <= tolerance * ||sum||_1.
  double tolerance = 1e-12;
  /// Scaled matrix norm bound; the matrix is divided by 2^s until ||A/2^s||_1 <= this.
  double scaled_norm = 0.5;
  int max_terms = 60;
};

/// exp(A) by scaling and squaring with a truncated Taylor series.
///
/// Throws NumericError when the series does not reach the tolerance within
/// max_terms (only possible for a non-finite input or absurd options).
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& a,
                                   const ExpmOptions& options = {}) {
  using Matrix = typename Derived::PlainObject;
  using RealScalar = typename Derived::RealScalar;
  eigen_assert(a.rows() == a.cols());
  const Eigen::Index n = a.rows();

  const RealScalar norm = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(static_cast<double>(norm))) {
    throw NumericError("expm: matrix has non-finite entries");
  }
  int squarings = 0;
  if (norm > options.scaled_norm) {
    squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm) / options.scaled_norm)));
  }
  const Matrix scaled = a / std::ldexp(RealScalar(1), squarings);

  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  bool converged = false;
  for (int k = 1; k <= options.max_terms; ++k) {
    term = (term * scaled) / RealScalar(k);
    sum += term;
    const RealScalar term_norm = term.cwiseAbs().colwise().sum().maxCoeff();
    const RealScalar sum_norm = sum.cwiseAbs().colwise().sum().maxCoeff();
    if (term_norm <= options.tolerance * sum_norm) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericError("expm: Taylor series did not reach tolerance in " +
                       std::to_string(options.max_terms) + " terms");
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace fosc
