#pragma once

// Nonlinear (f-deformed) coherent states: single-mode eigenstates of A_f and
// two-mode eigenstates of a_i f(n_1 + n_2), with Schmidt analysis.

#include <Eigen/Dense>
#include <vector>

#include "fosc/fock.hpp"
#include "fosc/nonlinearity.hpp"

namespace fosc {

struct CoherentStateVector {
  Complex alpha;
  NonlinearitySpec spec;
  /// c_n for n = 0..dim-1, unit norm.
  ComplexVector amplitudes;

  [[nodiscard]] Eigen::Index dim() const { return amplitudes.size(); }
  [[nodiscard]] DensityMatrix density() const { return DensityMatrix::pure(amplitudes); }
};

/// c_n proportional to alpha^n / (f(n)! sqrt(n!)), normalized over the kept levels.
///
/// Magnitudes are accumulated in log form and exponentiated after removing
/// the largest one, so super-exponential f(n)! neither overflows nor underflows.
/// Throws DegenerateDeformation if some f(k) <= 0 (k < dim) and TruncationError
/// if |c_{dim-1}|^2 >= tail.
[[nodiscard]] CoherentStateVector nonlinear_coherent_state(Complex alpha,
                                                           const NonlinearitySpec& spec,
                                                           Eigen::Index dim, double tail = 1e-12);

/// ||(A_f v - alpha v)_n|| restricted to n < dim - guard.
[[nodiscard]] double eigen_residual(const CoherentStateVector& state, Eigen::Index guard = 5);

/// psi(x) = sum_n c_n phi_n(x) on each x.
[[nodiscard]] ComplexVector position_wavefunction(const CoherentStateVector& state,
                                                  const std::vector<double>& x_axis);

struct TwoModeCoefficientMatrix {
  Complex alpha1;
  Complex alpha2;
  NonlinearitySpec spec;
  /// entries(n1, n2), unit Frobenius norm.
  ComplexMatrix entries;
};

/// c_{n1 n2} proportional to alpha1^n1 alpha2^n2 / (sqrt(n1! n2!) f(n1 + n2)!).
[[nodiscard]] TwoModeCoefficientMatrix two_mode_state(Complex alpha1, Complex alpha2,
                                                      const NonlinearitySpec& spec,
                                                      Eigen::Index dim1, Eigen::Index dim2,
                                                      double tail = 1e-12);

/// Residuals of A_1 = a_1 f(n_1 + n_2) and A_2 = a_2 f(n_1 + n_2) away from the
/// truncation edges (n_i < dim_i - guard).
struct TwoModeResiduals {
  double mode1 = 0.0;
  double mode2 = 0.0;
};
[[nodiscard]] TwoModeResiduals eigen_residuals(const TwoModeCoefficientMatrix& state,
                                               Eigen::Index guard = 5);

struct SchmidtSpectrum {
  /// Descending singular values of the coefficient matrix.
  Eigen::VectorXd singular_values;
  /// -sum s_k^2 log s_k^2 (natural log).
  double entropy = 0.0;
  /// s_2 < 1e-9.
  bool separable = true;

  static constexpr double kSeparabilityThreshold = 1e-9;
};

[[nodiscard]] SchmidtSpectrum schmidt_spectrum(const TwoModeCoefficientMatrix& state);

}  // namespace fosc
