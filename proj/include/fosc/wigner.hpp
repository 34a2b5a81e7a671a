#pragma once

// Standard and f-deformed Wigner functions of truncated density matrices,
//   W(q, p) = 2 Tr[P rho D(2 alpha)],  alpha = (q + i p)/sqrt(2).

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fosc/fock.hpp"
#include "fosc/matrix_exp.hpp"
#include "fosc/special.hpp"

namespace fosc {

struct WignerGrid {
  std::vector<double> q_axis;
  std::vector<double> p_axis;
  /// values(i, j) = W(q_axis[i], p_axis[j]).
  ComplexMatrix values;
  /// Trapezoid estimate of the integral of Re W dq dp / (2 pi) over the grid.
  double normalization = 0.0;
  double max_abs_imag = 0.0;
  /// Non-fatal diagnostics, e.g. a grid that misses part of the state.
  std::vector<std::string> warnings;
};

/// <m|D(beta)|n> for 0 <= m, n < dim, from the Laguerre closed form
///   sqrt(n!/m!) beta^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2),  m >= n,
/// and <m|D(beta)|n> = conj(<n|D(-beta)|m>) for m < n.
[[nodiscard]] ComplexMatrix displacement_matrix(Complex beta, Eigen::Index dim);

/// Single-point standard Wigner function.
[[nodiscard]] Complex wigner_point(const DensityMatrix& rho, double q, double p);

[[nodiscard]] WignerGrid wigner_from_density(const DensityMatrix& rho, const UniformAxis& q_axis,
                                             const UniformAxis& p_axis);

enum class ParityVariant {
  UsualParity,     // 2 Tr[P rho U_f(alpha)]
  DeformedParity,  // 2 Tr[exp(i pi A_f^+ A_f) rho U_f(alpha)]
};

enum class ExponentialMethod {
  ScalingSquaring,  // fresh exponential per phase point
  Spectral,         // one eigendecomposition of i (A_f^+ - A_f), reused for every point
};

struct DeformedWignerOptions {
  /// Extra Fock levels used for the exponential before trimming to dim.
  Eigen::Index padding = 10;
  ExponentialMethod method = ExponentialMethod::ScalingSquaring;
  ExpmOptions expm;
};

/// Padding that keeps D(2 alpha)|n>, n < dim, inside the padded space for
/// every |alpha| up to that of a phase point at distance `radius` from the
/// origin: mean 2 radius^2 plus eight standard deviations and a margin.
[[nodiscard]] Eigen::Index padding_for_radius(double radius);

/// Evaluates deformed Wigner values at arbitrary phase points for one state.
///
/// U_f(alpha) = exp(2(alpha A_f^+ - alpha* A_f)) is computed at dim + padding as
/// Phi exp(2|alpha| (A_f^+ - A_f)) Phi^+, Phi = diag(e^{i n arg alpha}), so only a
/// real antisymmetric matrix goes through the scaling-and-squaring exponential.
class DeformedWignerEvaluator {
 public:
  DeformedWignerEvaluator(const DensityMatrix& rho, const NonlinearitySpec& spec,
                          ParityVariant variant, DeformedWignerOptions options = {});

  [[nodiscard]] Complex operator()(double q, double p) const;

 private:
  ComplexMatrix weighted_rho_;  // parity (standard or deformed) times rho, dim x dim
  Eigen::MatrixXd generator_;   // A_f^+ - A_f at padded dimension
  Eigen::Index dim_;
  ExponentialMethod method_;
  ExpmOptions expm_;
  // Spectral method: i G = V diag(lambda) V^+, only the first dim rows of V kept.
  ComplexMatrix top_vectors_;
  Eigen::VectorXd eigenvalues_;
};

[[nodiscard]] WignerGrid deformed_wigner(const DensityMatrix& rho, const NonlinearitySpec& spec,
                                         ParityVariant variant, const UniformAxis& q_axis,
                                         const UniformAxis& p_axis,
                                         const DeformedWignerOptions& options = {});

}  // namespace fosc
