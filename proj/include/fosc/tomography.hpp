#pragma once

// Symplectic tomograms w(X, mu, nu): distributions of the observable
// mu q + nu p, for classical densities (Radon transform) and quantum states.

#include <vector>

#include "fosc/classical.hpp"
#include "fosc/fock.hpp"
#include "fosc/special.hpp"

namespace fosc {

/// Tomographic ray (mu, nu), mu^2 + nu^2 > 0.
struct Ray {
  double mu = 1.0;
  double nu = 0.0;

  /// Scaled-then-rotated frame: mu = s cos(theta), nu = sin(theta)/s.
  static Ray from_frame(double s, double theta);
  [[nodiscard]] double length() const;  // sqrt(mu^2 + nu^2)
  [[nodiscard]] double angle() const;   // atan2(nu, mu)
};

struct TomogramSlice {
  double mu = 1.0;
  double nu = 0.0;
  std::vector<double> X_axis;
  std::vector<double> values;
  /// Trapezoid estimate of the integral of w over X_axis.
  double norm_check = 0.0;
  [[nodiscard]] double min_value() const;
};

/// Throws DegenerateRay when mu = nu = 0.
void require_ray(double mu, double nu);

/// w(X) = integral of dist over the line mu q + nu p = X, divided by
/// sqrt(mu^2 + nu^2); Gauss-Legendre along the chord inside the support disc.
[[nodiscard]] TomogramSlice radon_classical(const PhaseSpaceDistribution& dist, double mu, double nu,
                                            const UniformAxis& X_axis, int nodes = 200);

/// Radon transform of the classically propagated density at time t.
[[nodiscard]] TomogramSlice classical_tomogram_evolved(const PhaseSpaceDistribution& f0,
                                                       const NonlinearitySpec& spec, double t,
                                                       double mu, double nu,
                                                       const UniformAxis& X_axis, int nodes = 200);

/// Fock-basis tomogram w(X) = sum_mn rho_mn Phi_m(X) conj(Phi_n(X)),
/// Phi_n(X) = r^{-1/2} phi_n(X/r) e^{-i n theta}, r = |(mu, nu)|, theta = atan2(nu, mu).
/// Values in [-1e-9, 0) are floored to 0; anything lower is a NumericError.
[[nodiscard]] TomogramSlice quantum_tomogram(const DensityMatrix& rho, double mu, double nu,
                                             const UniformAxis& X_axis);

/// Closed-form tomogram of the Fock state |n>:
///   w_0(X) H_n(X/r)^2 / (2^n n!),  w_0(X) = exp(-X^2/r^2) / sqrt(pi r^2).
[[nodiscard]] double fock_tomogram_closed(int n, double X, double mu, double nu);

}  // namespace fosc
