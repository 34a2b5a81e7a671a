#pragma once

// Classical f-oscillator: exact trajectories, time-dependent integrals of motion
// and Liouville propagation of phase-space densities along characteristics.

#include <complex>
#include <functional>
#include <memory>

#include "fosc/nonlinearity.hpp"

namespace fosc {

/// Phase-space point; alpha = (q + i p)/sqrt(2), E = |alpha|^2 = (q^2 + p^2)/2.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  [[nodiscard]] double energy() const { return 0.5 * (q * q + p * p); }
  [[nodiscard]] std::complex<double> alpha() const;
  static PhasePoint from_alpha(std::complex<double> alpha);
};

/// Probability density on the (q, p) plane, held as a closed-form callable.
/// Outside a disc of radius support_radius it is treated as zero by quadrature.
class PhaseSpaceDistribution {
 public:
  using Density = std::function<double(double q, double p)>;

  PhaseSpaceDistribution(Density density, double support_radius);

  /// (2 pi sigma^2)^-1 exp(-((q-q0)^2 + (p-p0)^2) / (2 sigma^2)).
  static PhaseSpaceDistribution gaussian(double q0, double p0, double sigma = 1.0,
                                         double support_radius = 0.0);

  [[nodiscard]] double operator()(double q, double p) const { return (*density_)(q, p); }
  [[nodiscard]] double support_radius() const { return support_radius_; }

  /// Tensor-product Gauss-Legendre integral over [-R, R]^2.
  [[nodiscard]] double normalization(int nodes_per_axis = 200) const;

 private:
  std::shared_ptr<const Density> density_;
  double support_radius_;
};

/// alpha0 exp(-i omega(|alpha0|^2) t), omega = f + E f'.
[[nodiscard]] std::complex<double> evolve_amplitude(const NonlinearitySpec& spec,
                                                    std::complex<double> alpha0, double t);

/// Phase point after time t, starting from `start`.
[[nodiscard]] PhasePoint evolve_point(const NonlinearitySpec& spec, PhasePoint start, double t);

/// Integrals of motion (q0, p0) of a point observed at time t:
///   p0 = p cos(w t) + q sin(w t),  q0 = -p sin(w t) + q cos(w t),  w = omega(E).
[[nodiscard]] PhasePoint classical_invariants(const NonlinearitySpec& spec, PhasePoint point,
                                              double t);

/// f(q, p, t) = f0(q0(q, p, t), p0(q, p, t)).
[[nodiscard]] PhaseSpaceDistribution propagate_distribution(const PhaseSpaceDistribution& f0,
                                                            const NonlinearitySpec& spec, double t);

}  // namespace fosc
