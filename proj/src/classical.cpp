#include "fosc/classical.hpp"

#include <cmath>
#include <numbers>

#include "fosc/errors.hpp"
#include "fosc/special.hpp"

namespace fosc {

std::complex<double> PhasePoint::alpha() const {
  return std::complex<double>(q, p) / std::numbers::sqrt2;
}

PhasePoint PhasePoint::from_alpha(std::complex<double> alpha) {
  return {std::numbers::sqrt2 * alpha.real(), std::numbers::sqrt2 * alpha.imag()};
}

PhaseSpaceDistribution::PhaseSpaceDistribution(Density density, double support_radius)
    : density_(std::make_shared<const Density>(std::move(density))),
      support_radius_(support_radius) {
  if (!*density_) throw InvalidArgument("PhaseSpaceDistribution requires a callable density");
  if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
    throw InvalidArgument("PhaseSpaceDistribution requires a positive finite support radius");
  }
}

PhaseSpaceDistribution PhaseSpaceDistribution::gaussian(double q0, double p0, double sigma,
                                                        double support_radius) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian: sigma must be > 0");
  if (support_radius <= 0.0) support_radius = std::hypot(q0, p0) + 12.0 * sigma;
  const double norm = 1.0 / (2.0 * std::numbers::pi * sigma * sigma);
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  return PhaseSpaceDistribution(
      [=](double q, double p) {
        const double dq = q - q0;
        const double dp = p - p0;
        return norm * std::exp(-(dq * dq + dp * dp) * inv2s2);
      },
      support_radius);
}

double PhaseSpaceDistribution::normalization(int nodes_per_axis) const {
  const auto rule = gauss_legendre(nodes_per_axis, -support_radius_, support_radius_);
  double total = 0.0;
  for (int i = 0; i < nodes_per_axis; ++i) {
    double row = 0.0;
    for (int j = 0; j < nodes_per_axis; ++j) {
      row += rule.weights(j) * (*this)(rule.nodes(i), rule.nodes(j));
    }
    total += rule.weights(i) * row;
  }
  return total;
}

std::complex<double> evolve_amplitude(const NonlinearitySpec& spec, std::complex<double> alpha0,
                                      double t) {
  const double modulus = std::abs(alpha0);
  const double omega = frequency(spec, modulus * modulus, FrequencyLaw::Direct);
  return std::polar(modulus, std::arg(alpha0) - omega * t);
}

PhasePoint evolve_point(const NonlinearitySpec& spec, PhasePoint start, double t) {
  const double omega = frequency(spec, start.energy(), FrequencyLaw::Direct);
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  return {start.q * c + start.p * s, start.p * c - start.q * s};
}

PhasePoint classical_invariants(const NonlinearitySpec& spec, PhasePoint point, double t) {
  const double omega = frequency(spec, point.energy(), FrequencyLaw::Direct);
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  return {-point.p * s + point.q * c, point.p * c + point.q * s};
}

PhaseSpaceDistribution propagate_distribution(const PhaseSpaceDistribution& f0,
                                              const NonlinearitySpec& spec, double t) {
  return PhaseSpaceDistribution(
      [f0, spec, t](double q, double p) {
        const PhasePoint origin = classical_invariants(spec, {q, p}, t);
        return f0(origin.q, origin.p);
      },
      f0.support_radius());
}

}  // namespace fosc
