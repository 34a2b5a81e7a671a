#include "fosc/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fosc/errors.hpp"

namespace fosc {

Ray Ray::from_frame(double s, double theta) {
  if (!(s != 0.0) || !std::isfinite(s)) throw DegenerateRay("frame scale s must be nonzero");
  return {s * std::cos(theta), std::sin(theta) / s};
}

double Ray::length() const { return std::hypot(mu, nu); }
double Ray::angle() const { return std::atan2(nu, mu); }

double TomogramSlice::min_value() const {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

void require_ray(double mu, double nu) {
  if (!std::isfinite(mu) || !std::isfinite(nu)) throw DegenerateRay("ray parameters must be finite");
  if (mu == 0.0 && nu == 0.0) throw DegenerateRay("tomogram requires mu^2 + nu^2 > 0");
}

namespace {

TomogramSlice make_slice(double mu, double nu, const UniformAxis& X_axis) {
  require_ray(mu, nu);
  if (X_axis.count < 1) throw InvalidArgument("tomogram X axis must be non-empty");
  TomogramSlice slice;
  slice.mu = mu;
  slice.nu = nu;
  slice.X_axis = X_axis.points();
  slice.values.assign(slice.X_axis.size(), 0.0);
  return slice;
}

void finish_slice(TomogramSlice& slice, const UniformAxis& X_axis) {
  slice.norm_check = X_axis.count > 1 ? trapezoid(slice.values, X_axis.step()) : 0.0;
}

}  // namespace

TomogramSlice radon_classical(const PhaseSpaceDistribution& dist, double mu, double nu,
                              const UniformAxis& X_axis, int nodes) {
  TomogramSlice slice = make_slice(mu, nu, X_axis);
  const double r = std::hypot(mu, nu);
  // Unit normal n = (mu, nu)/r and tangent t = (-nu, mu)/r; the line
  // mu q + nu p = X is {(X/r) n + s t}.
  const double nq = mu / r;
  const double np = nu / r;
  const double radius = dist.support_radius();
  const auto unit = gauss_legendre(nodes, -1.0, 1.0);
  for (std::size_t i = 0; i < slice.X_axis.size(); ++i) {
    const double offset = slice.X_axis[i] / r;
    if (std::abs(offset) >= radius) continue;
    const double half_chord = std::sqrt(radius * radius - offset * offset);
    double sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double s = half_chord * unit.nodes(k);
      sum += unit.weights(k) * dist(offset * nq - s * np, offset * np + s * nq);
    }
    slice.values[i] = half_chord * sum / r;
  }
  finish_slice(slice, X_axis);
  return slice;
}

TomogramSlice classical_tomogram_evolved(const PhaseSpaceDistribution& f0,
                                         const NonlinearitySpec& spec, double t, double mu,
                                         double nu, const UniformAxis& X_axis, int nodes) {
  return radon_classical(propagate_distribution(f0, spec, t), mu, nu, X_axis, nodes);
}

TomogramSlice quantum_tomogram(const DensityMatrix& rho, double mu, double nu,
                               const UniformAxis& X_axis) {
  TomogramSlice slice = make_slice(mu, nu, X_axis);
  const double r = std::hypot(mu, nu);
  const double theta = std::atan2(nu, mu);
  const Eigen::Index dim = rho.dim();
  // Phi_n conj -> e^{+i n theta} phi_n / sqrt(r); w = c^+ rho c with c_n = conj(Phi_n).
  Eigen::VectorXcd phase(dim);
  for (Eigen::Index n = 0; n < dim; ++n) phase(n) = std::polar(1.0, static_cast<double>(n) * theta);
  for (std::size_t i = 0; i < slice.X_axis.size(); ++i) {
    const Eigen::VectorXd phi = hermite_functions(slice.X_axis[i] / r, dim);
    const Eigen::VectorXcd c = phase.cwiseProduct(phi.cast<Complex>()) / std::sqrt(r);
    double w = c.dot(rho.matrix() * c).real();
    if (w < 0.0) {
      if (w < -1e-9) {
        throw NumericError("quantum tomogram value " + std::to_string(w) + " below -1e-9");
      }
      w = 0.0;
    }
    slice.values[i] = w;
  }
  finish_slice(slice, X_axis);
  return slice;
}

double fock_tomogram_closed(int n, double X, double mu, double nu) {
  require_ray(mu, nu);
  if (n < 0) throw DomainError("fock_tomogram_closed requires n >= 0");
  const double r2 = mu * mu + nu * nu;
  const double w0 = std::exp(-X * X / r2) / std::sqrt(std::numbers::pi * r2);
  if (n == 0) return w0;
  const double y = X / std::sqrt(r2);
  const double h = hermite_polynomial(n, y);
  if (h == 0.0) return 0.0;
  const double log_ratio = 2.0 * std::log(std::abs(h)) - n * std::numbers::ln2 -
                           std::lgamma(static_cast<double>(n) + 1.0);
  return w0 * std::exp(log_ratio);
}

}  // namespace fosc
