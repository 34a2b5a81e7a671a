#include "fosc/thermo.hpp"

#include <cmath>
#include <string>

#include "fosc/errors.hpp"

namespace fosc {
namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and > 0");
}

double log_partition(double beta) { return -0.5 * beta - std::log1p(-std::exp(-beta)); }

}  // namespace

double partition_series(double beta) {
  require_beta(beta);
  const double ratio = std::exp(-beta);
  double term = std::exp(-0.5 * beta);
  double sum = 0.0;
  for (;;) {
    sum += term;
    term *= ratio;
    // Remaining geometric tail term / (1 - ratio).
    if (term / (1.0 - ratio) < 1e-15 * sum) break;
  }
  return sum;
}

ThermoReport linear_thermo(double beta) {
  require_beta(beta);
  ThermoReport r;
  r.beta = beta;
  r.Z = 1.0 / (2.0 * std::sinh(0.5 * beta));
  const double occupation = 1.0 / std::expm1(beta);
  r.E = occupation + 0.5;  // coth(beta/2)/2
  const double log_z = log_partition(beta);
  r.S = beta * occupation - std::log1p(-std::exp(-beta));
  r.F = -log_z / beta;
  r.series_residual = std::abs(r.Z - partition_series(beta));
  return r;
}

double chi_expectation(double beta, const OccupationFunction& chi) {
  require_beta(beta);
  if (!chi) throw InvalidArgument("chi_expectation requires a callable");
  const double ratio_floor = std::exp(-beta);
  const std::int64_t check_after = 1000 + static_cast<std::int64_t>(200.0 / beta);
  constexpr std::int64_t kMaxTerms = 10'000'000;

  // Weights e^{-beta n} (1 - e^{-beta}); the e^{-beta/2} and Z0 factors cancel.
  const double norm = -std::expm1(-beta);
  double sum = 0.0;
  double compensation = 0.0;
  double abs_sum = 0.0;
  double previous = 0.0;
  int quiet = 0;
  for (std::int64_t n = 0; n < kMaxTerms; ++n) {
    const double weight = norm * std::exp(-beta * static_cast<double>(n));
    const double term = chi(n) * weight;
    if (!std::isfinite(term)) {
      throw NonConvergent("thermal series term is not finite at n = " + std::to_string(n));
    }
    // Neumaier summation.
    const double t = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    const double magnitude = std::abs(term);
    abs_sum += magnitude;
    if (n > 0 && previous > 0.0) {
      const double observed = magnitude / previous;
      if (n > check_after && observed >= 1.0) {
        throw NonConvergent("thermal series terms stop decreasing (ratio test) at n = " +
                            std::to_string(n));
      }
      const double rho = std::max(observed, ratio_floor);
      const double tail = rho < 1.0 ? magnitude * rho / (1.0 - rho) : INFINITY;
      quiet = tail <= 1e-17 * abs_sum ? quiet + 1 : 0;
    } else {
      quiet = 0;
    }
    if (quiet >= 5 || weight == 0.0) return sum + compensation;
    previous = magnitude;
  }
  throw NonConvergent("thermal series did not converge within the term limit");
}

double mean_n_squared_closed(double beta) {
  require_beta(beta);
  const double c = 1.0 / std::tanh(0.5 * beta);
  return 0.5 * c * (c - 1.0);
}

DeformedPartition deformed_partition(double beta, double g, const OccupationFunction& chi) {
  require_beta(beta);
  if (!std::isfinite(g)) throw DomainError("g must be finite");
  const ThermoReport linear = linear_thermo(beta);
  DeformedPartition out;
  out.Z0 = linear.Z;
  out.chi_mean = chi_expectation(beta, chi);
  const double factor = 1.0 - beta * g * out.chi_mean;
  if (!(factor > 0.0)) {
    throw DomainError("first-order partition function is not positive; |g| too large");
  }
  out.Zf = out.Z0 * factor;
  out.correction = g == 0.0 ? 0.0 : -beta * g * out.Z0 * out.chi_mean;

  ThermoReport& r = out.report;
  r.beta = beta;
  r.Z = out.Zf;
  r.series_residual = linear.series_residual;
  if (g == 0.0) {
    r.E = linear.E;
    r.S = linear.S;
    r.F = linear.F;
    return out;
  }
  // E_f = -d/dbeta log Z_f with d<chi>/dbeta = -(<chi n> - <chi><n>).
  const double occupation = 1.0 / std::expm1(beta);
  const double chi_n = chi_expectation(beta, [&chi](std::int64_t n) {
    return static_cast<double>(n) * chi(n);
  });
  const double covariance = chi_n - out.chi_mean * occupation;
  r.E = linear.E + g * (out.chi_mean - beta * covariance) / factor;
  const double log_z = log_partition(beta) + std::log(factor);
  r.S = beta * r.E + log_z;
  r.F = -log_z / beta;
  return out;
}

OccupationFunction q_oscillator_chi() {
  return [](std::int64_t n) { return static_cast<double>(n) * static_cast<double>(n); };
}

double q_oscillator_g(double lambda) { return lambda * lambda / 6.0; }

double q_oscillator_relative_correction(double beta, double g) {
  require_beta(beta);
  const double c = 1.0 / std::tanh(0.5 * beta);
  return -0.5 * g * beta * c * (c - 1.0);
}

}  // namespace fosc
