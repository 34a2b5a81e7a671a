#pragma once

// Thermodynamics of the linear oscillator H = n + 1/2 and first-order
// corrections for a perturbation g chi(n).

#include <cstdint>
#include <functional>

namespace fosc {

using OccupationFunction = std::function<double(std::int64_t n)>;

struct ThermoReport {
  double beta = 0.0;
  double Z = 0.0;  // partition function
  double E = 0.0;  // mean energy
  double S = 0.0;  // entropy, S = beta E + log Z
  double F = 0.0;  // free energy, F = -log Z / beta
  /// |Z(closed form) - Z(series)| from the construction-time series check.
  double series_residual = 0.0;
};

/// Z = 1/(2 sinh(beta/2)), E = coth(beta/2)/2. Throws DomainError for beta <= 0.
[[nodiscard]] ThermoReport linear_thermo(double beta);

/// sum_n e^{-beta(n + 1/2)}, stopped once the geometric tail is below 1e-15 of the sum.
[[nodiscard]] double partition_series(double beta);

/// <chi(n)> over the linear-oscillator thermal state, compensated-summed until
/// the remaining tail is below 1e-17 of the absolute partial sum. Throws
/// NonConvergent when the terms stop decreasing (chi grows too fast) or become
/// non-finite.
[[nodiscard]] double chi_expectation(double beta, const OccupationFunction& chi);

/// <n^2> = coth(beta/2) (coth(beta/2) - 1) / 2.
[[nodiscard]] double mean_n_squared_closed(double beta);

struct DeformedPartition {
  double Z0 = 0.0;
  double chi_mean = 0.0;
  /// Z_f = Z0 (1 - beta g <chi>).
  double Zf = 0.0;
  /// Z_f - Z0 = -beta g Z0 <chi>.
  double correction = 0.0;
  /// E, S, F derived from log Z_f, first order in g.
  ThermoReport report;
};

[[nodiscard]] DeformedPartition deformed_partition(double beta, double g, const OccupationFunction& chi);

/// chi(n) = n^2, the small-lambda q-oscillator choice (paired with g = lambda^2/6).
[[nodiscard]] OccupationFunction q_oscillator_chi();
[[nodiscard]] double q_oscillator_g(double lambda);

/// -(g beta/2) coth(beta/2) (coth(beta/2) - 1): the q-oscillator correction
/// relative to Z0, i.e. (Z_f - Z0)/Z0 for chi = n^2.
[[nodiscard]] double q_oscillator_relative_correction(double beta, double g);

}  // namespace fosc
