#include "fosc/coherent.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

#include "fosc/special.hpp"

namespace fosc {
namespace {

double log_or_minus_inf(double x) {
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

}  // namespace

CoherentStateVector nonlinear_coherent_state(Complex alpha, const NonlinearitySpec& spec,
                                             Eigen::Index dim, double tail) {
  if (dim < 2) throw DomainError("nonlinear_coherent_state requires dim >= 2");
  const std::vector<double> log_ff = log_f_factorials(spec, static_cast<int>(dim - 1));

  CoherentStateVector state{alpha, spec, ComplexVector::Zero(dim)};
  if (alpha == Complex(0.0)) {
    state.amplitudes(0) = 1.0;
    return state;
  }
  const double log_r = log_or_minus_inf(std::abs(alpha));
  const double phase = std::arg(alpha);
  Eigen::VectorXd log_mag(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    const double nn = static_cast<double>(n);
    log_mag(n) = nn * log_r - log_ff[static_cast<std::size_t>(n)] - 0.5 * std::lgamma(nn + 1.0);
  }
  const double top = log_mag.maxCoeff();
  for (Eigen::Index n = 0; n < dim; ++n) {
    state.amplitudes(n) = std::polar(std::exp(log_mag(n) - top), static_cast<double>(n) * phase);
  }
  state.amplitudes.normalize();
  const double last = std::norm(state.amplitudes(dim - 1));
  if (!(last < tail)) {
    throw TruncationError("coherent state tail |c_N|^2 = " + std::to_string(last) +
                          " not below " + std::to_string(tail) + "; increase dim");
  }
  return state;
}

double eigen_residual(const CoherentStateVector& state, Eigen::Index guard) {
  const Eigen::Index dim = state.dim();
  const Eigen::MatrixXd a = deformed_lowering(state.spec, dim);
  const ComplexVector r = a.cast<Complex>() * state.amplitudes - state.alpha * state.amplitudes;
  const Eigen::Index keep = std::max<Eigen::Index>(dim - guard, 0);
  return r.head(keep).norm();
}

ComplexVector position_wavefunction(const CoherentStateVector& state,
                                    const std::vector<double>& x_axis) {
  ComplexVector psi(static_cast<Eigen::Index>(x_axis.size()));
  for (std::size_t i = 0; i < x_axis.size(); ++i) {
    const Eigen::VectorXd phi = hermite_functions(x_axis[i], state.dim());
    psi(static_cast<Eigen::Index>(i)) = phi.cast<Complex>().dot(state.amplitudes);
  }
  return psi;
}

TwoModeCoefficientMatrix two_mode_state(Complex alpha1, Complex alpha2, const NonlinearitySpec& spec,
                                        Eigen::Index dim1, Eigen::Index dim2, double tail) {
  if (dim1 < 2 || dim2 < 2) throw DomainError("two_mode_state requires dims >= 2");
  const std::vector<double> log_ff = log_f_factorials(spec, static_cast<int>(dim1 + dim2 - 2));
  TwoModeCoefficientMatrix state{alpha1, alpha2, spec, ComplexMatrix::Zero(dim1, dim2)};

  const double log_r1 = log_or_minus_inf(std::abs(alpha1));
  const double log_r2 = log_or_minus_inf(std::abs(alpha2));
  const double phase1 = std::arg(alpha1);
  const double phase2 = std::arg(alpha2);
  Eigen::MatrixXd log_mag(dim1, dim2);
  for (Eigen::Index n1 = 0; n1 < dim1; ++n1) {
    for (Eigen::Index n2 = 0; n2 < dim2; ++n2) {
      const double a = static_cast<double>(n1);
      const double b = static_cast<double>(n2);
      // 0 * log 0 = 0 for the vacuum column/row of a vanishing amplitude.
      const double t1 = n1 == 0 ? 0.0 : a * log_r1;
      const double t2 = n2 == 0 ? 0.0 : b * log_r2;
      log_mag(n1, n2) = t1 + t2 - 0.5 * (std::lgamma(a + 1.0) + std::lgamma(b + 1.0)) -
                        log_ff[static_cast<std::size_t>(n1 + n2)];
    }
  }
  const double top = log_mag.maxCoeff();
  for (Eigen::Index n1 = 0; n1 < dim1; ++n1) {
    for (Eigen::Index n2 = 0; n2 < dim2; ++n2) {
      state.entries(n1, n2) = std::polar(std::exp(log_mag(n1, n2) - top),
                                         static_cast<double>(n1) * phase1 +
                                             static_cast<double>(n2) * phase2);
    }
  }
  state.entries /= state.entries.norm();
  const double last_row = state.entries.row(dim1 - 1).squaredNorm();
  const double last_col = state.entries.col(dim2 - 1).squaredNorm();
  if (!(last_row < tail) || !(last_col < tail)) {
    throw TruncationError("two-mode state tail rows/columns not below " + std::to_string(tail) +
                          "; increase dims");
  }
  return state;
}

TwoModeResiduals eigen_residuals(const TwoModeCoefficientMatrix& state, Eigen::Index guard) {
  const auto& c = state.entries;
  const Eigen::Index d1 = c.rows();
  const Eigen::Index d2 = c.cols();
  const Eigen::Index k1 = std::max<Eigen::Index>(d1 - guard, 0);
  const Eigen::Index k2 = std::max<Eigen::Index>(d2 - guard, 0);
  // (A_1 c)_{n1, n2} = sqrt(n1 + 1) f(n1 + n2 + 1) c_{n1 + 1, n2}.
  double s1 = 0.0;
  double s2 = 0.0;
  for (Eigen::Index n1 = 0; n1 < k1; ++n1) {
    for (Eigen::Index n2 = 0; n2 < k2; ++n2) {
      const double f_next = state.spec(static_cast<double>(n1 + n2 + 1));
      const Complex a1 = n1 + 1 < d1 ? std::sqrt(static_cast<double>(n1 + 1)) * f_next * c(n1 + 1, n2)
                                     : Complex(0.0);
      const Complex a2 = n2 + 1 < d2 ? std::sqrt(static_cast<double>(n2 + 1)) * f_next * c(n1, n2 + 1)
                                     : Complex(0.0);
      s1 += std::norm(a1 - state.alpha1 * c(n1, n2));
      s2 += std::norm(a2 - state.alpha2 * c(n1, n2));
    }
  }
  return {std::sqrt(s1), std::sqrt(s2)};
}

SchmidtSpectrum schmidt_spectrum(const TwoModeCoefficientMatrix& state) {
  Eigen::BDCSVD<ComplexMatrix> svd(state.entries);
  SchmidtSpectrum out;
  out.singular_values = svd.singularValues();
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < out.singular_values.size(); ++k) {
    const double p = out.singular_values(k) * out.singular_values(k);
    if (p > 0.0) entropy -= p * std::log(p);
  }
  out.entropy = std::max(entropy, 0.0);
  out.separable = out.singular_values.size() < 2 ||
                  out.singular_values(1) < SchmidtSpectrum::kSeparabilityThreshold;
  return out;
}

}  // namespace fosc
