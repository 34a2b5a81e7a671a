#include "fosc/wigner.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fosc/parallel.hpp"

namespace fosc {
namespace {

WignerGrid make_grid(const UniformAxis& q_axis, const UniformAxis& p_axis) {
  if (q_axis.count < 1 || p_axis.count < 1) throw InvalidArgument("Wigner grid axes must be non-empty");
  WignerGrid grid;
  grid.q_axis = q_axis.points();
  grid.p_axis = p_axis.points();
  grid.values = ComplexMatrix::Zero(q_axis.count, p_axis.count);
  return grid;
}

template <typename PointFn>
void fill_grid(WignerGrid& grid, const UniformAxis& q_axis, const UniformAxis& p_axis,
               const PointFn& point) {
  const auto nq = static_cast<std::size_t>(q_axis.count);
  const auto np = static_cast<std::size_t>(p_axis.count);
  parallel_for(nq * np, [&](std::size_t k) {
    const auto i = static_cast<Eigen::Index>(k / np);
    const auto j = static_cast<Eigen::Index>(k % np);
    grid.values(i, j) = point(grid.q_axis[static_cast<std::size_t>(i)],
                              grid.p_axis[static_cast<std::size_t>(j)]);
  });
  grid.max_abs_imag = grid.values.imag().cwiseAbs().maxCoeff();
  if (q_axis.count > 1 && p_axis.count > 1) {
    Eigen::VectorXd rows(q_axis.count);
    for (Eigen::Index i = 0; i < q_axis.count; ++i) {
      const Eigen::VectorXd row = grid.values.row(i).real().transpose();
      rows(i) = trapezoid(row, p_axis.step());
    }
    grid.normalization = trapezoid(rows, q_axis.step()) / (2.0 * std::numbers::pi);
  }
}

void check_normalization(WignerGrid& grid) {
  if (std::abs(grid.normalization - 1.0) > 1e-4) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "grid normalization " << grid.normalization
        << " deviates from 1 by more than 1e-4; the grid may not cover the state";
    grid.warnings.push_back(msg.str());
  }
}

}  // namespace

ComplexMatrix displacement_matrix(Complex beta, Eigen::Index dim) {
  ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
  const double r2 = std::norm(beta);
  const double r = std::sqrt(r2);
  const double phase = std::arg(beta);
  for (Eigen::Index k = 0; k < dim; ++k) {
    // Entries (n + k, n) along the k-th subdiagonal.
    const Eigen::Index count = dim - k;
    const Eigen::VectorXd lag = laguerre_polynomials<double>(count, static_cast<double>(k), r2);
    for (Eigen::Index n = 0; n < count; ++n) {
      const Eigen::Index m = n + k;
      double magnitude;
      if (k == 0) {
        magnitude = std::exp(-0.5 * r2) * lag(n);
      } else if (r == 0.0) {
        magnitude = 0.0;
      } else {
        const double log_prefactor =
            0.5 * (std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(m) + 1.0)) +
            static_cast<double>(k) * std::log(r) - 0.5 * r2;
        magnitude = std::exp(log_prefactor) * lag(n);
      }
      const Complex lower = std::polar(1.0, static_cast<double>(k) * phase) * magnitude;
      d(m, n) = lower;
      if (k > 0) {
        // <n|D(beta)|m> = conj(<m|D(-beta)|n>); (-beta)^k = (-1)^k beta^k.
        d(n, m) = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(lower);
      }
    }
  }
  return d;
}

Complex wigner_point(const DensityMatrix& rho, double q, double p) {
  const Eigen::Index dim = rho.dim();
  const Complex beta = std::numbers::sqrt2 * Complex(q, p);  // 2 alpha
  const ComplexMatrix d = displacement_matrix(beta, dim);
  Complex trace = 0.0;
  for (Eigen::Index m = 0; m < dim; ++m) {
    const double parity = m % 2 == 0 ? 1.0 : -1.0;
    trace += parity * rho.matrix().row(m).transpose().cwiseProduct(d.col(m)).sum();
  }
  return 2.0 * trace;
}

WignerGrid wigner_from_density(const DensityMatrix& rho, const UniformAxis& q_axis,
                               const UniformAxis& p_axis) {
  WignerGrid grid = make_grid(q_axis, p_axis);
  fill_grid(grid, q_axis, p_axis, [&](double q, double p) { return wigner_point(rho, q, p); });
  check_normalization(grid);
  return grid;
}

DeformedWignerEvaluator::DeformedWignerEvaluator(const DensityMatrix& rho,
                                                 const NonlinearitySpec& spec,
                                                 ParityVariant variant,
                                                 DeformedWignerOptions options)
    : dim_(rho.dim()), method_(options.method), expm_(options.expm) {
  if (options.padding < 0) throw InvalidArgument("padding must be >= 0");
  const Eigen::Index padded = dim_ + options.padding;
  require_positive(spec, static_cast<int>(padded - 1));
  const Eigen::MatrixXd a = deformed_lowering(spec, std::max<Eigen::Index>(padded, 2));
  generator_ = a.transpose() - a;
  if (method_ == ExponentialMethod::Spectral) {
    const ComplexMatrix hermitian = Complex(0.0, 1.0) * generator_.cast<Complex>();
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success) throw NumericError("eigendecomposition of the generator failed");
    top_vectors_ = solver.eigenvectors().topRows(dim_);
    eigenvalues_ = solver.eigenvalues();
  }

  Eigen::VectorXcd parity(dim_);
  for (Eigen::Index n = 0; n < dim_; ++n) {
    if (variant == ParityVariant::UsualParity) {
      parity(n) = n % 2 == 0 ? 1.0 : -1.0;
    } else {
      const double nn = static_cast<double>(n);
      const double f = spec(nn);
      parity(n) = std::polar(1.0, std::numbers::pi * nn * f * f);
    }
  }
  weighted_rho_ = parity.asDiagonal() * rho.matrix();
}

Complex DeformedWignerEvaluator::operator()(double q, double p) const {
  const Complex alpha = Complex(q, p) / std::numbers::sqrt2;
  const double radius = std::abs(alpha);
  const double phase = std::arg(alpha);
  Eigen::MatrixXd e;
  if (method_ == ExponentialMethod::Spectral) {
    // exp(t G) = V exp(-i t lambda) V^+; the block is real up to rounding.
    Eigen::VectorXcd w(eigenvalues_.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = std::polar(1.0, -2.0 * radius * eigenvalues_(k));
    e = (top_vectors_ * w.asDiagonal() * top_vectors_.adjoint()).real();
  } else {
    e = expm((2.0 * radius) * generator_, expm_).topLeftCorner(dim_, dim_);
  }
  // Tr[(parity rho) U] = sum_{m,n} (parity rho)_{mn} U_{nm} with
  // U_{nm} = c_n E_{nm} conj(c_m), c_n = e^{i n phase}.
  Eigen::VectorXcd c(dim_);
  for (Eigen::Index n = 0; n < dim_; ++n) c(n) = std::polar(1.0, static_cast<double>(n) * phase);
  const ComplexMatrix u = c.asDiagonal() * e.cast<Complex>() * c.conjugate().asDiagonal();
  return 2.0 * weighted_rho_.cwiseProduct(u.transpose()).sum();
}

Eigen::Index padding_for_radius(double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw DomainError("radius must be finite and >= 0");
  const double mean = 2.0 * radius * radius;
  return static_cast<Eigen::Index>(std::ceil(mean + 8.0 * std::sqrt(mean) + 10.0));
}

WignerGrid deformed_wigner(const DensityMatrix& rho, const NonlinearitySpec& spec,
                           ParityVariant variant, const UniformAxis& q_axis,
                           const UniformAxis& p_axis, const DeformedWignerOptions& options) {
  const DeformedWignerEvaluator evaluator(rho, spec, variant, options);
  WignerGrid grid = make_grid(q_axis, p_axis);
  fill_grid(grid, q_axis, p_axis, evaluator);
  return grid;
}

}  // namespace fosc
