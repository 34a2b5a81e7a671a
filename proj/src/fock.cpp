#include "fosc/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

namespace fosc {

Eigen::MatrixXd position_operator(Eigen::Index dim) {
  const Eigen::MatrixXd a = lowering_operator<double>(dim);
  return (a + a.transpose()) / std::numbers::sqrt2;
}

ComplexMatrix momentum_operator(Eigen::Index dim) {
  const ComplexMatrix a = lowering_operator<Complex>(dim);
  return (a - a.adjoint()) / Complex(0.0, std::numbers::sqrt2);
}

Eigen::MatrixXd deformed_lowering(const NonlinearitySpec& spec, Eigen::Index dim) {
  if (dim < 2) throw DomainError("deformed_lowering requires dim >= 2");
  require_positive(spec, static_cast<int>(dim - 1));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) {
    const double nn = static_cast<double>(n);
    a(n - 1, n) = std::sqrt(nn) * spec(nn);
  }
  return a;
}

Eigen::VectorXd hamiltonian_diagonal(const HamiltonianSpec& hspec, Eigen::Index dim) {
  if (dim < 1) throw DomainError("hamiltonian requires dim >= 1");
  Eigen::VectorXd h(dim);
  const auto& f = hspec.spec;
  switch (hspec.form) {
    case HamiltonianForm::Symmetric:
      require_positive(f, static_cast<int>(dim));
      break;
    case HamiltonianForm::NormalOrder:
    case HamiltonianForm::NormalOrderPlusHalf:
      require_positive(f, static_cast<int>(dim - 1));
      break;
    case HamiltonianForm::Kerr:
      break;
  }
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double n = static_cast<double>(k);
    switch (hspec.form) {
      case HamiltonianForm::Symmetric: {
        const double f0 = f(n);
        const double f1 = f(n + 1.0);
        h(k) = 0.5 * (n * f0 * f0 + (n + 1.0) * f1 * f1);
        break;
      }
      case HamiltonianForm::NormalOrderPlusHalf: {
        const double f0 = f(n);
        h(k) = n * f0 * f0 + 0.5;
        break;
      }
      case HamiltonianForm::NormalOrder: {
        const double f0 = f(n);
        h(k) = n * f0 * f0;
        break;
      }
      case HamiltonianForm::Kerr:
        h(k) = n + hspec.chi * n * (n - 1.0);
        break;
    }
  }
  return h;
}

Eigen::MatrixXd hamiltonian(const HamiltonianSpec& hspec, Eigen::Index dim) {
  return hamiltonian_diagonal(hspec, dim).asDiagonal();
}

ComplexMatrix heisenberg_invariant_Q(const HamiltonianSpec& hspec, const NonlinearitySpec& spec,
                                     Eigen::Index dim, double t) {
  if (dim < 2) throw DomainError("heisenberg_invariant_Q requires dim >= 2");
  require_positive(spec, static_cast<int>(dim - 1));
  const Eigen::VectorXd h = hamiltonian_diagonal(hspec, dim);
  ComplexMatrix q = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) {
    const double nn = static_cast<double>(n);
    const Complex phase = std::polar(1.0, (h(n) - h(n - 1)) * t);
    q(n - 1, n) = std::sqrt(nn) * spec(nn) * phase;
  }
  return q;
}

Eigen::Index coherent_truncation_dim(double alpha_modulus, double tail) {
  if (!(alpha_modulus >= 0.0) || !std::isfinite(alpha_modulus)) {
    throw DomainError("coherent_truncation_dim requires finite |alpha| >= 0");
  }
  if (!(tail > 0.0)) throw DomainError("coherent_truncation_dim requires tail > 0");
  const double mean = alpha_modulus * alpha_modulus;
  if (mean == 0.0) return 2;
  // Poisson weights far past the bulk; suffix sums taken from the far end so
  // small tails are not lost to cancellation against 1.
  const auto last = static_cast<Eigen::Index>(mean + 40.0 * std::sqrt(mean) + 60.0);
  Eigen::VectorXd weight(last + 1);
  for (Eigen::Index k = 0; k <= last; ++k) {
    const double kk = static_cast<double>(k);
    weight(k) = std::exp(-mean + kk * std::log(mean) - std::lgamma(kk + 1.0));
  }
  Eigen::VectorXd suffix(last + 2);
  suffix(last + 1) = 0.0;
  for (Eigen::Index k = last; k >= 0; --k) suffix(k) = suffix(k + 1) + weight(k);
  for (Eigen::Index n = 0; n <= last + 1; ++n) {
    if (suffix(n) < tail) return std::max<Eigen::Index>(n, 2);
  }
  return last + 1;
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : DensityMatrix(std::move(rho), Tolerances{}) {}

DensityMatrix::DensityMatrix(ComplexMatrix rho, const Tolerances& tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  if (!rho_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  if (hermiticity_defect() > tol.hermitian) {
    throw InvalidArgument("density matrix is not Hermitian (defect " +
                          std::to_string(hermiticity_defect()) + ")");
  }
  if (std::abs(rho_.trace() - Complex(1.0)) > tol.trace) {
    throw InvalidArgument("density matrix trace differs from 1 by " +
                          std::to_string(std::abs(rho_.trace() - Complex(1.0))));
  }
  if (min_eigenvalue() < -tol.eigenvalue) {
    throw InvalidArgument("density matrix has negative eigenvalue " +
                          std::to_string(min_eigenvalue()));
  }
  if (tail_mass() >= tol.tail) {
    throw TruncationError("truncation tail mass " + std::to_string(tail_mass()) +
                          " exceeds limit; increase dim");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidArgument("pure state vector must be nonzero");
  const ComplexVector v = psi / norm;
  ComplexMatrix rho = v * v.adjoint();
  // Exact Hermitian symmetrization of the outer product.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::fock(Eigen::Index n, Eigen::Index dim) {
  if (n < 0 || n >= dim) throw DomainError("fock state index out of range");
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho(n, n) = 1.0;
  return DensityMatrix(std::move(rho));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  const ComplexMatrix herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_defect() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::tail_mass() const {
  const double threshold = 0.9 * static_cast<double>(dim() - 1);
  double mass = 0.0;
  for (Eigen::Index n = 0; n < dim(); ++n) {
    if (static_cast<double>(n) > threshold) mass += rho_(n, n).real();
  }
  return mass;
}

DensityMatrix evolve_density(const DensityMatrix& rho0, const HamiltonianSpec& hspec, double t) {
  const Eigen::Index dim = rho0.dim();
  const Eigen::VectorXd h = hamiltonian_diagonal(hspec, dim);
  Eigen::VectorXcd phase(dim);
  for (Eigen::Index k = 0; k < dim; ++k) phase(k) = std::polar(1.0, -h(k) * t);
  ComplexMatrix rho = phase.asDiagonal() * rho0.matrix() * phase.conjugate().asDiagonal();
  for (Eigen::Index k = 0; k < dim; ++k) rho(k, k) = rho0(k, k);
  return DensityMatrix(std::move(rho), DensityMatrix::Unchecked{});
}

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
    throw DimensionMismatch("operator dimension " + std::to_string(op.rows()) +
                            " does not match density matrix dimension " +
                            std::to_string(rho.dim()));
  }
  return (rho.matrix() * op).trace();
}

}  // namespace fosc
