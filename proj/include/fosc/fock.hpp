#pragma once

// Truncated Fock-space operator algebra for the quantum f-oscillator.
//
// Operators are plain Eigen matrices in the basis |0>, ..., |dim-1>. Every
// deformed operator here is a function of the number operator times a ladder
// operator, so Hamiltonians are diagonal and time evolution is a phase.

#include <Eigen/Dense>
#include <complex>

#include "fosc/errors.hpp"
#include "fosc/nonlinearity.hpp"

namespace fosc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// a with a|n> = sqrt(n)|n-1>. The top commutator entry [a, a^+]_(dim-1, dim-1)
/// equals 1 - dim; that is the usual truncation artifact.
template <typename Scalar = double>
DenseMatrix<Scalar> lowering_operator(Eigen::Index dim) {
  if (dim < 2) throw DomainError("lowering_operator requires dim >= 2");
  DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = Scalar(std::sqrt(static_cast<double>(n)));
  return a;
}

template <typename Scalar = double>
DenseMatrix<Scalar> number_operator(Eigen::Index dim) {
  if (dim < 1) throw DomainError("number_operator requires dim >= 1");
  DenseMatrix<Scalar> n = DenseMatrix<Scalar>::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = Scalar(static_cast<double>(k));
  return n;
}

/// (-1)^n as a diagonal matrix.
template <typename Scalar = double>
DenseMatrix<Scalar> parity_operator(Eigen::Index dim) {
  DenseMatrix<Scalar> p = DenseMatrix<Scalar>::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) p(k, k) = Scalar(k % 2 == 0 ? 1.0 : -1.0);
  return p;
}

/// q = (a + a^+)/sqrt(2).
[[nodiscard]] Eigen::MatrixXd position_operator(Eigen::Index dim);
/// p = (a - a^+)/(i sqrt(2)).
[[nodiscard]] ComplexMatrix momentum_operator(Eigen::Index dim);

/// A_f = a f(a^+ a): entries A[n-1, n] = sqrt(n) f(n).
[[nodiscard]] Eigen::MatrixXd deformed_lowering(const NonlinearitySpec& spec, Eigen::Index dim);

enum class HamiltonianForm {
  Symmetric,            // (A^+A + AA^+)/2 = (n f(n)^2 + (n+1) f(n+1)^2)/2
  NormalOrderPlusHalf,  // A^+A + 1/2
  NormalOrder,          // A^+A = n f(n)^2
  Kerr,                 // chi a^+2 a^2 + a^+a = n + chi n(n-1)
};

struct HamiltonianSpec {
  HamiltonianForm form = HamiltonianForm::NormalOrder;
  NonlinearitySpec spec;
  /// Only used by Kerr.
  double chi = 0.0;
};

/// Diagonal of the Hamiltonian in the Fock basis.
[[nodiscard]] Eigen::VectorXd hamiltonian_diagonal(const HamiltonianSpec& hspec, Eigen::Index dim);
[[nodiscard]] Eigen::MatrixXd hamiltonian(const HamiltonianSpec& hspec, Eigen::Index dim);

/// Heisenberg integral of motion Q(t) = a F(n, t),
/// F(n, t) = f(n) exp(i (H(n) - H(n-1)) t). Q(0) = A_f.
[[nodiscard]] ComplexMatrix heisenberg_invariant_Q(const HamiltonianSpec& hspec,
                                                   const NonlinearitySpec& spec,
                                                   Eigen::Index dim, double t);

/// Smallest dimension N such that the Poisson tail sum_{n >= N} e^{-r^2} r^{2n}/n!
/// of a coherent state with |alpha| = r is below `tail`.
[[nodiscard]] Eigen::Index coherent_truncation_dim(double alpha_modulus, double tail = 1e-12);

/// Validated truncated density matrix: Hermitian to 1e-12, unit trace to 1e-10,
/// smallest eigenvalue >= -1e-10, tail mass above 0.9 (dim-1) below 1e-8.
class DensityMatrix {
 public:
  struct Tolerances {
    double hermitian = 1e-12;
    double trace = 1e-10;
    double eigenvalue = 1e-10;
    double tail = 1e-8;
  };

  /// Throws InvalidArgument for a non-physical matrix and TruncationError for
  /// excessive tail mass.
  explicit DensityMatrix(ComplexMatrix rho);
  DensityMatrix(ComplexMatrix rho, const Tolerances& tolerances);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix fock(Eigen::Index n, Eigen::Index dim);

  [[nodiscard]] Eigen::Index dim() const { return rho_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return rho_; }
  [[nodiscard]] Complex operator()(Eigen::Index m, Eigen::Index n) const { return rho_(m, n); }

  [[nodiscard]] double trace() const { return rho_.trace().real(); }
  [[nodiscard]] double purity() const;
  [[nodiscard]] double min_eigenvalue() const;
  [[nodiscard]] double hermiticity_defect() const;
  /// sum of rho_nn over n > 0.9 (dim - 1).
  [[nodiscard]] double tail_mass() const;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix rho, Unchecked) : rho_(std::move(rho)) {}
  friend DensityMatrix evolve_density(const DensityMatrix&, const HamiltonianSpec&, double);

  ComplexMatrix rho_;
};

/// rho_mn(t) = rho_mn(0) exp(-i (H_m - H_n) t).
[[nodiscard]] DensityMatrix evolve_density(const DensityMatrix& rho0, const HamiltonianSpec& hspec,
                                           double t);

/// Tr[rho A].
[[nodiscard]] Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op);

}  // namespace fosc
