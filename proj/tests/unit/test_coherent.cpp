#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "../support/oracles.hpp"
#include "fosc/coherent.hpp"
#include "fosc/errors.hpp"

namespace {

using fosc::Complex;
using fosc::NonlinearitySpec;

TEST(CoherentState, IdentityIsPoisson) {
  const Complex alpha(1.0, 0.0);
  const auto s = fosc::nonlinear_coherent_state(alpha, NonlinearitySpec::identity(), 40);
  EXPECT_NEAR(s.amplitudes(0).real(), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(s.amplitudes(0).real(), 0.6065307, 1e-7);
  double log_fact = 0.0;
  for (Eigen::Index n = 0; n < 40; ++n) {
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    const double expected = std::exp(-0.5 - 0.5 * log_fact);
    EXPECT_NEAR(std::abs(s.amplitudes(n)), expected, 1e-12) << n;
  }
}

TEST(CoherentState, PhaseFollowsAlpha) {
  const Complex alpha = std::polar(1.3, 0.7);
  const auto s = fosc::nonlinear_coherent_state(alpha, NonlinearitySpec::kerr(0.2), 50);
  for (Eigen::Index n = 1; n < 10; ++n) {
    EXPECT_NEAR(std::arg(s.amplitudes(n) / s.amplitudes(0)), std::remainder(0.7 * n, 2 * std::numbers::pi),
                1e-12);
  }
  EXPECT_NEAR(s.amplitudes.norm(), 1.0, 1e-14);
}

TEST(CoherentState, VacuumForZeroAlpha) {
  const auto s = fosc::nonlinear_coherent_state(0.0, NonlinearitySpec::kerr(0.5), 5);
  EXPECT_EQ(s.amplitudes(0), Complex(1.0));
  EXPECT_EQ(s.amplitudes.tail(4).norm(), 0.0);
}

TEST(CoherentState, EigenResidualSmall) {
  for (const auto& spec : {NonlinearitySpec::kerr(0.1), NonlinearitySpec::q_oscillator(0.1),
                           NonlinearitySpec::identity()}) {
    const auto s = fosc::nonlinear_coherent_state({1.0, 0.0}, spec, 40);
    EXPECT_LT(fosc::eigen_residual(s), 1e-8) << spec.name();
    // Direct check of A_f v - alpha v without the helper.
    const Eigen::MatrixXcd a = fosc::deformed_lowering(spec, 40).cast<Complex>();
    const Eigen::VectorXcd r = a * s.amplitudes - s.alpha * s.amplitudes;
    EXPECT_LT(r.head(35).norm(), 1e-8);
  }
}

TEST(CoherentState, ResidualShrinksWithDimension) {
  const auto spec = NonlinearitySpec::kerr(0.1);
  double previous = INFINITY;
  for (Eigen::Index dim : {14, 18, 22, 26}) {
    const auto s = fosc::nonlinear_coherent_state({1.5, 0.0}, spec, dim, 1e-3);
    const Eigen::MatrixXcd a = fosc::deformed_lowering(spec, dim).cast<Complex>();
    const double full = (a * s.amplitudes - s.alpha * s.amplitudes).norm();
    EXPECT_LT(full, previous) << dim;
    previous = full;
  }
}

TEST(CoherentState, TruncationAndDegeneracyErrors) {
  EXPECT_THROW((void)fosc::nonlinear_coherent_state({3.0, 0.0}, NonlinearitySpec::identity(), 10),
               fosc::TruncationError);
  EXPECT_THROW((void)fosc::nonlinear_coherent_state({0.5, 0.0}, NonlinearitySpec::kerr(1.0), 10),
               fosc::DegenerateDeformation);
}

TEST(CoherentState, SuperExponentialFactorialStaysFinite) {
  const auto s = fosc::nonlinear_coherent_state({40.0, 0.0}, NonlinearitySpec::q_oscillator(0.5), 120);
  EXPECT_TRUE(s.amplitudes.allFinite());
  EXPECT_NEAR(s.amplitudes.norm(), 1.0, 1e-13);
}

TEST(Wavefunction, VacuumAtOrigin) {
  const auto s = fosc::nonlinear_coherent_state(0.0, NonlinearitySpec::identity(), 10);
  const auto psi = fosc::position_wavefunction(s, {0.0});
  EXPECT_NEAR(psi(0).real(), std::pow(std::numbers::pi, -0.25), 1e-15);
  EXPECT_NEAR(psi(0).real(), 0.7511255, 1e-7);
}

TEST(Wavefunction, GlauberGaussian) {
  const Complex alpha(0.8, -0.6);
  const auto s = fosc::nonlinear_coherent_state(alpha, NonlinearitySpec::identity(), 40);
  const std::vector<double> x{-3.0, -1.2, 0.0, 0.4, 2.1, 3.5};
  const auto psi = fosc::position_wavefunction(s, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_LT(std::abs(psi(static_cast<Eigen::Index>(i)) - fosc::oracle::coherent_wavefunction(alpha, x[i])),
              1e-12);
  }
}

TEST(Wavefunction, ParityOfRealAlpha) {
  // psi_{-alpha}(x) = psi_alpha(-x).
  const auto spec = NonlinearitySpec::kerr(0.2);
  const auto plus = fosc::nonlinear_coherent_state({1.0, 0.0}, spec, 40);
  const auto minus = fosc::nonlinear_coherent_state({-1.0, 0.0}, spec, 40);
  const std::vector<double> x{0.3, 1.1, 2.4};
  const std::vector<double> mx{-0.3, -1.1, -2.4};
  const auto a = fosc::position_wavefunction(plus, x);
  const auto b = fosc::position_wavefunction(minus, mx);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Wavefunction, UnitNorm) {
  const auto s = fosc::nonlinear_coherent_state({0.7, 0.2}, NonlinearitySpec::q_oscillator(0.1), 40);
  const auto rule = fosc::gauss_legendre(300, -10.0, 10.0);
  std::vector<double> x(rule.nodes.data(), rule.nodes.data() + rule.nodes.size());
  const auto psi = fosc::position_wavefunction(s, x);
  EXPECT_NEAR(rule.weights.dot(psi.cwiseAbs2()), 1.0, 1e-12);
}

TEST(TwoMode, IdentityIsProductOfGlauberStates) {
  const Complex a1(0.6, 0.2);
  const Complex a2(-0.4, 0.9);
  const auto s = fosc::two_mode_state(a1, a2, NonlinearitySpec::identity(), 30, 30);
  const auto g1 = fosc::nonlinear_coherent_state(a1, NonlinearitySpec::identity(), 30).amplitudes;
  const auto g2 = fosc::nonlinear_coherent_state(a2, NonlinearitySpec::identity(), 30).amplitudes;
  EXPECT_LT((s.entries - g1 * g2.transpose()).cwiseAbs().maxCoeff(), 1e-13);
  const auto schmidt = fosc::schmidt_spectrum(s);
  EXPECT_LT(schmidt.singular_values(1), 1e-10);
  EXPECT_TRUE(schmidt.separable);
  EXPECT_NEAR(schmidt.entropy, 0.0, 1e-12);
}

TEST(TwoMode, KerrEntangles) {
  const auto s = fosc::two_mode_state({1.0, 0.0}, {1.0, 0.0}, NonlinearitySpec::kerr(0.1), 40, 40);
  const auto schmidt = fosc::schmidt_spectrum(s);
  EXPECT_GT(schmidt.singular_values(1), 1e-3);
  EXPECT_FALSE(schmidt.separable);
  EXPECT_NEAR(schmidt.singular_values.squaredNorm(), 1.0, 1e-13);
  for (Eigen::Index k = 1; k < schmidt.singular_values.size(); ++k) {
    EXPECT_LE(schmidt.singular_values(k), schmidt.singular_values(k - 1));
  }
  const auto res = fosc::eigen_residuals(s);
  EXPECT_LT(res.mode1, 1e-8);
  EXPECT_LT(res.mode2, 1e-8);
}

TEST(TwoMode, EntropyDecreasesTowardZeroChi) {
  std::vector<double> entropy;
  std::vector<double> sigma2;
  for (double chi : {0.1, 0.05, 0.01, 0.0}) {
    const auto s = fosc::two_mode_state({1.0, 0.0}, {1.0, 0.0}, NonlinearitySpec::kerr(chi), 40, 40);
    const auto sp = fosc::schmidt_spectrum(s);
    entropy.push_back(sp.entropy);
    sigma2.push_back(sp.singular_values(1));
  }
  EXPECT_GT(entropy[0], entropy[1]);
  EXPECT_GT(entropy[1], entropy[2]);
  EXPECT_GT(entropy[2], entropy[3]);
  EXPECT_LT(sigma2[3], 1e-10);
  // 40-digit SVD of the same 40 x 40 truncation.
  EXPECT_NEAR(sigma2[0], 0.03335534929, 1e-10);
  EXPECT_NEAR(sigma2[1], 0.01976749227, 1e-10);
  EXPECT_NEAR(sigma2[2], 0.004733104013, 1e-11);
  EXPECT_NEAR(entropy[0], 0.00868773296, 1e-10);
  EXPECT_NEAR(entropy[1], 0.003458780234, 1e-11);
  EXPECT_NEAR(entropy[2], 0.0002622587149, 1e-12);
}

TEST(TwoMode, SwapSymmetry) {
  const auto spec = NonlinearitySpec::q_oscillator(0.2);
  const auto s12 = fosc::two_mode_state({0.9, 0.1}, {0.3, -0.5}, spec, 30, 25);
  const auto s21 = fosc::two_mode_state({0.3, -0.5}, {0.9, 0.1}, spec, 25, 30);
  EXPECT_LT((s12.entries - s21.entries.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  const auto p = fosc::schmidt_spectrum(s12);
  const auto q = fosc::schmidt_spectrum(s21);
  EXPECT_NEAR(p.entropy, q.entropy, 1e-12);
}

TEST(TwoMode, TruncationRejected) {
  EXPECT_THROW((void)fosc::two_mode_state({2.5, 0.0}, {0.1, 0.0}, NonlinearitySpec::identity(), 8, 30),
               fosc::TruncationError);
}

}  // namespace
