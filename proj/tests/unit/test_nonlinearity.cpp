#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fosc/errors.hpp"
#include "fosc/nonlinearity.hpp"

namespace {

using fosc::FrequencyLaw;
using fosc::NonlinearitySpec;

TEST(EvalF, IdentityIsOne) {
  EXPECT_EQ(fosc::eval_f(NonlinearitySpec::identity(), 5.0), 1.0);
  EXPECT_EQ(fosc::eval_f(NonlinearitySpec::identity(), 0.0), 1.0);
}

TEST(EvalF, QOscillatorSmallLambdaLimit) {
  const auto spec = NonlinearitySpec::q_oscillator(1e-12);
  for (double n : {0.0, 1.0, 7.0, 100.0}) EXPECT_NEAR(fosc::eval_f(spec, n), 1.0, 1e-15);
  EXPECT_EQ(fosc::eval_f(NonlinearitySpec::q_oscillator(0.3), 0.0), 1.0);
}

TEST(EvalF, QOscillatorClosedForm) {
  const auto spec = NonlinearitySpec::q_oscillator(0.1);
  EXPECT_NEAR(spec(5.0), std::sqrt(std::sinh(0.5) / 0.5), 1e-15);
}

TEST(EvalF, KerrClosedForm) {
  EXPECT_NEAR(fosc::eval_f(NonlinearitySpec::kerr(0.1), 3.0), std::sqrt(1.2), 1e-15);
  EXPECT_NEAR(fosc::eval_f(NonlinearitySpec::kerr(0.1), 3.0), 1.0954451, 1e-7);
}

TEST(EvalF, KerrDomainError) {
  const auto spec = NonlinearitySpec::kerr(2.0);  // 1 - 2 + 2n <= 0 for n <= 1/2
  EXPECT_THROW((void)spec(0.0), fosc::DomainError);
  EXPECT_THROW((void)spec(0.5), fosc::DomainError);
  EXPECT_NO_THROW((void)spec(1.0));
}

TEST(EvalF, NegativeArgumentRejected) {
  EXPECT_THROW((void)NonlinearitySpec::identity()(-1.0), fosc::DomainError);
}

TEST(EvalF, TableRangeError) {
  const auto spec = NonlinearitySpec::custom_table({1.0, 1.1, 1.3});
  EXPECT_EQ(spec(1.0), 1.1);
  EXPECT_THROW((void)spec(2.5), fosc::RangeError);
}

TEST(EvalF, TableInterpolationIsContinuousAndExactAtKnots) {
  const auto spec = NonlinearitySpec::custom_table({1.0, 1.2, 1.1, 1.4, 1.5});
  for (int k = 0; k < 5; ++k) EXPECT_EQ(spec(k), spec.table()[static_cast<std::size_t>(k)]);
  for (int k = 1; k < 4; ++k) {
    EXPECT_NEAR(spec(k - 1e-9), spec(k + 1e-9), 1e-8);
    // C1: one-sided slopes agree at the knots.
    const double left = (spec(k) - spec(k - 1e-5)) / 1e-5;
    const double right = (spec(k + 1e-5) - spec(k)) / 1e-5;
    EXPECT_NEAR(left, right, 1e-4);
  }
}

TEST(Frequency, IdentityIsOneUnderBothLaws) {
  const auto id = NonlinearitySpec::identity();
  EXPECT_EQ(fosc::frequency(id, 7.0, FrequencyLaw::Direct), 1.0);
  EXPECT_EQ(fosc::frequency(id, 7.0, FrequencyLaw::Canonical), 1.0);
}

TEST(Frequency, QOscillatorSmallNonlinearityQuadratic) {
  const auto spec = NonlinearitySpec::q_oscillator(0.1);
  EXPECT_NEAR(fosc::frequency(spec, 2.0), 1.01, 1e-4);
  for (double e = 0.0; e <= 2.0; e += 0.05) {
    EXPECT_NEAR(fosc::frequency(spec, e), 1.0 + 0.01 * e * e / 4.0, 1e-4) << "E=" << e;
  }
}

TEST(Frequency, KerrCanonicalLaw) {
  // d/dE [E (1 - chi + chi E)] = 1 - chi + 2 chi E
  EXPECT_NEAR(fosc::frequency(NonlinearitySpec::kerr(0.1), 2.0, FrequencyLaw::Canonical), 1.3,
              1e-14);
}

TEST(Frequency, NegativeEnergyRejected) {
  EXPECT_THROW((void)fosc::frequency(NonlinearitySpec::kerr(0.1), -0.1), fosc::DomainError);
}

TEST(Frequency, AnalyticDerivativeMatchesFiniteDifference) {
  // Custom callable without derivative goes through the finite-difference path.
  const double lambda = 0.3;
  const auto q = NonlinearitySpec::q_oscillator(lambda);
  const auto numeric = NonlinearitySpec::custom(
      [lambda](double n) { return n == 0.0 ? 1.0 : std::sqrt(std::sinh(lambda * n) / (lambda * n)); });
  for (double e : {0.0, 1e-7, 0.3, 1.0, 4.0, 10.0}) {
    EXPECT_NEAR(q.derivative(e), numeric.derivative(e), 1e-7) << "E=" << e;
    EXPECT_NEAR(fosc::frequency(q, e), fosc::frequency(numeric, e), 1e-6) << "E=" << e;
  }
  const auto k = NonlinearitySpec::kerr(0.4);
  for (double e : {0.5, 2.0, 9.0}) {
    EXPECT_NEAR(k.derivative(e), (k(e + 1e-6) - k(e - 1e-6)) / 2e-6, 1e-8);
  }
}

TEST(FFactorial, IdentityIsOne) {
  EXPECT_EQ(fosc::f_factorial(NonlinearitySpec::identity(), 7), 1.0);
}

TEST(FFactorial, KerrProduct) {
  EXPECT_NEAR(fosc::f_factorial(NonlinearitySpec::kerr(0.5), 2), std::sqrt(0.75), 1e-15);
  EXPECT_NEAR(fosc::f_factorial(NonlinearitySpec::kerr(0.5), 2), 0.8660254, 1e-7);
}

TEST(FFactorial, ZeroFactorIsDegenerate) {
  for (int n : {0, 1, 5}) {
    EXPECT_THROW((void)fosc::f_factorial(NonlinearitySpec::kerr(1.0), n),
                 fosc::DegenerateDeformation);
  }
  EXPECT_THROW((void)fosc::f_factorial(NonlinearitySpec::custom_table({1.0, 0.0, 1.0}), 2),
               fosc::DegenerateDeformation);
}

TEST(FFactorial, RecurrenceProperty) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> chi(-0.1, 0.9);
  std::uniform_real_distribution<double> lam(0.01, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const NonlinearitySpec spec =
        trial % 2 ? NonlinearitySpec::kerr(chi(rng)) : NonlinearitySpec::q_oscillator(lam(rng));
    for (int n = 1; n <= 20; ++n) {
      const double lhs = fosc::f_factorial(spec, n);
      const double rhs = fosc::f_factorial(spec, n - 1) * spec(n);
      EXPECT_NEAR(lhs, rhs, 1e-13 * std::abs(lhs));
    }
    const auto logs = fosc::log_f_factorials(spec, 20);
    EXPECT_NEAR(logs[20], std::log(fosc::f_factorial(spec, 20)), 1e-12);
  }
}

TEST(QOscillator, MonotoneAndSmallNonlinearityExpansion) {
  for (double lambda : {0.01, 0.1, 0.5}) {
    const auto spec = NonlinearitySpec::q_oscillator(lambda);
    double prev = 0.0;
    for (double n = 0.0; n <= 30.0; n += 0.25) {
      const double v = spec(n);
      EXPECT_GE(v, prev);
      prev = v;
      const double x = lambda * n;
      if (x <= 0.5) {
        // Residual of 1 + x^2/12 is O(x^4); the coefficient is -1/1440 + ... < 1/100.
        EXPECT_LE(std::abs(v - (1.0 + x * x / 12.0)), x * x * x * x / 100.0 + 1e-15);
      }
    }
  }
}

}  // namespace
