#include "fosc/nonlinearity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fosc/errors.hpp"

namespace fosc {
namespace {

// sinh(x)/x and its derivative, with the removable singularity at 0 handled
// by the Taylor series.
double sinhc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
  }
  return std::sinh(x) / x;
}

double sinhc_prime(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x / 3.0 * (1.0 + x2 / 10.0 * (1.0 + x2 / 28.0));
  }
  return (x * std::cosh(x) - std::sinh(x)) / (x * x);
}

double table_value(const std::vector<double>& t, double n) {
  const double last = static_cast<double>(t.size() - 1);
  if (!(n >= 0.0) || n > last) {
    throw RangeError("nonlinearity table queried at n = " + std::to_string(n) +
                     " outside [0, " + std::to_string(t.size() - 1) + "]");
  }
  const auto k = static_cast<std::size_t>(std::floor(n));
  if (k + 1 >= t.size()) return t.back();
  const double s = n - static_cast<double>(k);
  if (s == 0.0) return t[k];
  // Catmull-Rom slopes, one-sided at the ends.
  auto slope = [&](std::size_t i) {
    if (t.size() == 2) return t[1] - t[0];
    if (i == 0) return t[1] - t[0];
    if (i + 1 == t.size()) return t[i] - t[i - 1];
    return 0.5 * (t[i + 1] - t[i - 1]);
  };
  const double m0 = slope(k);
  const double m1 = slope(k + 1);
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * t[k] + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * t[k + 1] +
         (s3 - s2) * m1;
}

double central_difference(const NonlinearitySpec& spec, double n) {
  const double h = std::max(1e-6, 1e-6 * n);
  if (n < h) {
    // Second-order forward difference keeps the stencil inside n >= 0.
    return (-3.0 * spec(n) + 4.0 * spec(n + h) - spec(n + 2 * h)) / (2 * h);
  }
  return (spec(n + h) - spec(n - h)) / (2 * h);
}

}  // namespace

NonlinearitySpec::NonlinearitySpec() = default;

NonlinearitySpec NonlinearitySpec::identity() { return {}; }

NonlinearitySpec NonlinearitySpec::q_oscillator(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("q-oscillator requires lambda > 0");
  }
  NonlinearitySpec s;
  s.kind_ = NonlinearityKind::QOscillator;
  s.param_ = lambda;
  s.name_ = "q";
  return s;
}

NonlinearitySpec NonlinearitySpec::kerr(double chi) {
  if (!std::isfinite(chi)) throw DomainError("Kerr chi must be finite");
  NonlinearitySpec s;
  s.kind_ = NonlinearityKind::Kerr;
  s.param_ = chi;
  s.name_ = "kerr";
  return s;
}

NonlinearitySpec NonlinearitySpec::custom_table(std::vector<double> table) {
  if (table.empty()) throw InvalidArgument("nonlinearity table must not be empty");
  for (double v : table) {
    if (!std::isfinite(v)) throw InvalidArgument("nonlinearity table entries must be finite");
  }
  if (table.size() == 1) table.push_back(table.front());
  NonlinearitySpec s;
  s.kind_ = NonlinearityKind::Custom;
  s.table_ = std::make_shared<const std::vector<double>>(std::move(table));
  s.name_ = "custom";
  return s;
}

NonlinearitySpec NonlinearitySpec::custom(Function f, Function derivative, std::string name) {
  if (!f) throw InvalidArgument("custom nonlinearity requires a callable");
  NonlinearitySpec s;
  s.kind_ = NonlinearityKind::Custom;
  s.f_ = std::make_shared<const Function>(std::move(f));
  if (derivative) s.df_ = std::make_shared<const Function>(std::move(derivative));
  s.name_ = std::move(name);
  return s;
}

double NonlinearitySpec::operator()(double n) const {
  if (!(n >= 0.0)) throw DomainError("f(n) requires n >= 0");
  switch (kind_) {
    case NonlinearityKind::Identity:
      return 1.0;
    case NonlinearityKind::QOscillator:
      if (n == 0.0) return 1.0;
      return std::sqrt(sinhc(param_ * n));
    case NonlinearityKind::Kerr: {
      const double radicand = 1.0 - param_ + param_ * n;
      if (!(radicand > 0.0)) {
        throw DomainError("Kerr nonlinearity undefined: 1 - chi + chi n <= 0 at n = " +
                          std::to_string(n));
      }
      return std::sqrt(radicand);
    }
    case NonlinearityKind::Custom:
      if (table_) return table_value(*table_, n);
      return (*f_)(n);
  }
  return 1.0;
}

double NonlinearitySpec::derivative(double n) const {
  if (!(n >= 0.0)) throw DomainError("f'(n) requires n >= 0");
  switch (kind_) {
    case NonlinearityKind::Identity:
      return 0.0;
    case NonlinearityKind::QOscillator: {
      const double x = param_ * n;
      return param_ * sinhc_prime(x) / (2.0 * std::sqrt(sinhc(x)));
    }
    case NonlinearityKind::Kerr:
      return param_ / (2.0 * (*this)(n));
    case NonlinearityKind::Custom:
      if (df_) return (*df_)(n);
      return central_difference(*this, n);
  }
  return 0.0;
}

double eval_f(const NonlinearitySpec& spec, double n) { return spec(n); }

double frequency(const NonlinearitySpec& spec, double energy, FrequencyLaw law) {
  if (!(energy >= 0.0)) throw DomainError("frequency requires E >= 0");
  if (spec.kind() == NonlinearityKind::Identity) return 1.0;
  const double f = spec(energy);
  const double df = spec.derivative(energy);
  if (law == FrequencyLaw::Direct) return f + energy * df;
  return f * f + 2.0 * energy * f * df;
}

namespace {

double positive_factor(const NonlinearitySpec& spec, int k) {
  double v = std::numeric_limits<double>::quiet_NaN();
  try {
    v = spec(static_cast<double>(k));
  } catch (const DomainError&) {
  }
  if (!(v > 0.0)) {
    throw DegenerateDeformation("deformation vanishes or is undefined at n = " +
                                std::to_string(k) + " (f(n) must be > 0)");
  }
  return v;
}

}  // namespace

double f_factorial(const NonlinearitySpec& spec, int n) {
  if (n < 0) throw DomainError("f_factorial requires n >= 0");
  double product = 1.0;
  for (int k = 0; k <= n; ++k) product *= positive_factor(spec, k);
  return product;
}

std::vector<double> log_f_factorials(const NonlinearitySpec& spec, int n_max) {
  if (n_max < 0) throw DomainError("log_f_factorials requires n_max >= 0");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double acc = 0.0;
  for (int k = 0; k <= n_max; ++k) {
    acc += std::log(positive_factor(spec, k));
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

void require_positive(const NonlinearitySpec& spec, int n_max) {
  for (int k = 0; k <= n_max; ++k) (void)positive_factor(spec, k);
}

}  // namespace fosc
