#pragma once

// Deformation function f of an f-oscillator, its energy-dependent frequency
// and the deformed factorial f(0) f(1) ... f(n).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fosc {

enum class NonlinearityKind { Identity, QOscillator, Kerr, Custom };

enum class FrequencyLaw {
  Direct,     // omega = f + E f'
  Canonical,  // omega = d/dE [E f^2] = f^2 + 2 E f f'
};

/// Immutable description of the deformation function f(n).
///
/// The same evaluation path serves real arguments (classical energy E) and
/// integer arguments (Fock level n).
class NonlinearitySpec {
 public:
  using Function = std::function<double(double)>;

  NonlinearitySpec();  // identity

  static NonlinearitySpec identity();
  /// f(n) = sqrt(sinh(lambda n) / (lambda n)), lambda > 0.
  static NonlinearitySpec q_oscillator(double lambda);
  /// f(n) = sqrt(1 - chi + chi n).
  static NonlinearitySpec kerr(double chi);
  /// Values f(0), f(1), ..., f(K); real arguments in [0, K] use C1 cubic
  /// Hermite (Catmull-Rom) interpolation between the knots.
  static NonlinearitySpec custom_table(std::vector<double> table);
  /// Closed-form f; when no derivative is supplied, f' is taken by central
  /// finite differences with step max(1e-6, 1e-6 E). Must be C1 on the
  /// energy range in use.
  static NonlinearitySpec custom(Function f, Function derivative = {},
                                 std::string name = "custom");

  [[nodiscard]] NonlinearityKind kind() const { return kind_; }
  [[nodiscard]] double lambda() const { return param_; }
  [[nodiscard]] double chi() const { return param_; }
  [[nodiscard]] const std::vector<double>& table() const { return *table_; }
  [[nodiscard]] bool is_tabulated() const { return table_ != nullptr; }
  [[nodiscard]] const std::string& name() const { return name_; }

  /// f(n); throws DomainError (Kerr radicand <= 0, n < 0) or RangeError
  /// (table queried outside its range).
  [[nodiscard]] double operator()(double n) const;
  /// df/dn at n.
  [[nodiscard]] double derivative(double n) const;

 private:
  NonlinearityKind kind_ = NonlinearityKind::Identity;
  double param_ = 0.0;
  std::shared_ptr<const std::vector<double>> table_;
  std::shared_ptr<const Function> f_;
  std::shared_ptr<const Function> df_;
  std::string name_ = "identity";
};

[[nodiscard]] double eval_f(const NonlinearitySpec& spec, double n);

/// Energy-dependent angular frequency; E < 0 is a DomainError.
[[nodiscard]] double frequency(const NonlinearitySpec& spec, double energy,
                               FrequencyLaw law = FrequencyLaw::Direct);

/// f(0) f(1) ... f(n). Any factor <= 0 (or undefined) raises DegenerateDeformation.
[[nodiscard]] double f_factorial(const NonlinearitySpec& spec, int n);

/// log f(k)! for k = 0..n_max, computed as a running sum of log f(k).
[[nodiscard]] std::vector<double> log_f_factorials(const NonlinearitySpec& spec, int n_max);

/// Throws DegenerateDeformation unless f(k) > 0 for every integer 0 <= k <= n_max.
void require_positive(const NonlinearitySpec& spec, int n_max);

}  // namespace fosc
