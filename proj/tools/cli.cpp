#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fosc/classical.hpp"
#include "fosc/coherent.hpp"
#include "fosc/errors.hpp"
#include "fosc/fock.hpp"
#include "fosc/io.hpp"
#include "fosc/thermo.hpp"
#include "fosc/tomography.hpp"
#include "fosc/wigner.hpp"

namespace fosc::cli {
namespace {

using nlohmann::json;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

bool is_set(double v) { return !std::isnan(v); }

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Parameters: one table per command drives both the flags and the config keys.

struct Param {
  std::string name;
  std::variant<double*, int*, std::string*> target;
  std::string help;
};

class ParamSet {
 public:
  void add(std::string name, double& v, std::string help) { params_.push_back({std::move(name), &v, std::move(help)}); }
  void add(std::string name, int& v, std::string help) { params_.push_back({std::move(name), &v, std::move(help)}); }
  void add(std::string name, std::string& v, std::string help) {
    params_.push_back({std::move(name), &v, std::move(help)});
  }

  void register_flags(CLI::App& app) const {
    for (const auto& p : params_) {
      std::visit([&](auto* target) { app.add_option("--" + p.name, *target, p.help); }, p.target);
    }
  }

  bool contains(const std::string& name) const {
    return std::any_of(params_.begin(), params_.end(), [&](const Param& p) { return p.name == name; });
  }

  void apply(const std::string& name, const json& value) const {
    for (const auto& p : params_) {
      if (p.name != name) continue;
      std::visit(
          [&](auto* target) {
            using T = std::remove_pointer_t<decltype(target)>;
            if constexpr (std::is_same_v<T, std::string>) {
              if (!value.is_string()) throw InvalidArgument("config field '" + name + "' must be a string");
              *target = value.get<std::string>();
            } else if constexpr (std::is_same_v<T, int>) {
              if (!value.is_number_integer()) throw InvalidArgument("config field '" + name + "' must be an integer");
              *target = value.get<int>();
            } else {
              if (!value.is_number()) throw InvalidArgument("config field '" + name + "' must be a number");
              *target = value.get<double>();
            }
          },
          p.target);
      return;
    }
  }

  json resolved() const {
    json out = json::object();
    for (const auto& p : params_) {
      std::visit(
          [&](auto* target) {
            using T = std::remove_pointer_t<decltype(target)>;
            if constexpr (std::is_same_v<T, double>) {
              out[p.name] = is_set(*target) ? json(*target) : json(nullptr);
            } else {
              out[p.name] = *target;
            }
          },
          p.target);
    }
    return out;
  }

 private:
  std::vector<Param> params_;
};

// ---------------------------------------------------------------------------
// Results

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Check {
  std::string name;
  double value;
  double limit;
};

struct Result {
  // Either a table or a JSON document is produced.
  Table table;
  json document;
  bool is_document = false;
  json header = json::object();
  json metrics = json::object();
  std::vector<Check> checks;
  std::vector<std::string> warnings;
};

std::string render_csv(const Table& t, const json& header) {
  std::string s;
  if (!header.empty()) s += "# " + header.dump() + "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) s += ',';
    s += t.columns[c];
  }
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) s += ',';
      s += format_number(row[c]);
    }
    s += '\n';
  }
  return s;
}

json table_json(const Table& t, const json& header) {
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  return {{"header", header}, {"columns", t.columns}, {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// Shared option groups

struct NonlinearityOptions {
  std::string kind = "identity";
  double lambda = kUnset;
  double chi = kUnset;
  json from_config;  // "nonlinearity" object, overrides the flags

  void add_to(ParamSet& set) {
    set.add("kind", kind, "nonlinearity: identity | q | kerr");
    set.add("lambda", lambda, "q-oscillator lambda");
    set.add("chi", chi, "Kerr chi");
  }

  NonlinearitySpec build() const {
    if (!from_config.is_null()) return nonlinearity_from_json(from_config);
    if (kind == "identity") {
      if (is_set(lambda) || is_set(chi)) throw InvalidArgument("identity nonlinearity takes no parameters");
      return NonlinearitySpec::identity();
    }
    if (kind == "q") {
      if (!is_set(lambda)) throw InvalidArgument("q nonlinearity requires --lambda");
      if (is_set(chi)) throw InvalidArgument("q nonlinearity does not take --chi");
      return NonlinearitySpec::q_oscillator(lambda);
    }
    if (kind == "kerr") {
      if (!is_set(chi)) throw InvalidArgument("kerr nonlinearity requires --chi");
      if (is_set(lambda)) throw InvalidArgument("kerr nonlinearity does not take --lambda");
      return NonlinearitySpec::kerr(chi);
    }
    throw InvalidArgument("unknown nonlinearity kind '" + kind + "'");
  }
};

struct StateOptions {
  std::string state = "vacuum";  // vacuum | fock | coherent | file
  int n = 0;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  int dim = 0;  // 0 = automatic
  std::string state_file;

  void add_to(ParamSet& set) {
    set.add("state", state, "vacuum | fock | coherent | file");
    set.add("n", n, "Fock index for --state fock");
    set.add("alpha-re", alpha_re, "coherent amplitude, real part");
    set.add("alpha-im", alpha_im, "coherent amplitude, imaginary part");
    set.add("dim", dim, "Fock truncation (0 = automatic)");
    set.add("state-file", state_file, "density matrix JSON for --state file");
  }

  DensityMatrix build(const NonlinearitySpec& spec) const {
    if (dim < 0 || dim == 1) throw InvalidArgument("--dim must be 0 (automatic) or >= 2");
    if (state == "vacuum" || state == "fock") {
      const int level = state == "vacuum" ? 0 : n;
      if (level < 0) throw InvalidArgument("--n must be >= 0");
      const Eigen::Index d = dim > 0 ? dim : std::max<Eigen::Index>(20, 2 * level + 10);
      return DensityMatrix::fock(level, d);
    }
    if (state == "coherent") {
      const Complex alpha(alpha_re, alpha_im);
      if (!std::isfinite(alpha_re) || !std::isfinite(alpha_im)) throw InvalidArgument("alpha must be finite");
      if (dim > 0) return nonlinear_coherent_state(alpha, spec, dim).density();
      Eigen::Index d = coherent_truncation_dim(std::abs(alpha)) + 10;
      for (;;) {
        try {
          return nonlinear_coherent_state(alpha, spec, d).density();
        } catch (const TruncationError&) {
          if (d > 4096) throw;
          d *= 2;
        }
      }
    }
    if (state == "file") {
      if (state_file.empty()) throw InvalidArgument("--state file requires --state-file");
      std::ifstream in(state_file);
      if (!in) throw InvalidArgument("cannot open state file '" + state_file + "'");
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw InvalidArgument(std::string("state file is not valid JSON: ") + e.what());
      }
      return density_from_json(j);
    }
    throw InvalidArgument("unknown state '" + state + "'");
  }
};

struct AxisOptions {
  std::string prefix;
  double lo;
  double hi;
  int count;

  void add_to(ParamSet& set) {
    set.add(prefix + "-min", lo, prefix + " axis lower bound");
    set.add(prefix + "-max", hi, prefix + " axis upper bound");
    set.add(prefix + "-steps", count, prefix + " axis point count");
  }

  UniformAxis build() const {
    if (count < 1) throw InvalidArgument("--" + prefix + "-steps must be >= 1");
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
      throw InvalidArgument("--" + prefix + "-min/max must be finite with min <= max");
    }
    if (count > 1 && hi == lo) throw InvalidArgument("--" + prefix + " axis has zero width");
    return {lo, hi, count};
  }
};

// ---------------------------------------------------------------------------
// Commands

class Command {
 public:
  virtual ~Command() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  virtual Result execute() = 0;
  ParamSet params;
  NonlinearityOptions nonlinearity;
};

class ClassicalTrajectory final : public Command {
 public:
  ClassicalTrajectory() {
    nonlinearity.add_to(params);
    params.add("q0", q0, "initial position");
    params.add("p0", p0, "initial momentum");
    params.add("t-max", t_max, "final time");
    params.add("steps", steps, "number of samples in [0, t-max]");
  }
  std::string name() const override { return "classical-trajectory"; }

  Result execute() override {
    const auto spec = nonlinearity.build();
    if (steps < 1) throw InvalidArgument("--steps must be >= 1");
    if (!std::isfinite(t_max) || !std::isfinite(q0) || !std::isfinite(p0)) {
      throw InvalidArgument("trajectory parameters must be finite");
    }
    Result r;
    r.table.columns = {"t", "q", "p", "E", "q0", "p0"};
    const PhasePoint start{q0, p0};
    double invariant_drift = 0.0;
    double energy_drift = 0.0;
    for (int k = 0; k < steps; ++k) {
      const double t = steps == 1 ? 0.0 : t_max * k / (steps - 1.0);
      const PhasePoint here = evolve_point(spec, start, t);
      const PhasePoint inv = classical_invariants(spec, here, t);
      invariant_drift = std::max({invariant_drift, std::abs(inv.q - q0), std::abs(inv.p - p0)});
      energy_drift = std::max(energy_drift, std::abs(here.energy() - start.energy()));
      r.table.rows.push_back({t, here.q, here.p, here.energy(), inv.q, inv.p});
    }
    r.header = {{"nonlinearity", to_json(spec)}, {"omega", frequency(spec, start.energy())}};
    r.metrics = {{"invariant_drift", invariant_drift}, {"energy_drift", energy_drift}};
    r.checks = {{"invariant_drift", invariant_drift, 1e-10}, {"energy_drift", energy_drift, 1e-12 * (1 + start.energy())}};
    return r;
  }

  double q0 = 1.0;
  double p0 = 0.0;
  double t_max = 10.0;
  int steps = 101;
};

class ClassicalPropagate final : public Command {
 public:
  ClassicalPropagate() {
    nonlinearity.add_to(params);
    params.add("q0", q0, "initial Gaussian centre, position");
    params.add("p0", p0, "initial Gaussian centre, momentum");
    params.add("sigma", sigma, "initial Gaussian width");
    params.add("t", t, "time");
    q_axis.add_to(params);
    p_axis.add_to(params);
  }
  std::string name() const override { return "classical-propagate"; }

  Result execute() override {
    const auto spec = nonlinearity.build();
    const UniformAxis qa = q_axis.build();
    const UniformAxis pa = p_axis.build();
    if (!std::isfinite(t)) throw InvalidArgument("--t must be finite");
    const auto f0 = PhaseSpaceDistribution::gaussian(q0, p0, sigma);
    const auto f = propagate_distribution(f0, spec, t);
    Result r;
    r.table.columns = {"q", "p", "value"};
    for (Eigen::Index i = 0; i < qa.count; ++i)
      for (Eigen::Index j = 0; j < pa.count; ++j) r.table.rows.push_back({qa[i], pa[j], f(qa[i], pa[j])});
    const double norm = f.normalization();
    r.header = {{"nonlinearity", to_json(spec)}, {"t", t}, {"support_radius", f.support_radius()}};
    r.metrics = {{"normalization", norm}, {"norm_residual", std::abs(norm - 1.0)}};
    r.checks = {{"norm_residual", std::abs(norm - 1.0), 1e-6}};
    return r;
  }

  double q0 = 1.0;
  double p0 = 0.0;
  double sigma = 0.5;
  double t = 1.0;
  AxisOptions q_axis{"q", -4.0, 4.0, 81};
  AxisOptions p_axis{"p", -4.0, 4.0, 81};
};

HamiltonianForm parse_form(const std::string& s) {
  if (s == "normal") return HamiltonianForm::NormalOrder;
  if (s == "normal-half") return HamiltonianForm::NormalOrderPlusHalf;
  if (s == "symmetric") return HamiltonianForm::Symmetric;
  if (s == "kerr") return HamiltonianForm::Kerr;
  throw InvalidArgument("unknown hamiltonian form '" + s + "' (normal | normal-half | symmetric | kerr)");
}

class QuantumEvolve final : public Command {
 public:
  QuantumEvolve() {
    nonlinearity.add_to(params);
    state.add_to(params);
    params.add("hamiltonian", form, "normal | normal-half | symmetric | kerr");
    params.add("kerr-chi", kerr_chi, "chi of the kerr Hamiltonian form (default: --chi)");
    params.add("t", t, "time");
  }
  std::string name() const override { return "quantum-evolve"; }

  Result execute() override {
    const auto spec = nonlinearity.build();
    HamiltonianSpec h{parse_form(form), spec, 0.0};
    if (h.form == HamiltonianForm::Kerr) {
      h.chi = is_set(kerr_chi) ? kerr_chi : spec.kind() == NonlinearityKind::Kerr ? spec.chi() : kUnset;
      if (!is_set(h.chi)) throw InvalidArgument("kerr Hamiltonian form requires --kerr-chi or a kerr nonlinearity");
    }
    if (!std::isfinite(t)) throw InvalidArgument("--t must be finite");
    const DensityMatrix rho0 = state.build(spec);
    const DensityMatrix rho = evolve_density(rho0, h, t);
    const Eigen::Index dim = rho0.dim();
    const Complex before = expectation(rho0, heisenberg_invariant_Q(h, spec, dim, 0.0));
    const Complex after = expectation(rho, heisenberg_invariant_Q(h, spec, dim, t));
    const double drift = std::abs(after - before);
    Result r;
    r.is_document = true;
    r.document = to_json(rho);
    r.header = {{"nonlinearity", to_json(spec)}, {"t", t}, {"dim", dim}};
    r.metrics = {{"trace_error", std::abs(rho.trace() - 1.0)},
                 {"hermiticity_defect", rho.hermiticity_defect()},
                 {"purity_change", std::abs(rho.purity() - rho0.purity())},
                 {"tail_mass", rho.tail_mass()},
                 {"invariant_drift", drift}};
    r.checks = {{"trace_error", std::abs(rho.trace() - 1.0), 1e-10},
                {"invariant_drift", drift, 1e-10},
                {"tail_mass", rho.tail_mass(), 1e-8}};
    r.table.columns = {"m", "n", "re", "im"};
    for (Eigen::Index m = 0; m < dim; ++m)
      for (Eigen::Index n = 0; n < dim; ++n)
        r.table.rows.push_back({static_cast<double>(m), static_cast<double>(n), rho(m, n).real(), rho(m, n).imag()});
    return r;
  }

  StateOptions state;
  std::string form = "normal";
  double kerr_chi = kUnset;
  double t = 1.0;
};

class WignerCommand final : public Command {
 public:
  WignerCommand() {
    nonlinearity.add_to(params);
    state.add_to(params);
    params.add("variant", variant, "standard | usual-parity | deformed-parity");
    params.add("padding", padding, "extra Fock levels for deformed exponentials (-1 = adaptive from grid extent)");
    params.add("method", method, "deformed exponential: spectral | scaling-squaring");
    q_axis.add_to(params);
    p_axis.add_to(params);
  }
  std::string name() const override { return "wigner"; }

  Result execute() override {
    const auto spec = nonlinearity.build();
    const UniformAxis qa = q_axis.build();
    const UniformAxis pa = p_axis.build();
    if (padding < -1) throw InvalidArgument("--padding must be >= 0, or -1 for automatic");
    const DensityMatrix rho = state.build(spec);
    WignerGrid grid;
    bool real_expected = true;
    Eigen::Index padding_used = -1;
    std::vector<Check> extra_checks;
    if (variant == "standard") {
      grid = wigner_from_density(rho, qa, pa);
    } else if (variant == "usual-parity" || variant == "deformed-parity") {
      const auto v = variant == "usual-parity" ? ParityVariant::UsualParity : ParityVariant::DeformedParity;
      real_expected = v == ParityVariant::UsualParity;
      const double reach = std::max(std::hypot(qa.lo, pa.lo), std::max(std::hypot(qa.lo, pa.hi),
                                    std::max(std::hypot(qa.hi, pa.lo), std::hypot(qa.hi, pa.hi))));
      DeformedWignerOptions options;
      if (method == "spectral") {
        options.method = ExponentialMethod::Spectral;
      } else if (method != "scaling-squaring") {
        throw InvalidArgument("unknown exponential method '" + method + "'");
      }
      // Compare the grid corners at padding p and 2p; with automatic padding,
      // keep doubling p until they agree or the padded dimension hits the cap.
      const auto corner_gap = [&](Eigen::Index p) {
        DeformedWignerOptions lo = options, hi = options;
        lo.padding = p;
        hi.padding = 2 * p;
        const DeformedWignerEvaluator coarse(rho, spec, v, lo);
        const DeformedWignerEvaluator fine(rho, spec, v, hi);
        double gap = 0.0;
        for (double q : {qa.lo, qa.hi})
          for (double pp : {pa.lo, pa.hi}) gap = std::max(gap, std::abs(coarse(q, pp) - fine(q, pp)));
        return gap;
      };
      constexpr Eigen::Index kMaxPaddedDim = 1600;
      Eigen::Index p = padding >= 0 ? std::max(padding, 1) : padding_for_radius(reach);
      double padding_error = corner_gap(p);
      while (padding < 0 && padding_error > 1e-9 && rho.dim() + 4 * p <= kMaxPaddedDim) {
        const double next = corner_gap(2 * p);
        if (next >= padding_error) break;
        p *= 2;
        padding_error = next;
      }
      if (padding < 0 && padding_error > 1e-8) {
        grid.warnings.push_back("deformed Wigner did not converge in padding at the grid corners; "
                                "narrow the grid or lower the nonlinearity");
      }
      options.padding = 2 * p;
      std::vector<std::string> carried = std::move(grid.warnings);
      grid = deformed_wigner(rho, spec, v, qa, pa, options);
      grid.warnings.insert(grid.warnings.begin(), carried.begin(), carried.end());
      padding_used = options.padding;
      extra_checks.push_back({"padding_error", padding_error, 1e-8});
    } else {
      throw InvalidArgument("unknown wigner variant '" + variant + "'");
    }
    Result r;
    r.table.columns = {"q", "p", "re", "im"};
    for (Eigen::Index i = 0; i < qa.count; ++i)
      for (Eigen::Index j = 0; j < pa.count; ++j)
        r.table.rows.push_back({grid.q_axis[static_cast<std::size_t>(i)], grid.p_axis[static_cast<std::size_t>(j)],
                                grid.values(i, j).real(), grid.values(i, j).imag()});
    r.header = {{"variant", variant},
                {"nonlinearity", to_json(spec)},
                {"dim", rho.dim()},
                {"q", {{"min", qa.lo}, {"max", qa.hi}, {"steps", qa.count}}},
                {"p", {{"min", pa.lo}, {"max", pa.hi}, {"steps", pa.count}}},
                {"normalization", grid.normalization}};
    r.metrics = {{"normalization", grid.normalization},
                 {"norm_residual", std::abs(grid.normalization - 1.0)},
                 {"max_abs_imag", grid.max_abs_imag},
                 {"tail_mass", rho.tail_mass()}};
    if (real_expected) r.checks.push_back({"max_abs_imag", grid.max_abs_imag, 1e-9});
    if (padding_used >= 0) {
      r.header["padding"] = padding_used;
      r.metrics["padding_error"] = extra_checks.back().value;
    }
    r.checks.insert(r.checks.end(), extra_checks.begin(), extra_checks.end());
    r.warnings = grid.warnings;
    return r;
  }

  StateOptions state;
  std::string variant = "standard";
  std::string method = "spectral";
  int padding = -1;
  AxisOptions q_axis{"q", -5.0, 5.0, 101};
  AxisOptions p_axis{"p", -5.0, 5.0, 101};
};

class TomogramCommand final : public Command {
 public:
  TomogramCommand() {
    nonlinearity.add_to(params);
    state.add_to(params);
    params.add("source", source, "quantum | classical");
    params.add("mu", mu, "ray coefficient of q");
    params.add("nu", nu, "ray coefficient of p");
    params.add("s", s, "frame scale (with --theta, replaces --mu/--nu)");
    params.add("theta", theta, "frame rotation angle");
    params.add("q0", q0, "classical Gaussian centre, position");
    params.add("p0", p0, "classical Gaussian centre, momentum");
    params.add("sigma", sigma, "classical Gaussian width");
    params.add("t", t, "classical evolution time");
    x_axis.add_to(params);
  }
  std::string name() const override { return "tomogram"; }

  Result execute() override {
    const auto spec = nonlinearity.build();
    double m = mu;
    double n = nu;
    if (is_set(s) || is_set(theta)) {
      const Ray ray = Ray::from_frame(is_set(s) ? s : 1.0, is_set(theta) ? theta : 0.0);
      m = ray.mu;
      n = ray.nu;
    }
    require_ray(m, n);
    const UniformAxis xa = x_axis.build();
    TomogramSlice slice;
    Result r;
    if (source == "quantum") {
      const DensityMatrix rho = state.build(spec);
      slice = quantum_tomogram(rho, m, n, xa);
      r.metrics["tail_mass"] = rho.tail_mass();
    } else if (source == "classical") {
      if (!std::isfinite(t)) throw InvalidArgument("--t must be finite");
      slice = classical_tomogram_evolved(PhaseSpaceDistribution::gaussian(q0, p0, sigma), spec, t, m, n, xa);
    } else {
      throw InvalidArgument("unknown tomogram source '" + source + "'");
    }
    r.table.columns = {"X", "value"};
    for (std::size_t i = 0; i < slice.values.size(); ++i) r.table.rows.push_back({slice.X_axis[i], slice.values[i]});
    const double residual = std::abs(slice.norm_check - 1.0);
    r.header = {{"mu", m}, {"nu", n}, {"norm_check", slice.norm_check}, {"source", source}};
    r.metrics["norm_check"] = slice.norm_check;
    r.metrics["norm_residual"] = residual;
    r.metrics["min_value"] = slice.min_value();
    r.checks = {{"norm_residual", residual, 1e-6}, {"negativity", -slice.min_value(), 1e-9}};
    return r;
  }

  StateOptions state;
  std::string source = "quantum";
  double mu = 1.0;
  double nu = 0.0;
  double s = kUnset;
  double theta = kUnset;
  double q0 = 0.0;
  double p0 = 0.0;
  double sigma = 1.0;
  double t = 0.0;
  AxisOptions x_axis{"x", -10.0, 10.0, 401};
};

struct CoherentOptions {
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  int dim = 40;
  double tail = 1e-12;

  void add_to(ParamSet& set) {
    set.add("alpha-re", alpha_re, "eigenvalue, real part");
    set.add("alpha-im", alpha_im, "eigenvalue, imaginary part");
    set.add("dim", dim, "Fock truncation");
    set.add("tail", tail, "largest allowed |c_{dim-1}|^2");
  }
};

class CoherentCommand : public Command {
 public:
  CoherentCommand() {
    nonlinearity.add_to(params);
    coherent.add_to(params);
  }
  std::string name() const override { return "coherent"; }

  Result execute() override {
    const auto state = build_state();
    Result r;
    r.table.columns = {"n", "re", "im", "abs2"};
    for (Eigen::Index k = 0; k < state.dim(); ++k) {
      const Complex c = state.amplitudes(k);
      r.table.rows.push_back({static_cast<double>(k), c.real(), c.imag(), std::norm(c)});
    }
    add_common(state, r);
    return r;
  }

 protected:
  CoherentStateVector build_state() const {
    if (coherent.dim < 2) throw InvalidArgument("--dim must be >= 2");
    return nonlinear_coherent_state({coherent.alpha_re, coherent.alpha_im}, nonlinearity.build(), coherent.dim,
                                    coherent.tail);
  }

  static void add_common(const CoherentStateVector& state, Result& r) {
    const double residual = eigen_residual(state);
    const double last = std::norm(state.amplitudes(state.dim() - 1));
    r.header = {{"nonlinearity", to_json(state.spec)},
                {"alpha", {state.alpha.real(), state.alpha.imag()}},
                {"dim", state.dim()}};
    r.metrics = {{"eigen_residual", residual}, {"last_level_weight", last}};
    r.checks = {{"eigen_residual", residual, 1e-8}};
  }

 public:
  CoherentOptions coherent;
};

class CoherentWavefunction final : public CoherentCommand {
 public:
  CoherentWavefunction() { x_axis.add_to(params); }
  std::string name() const override { return "coherent-wavefunction"; }

  Result execute() override {
    const auto state = build_state();
    const UniformAxis xa = x_axis.build();
    const auto x = xa.points();
    const ComplexVector psi = position_wavefunction(state, x);
    Result r;
    r.table.columns = {"x", "re", "im", "abs2"};
    std::vector<double> density;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Complex v = psi(static_cast<Eigen::Index>(i));
      r.table.rows.push_back({x[i], v.real(), v.imag(), std::norm(v)});
      density.push_back(std::norm(v));
    }
    add_common(state, r);
    if (xa.count > 1) {
      const double norm = trapezoid(density, xa.step());
      r.metrics["normalization"] = norm;
    }
    return r;
  }

  AxisOptions x_axis{"x", -6.0, 6.0, 241};
};

class TwoModeCommand final : public Command {
 public:
  TwoModeCommand() {
    nonlinearity.add_to(params);
    params.add("alpha1-re", a1_re, "mode 1 eigenvalue, real part");
    params.add("alpha1-im", a1_im, "mode 1 eigenvalue, imaginary part");
    params.add("alpha2-re", a2_re, "mode 2 eigenvalue, real part");
    params.add("alpha2-im", a2_im, "mode 2 eigenvalue, imaginary part");
    params.add("dim1", dim1, "mode 1 truncation");
    params.add("dim2", dim2, "mode 2 truncation");
    params.add("tail", tail, "largest allowed edge weight");
  }
  std::string name() const override { return "two-mode"; }

  Result execute() override {
    if (dim1 < 2 || dim2 < 2) throw InvalidArgument("--dim1 and --dim2 must be >= 2");
    const auto state = two_mode_state({a1_re, a1_im}, {a2_re, a2_im}, nonlinearity.build(), dim1, dim2, tail);
    const auto schmidt = schmidt_spectrum(state);
    const auto res = eigen_residuals(state);
    Result r;
    r.is_document = true;
    std::vector<double> sv(schmidt.singular_values.data(),
                           schmidt.singular_values.data() + schmidt.singular_values.size());
    r.document = {{"singular_values", sv}, {"entropy", schmidt.entropy}, {"separable", schmidt.separable}};
    r.table.columns = {"k", "singular_value"};
    for (std::size_t k = 0; k < sv.size(); ++k) r.table.rows.push_back({static_cast<double>(k), sv[k]});
    r.header = {{"nonlinearity", to_json(state.spec)}, {"dim1", dim1}, {"dim2", dim2}};
    r.metrics = {{"residual_mode1", res.mode1},
                 {"residual_mode2", res.mode2},
                 {"norm_residual", std::abs(schmidt.singular_values.squaredNorm() - 1.0)}};
    r.checks = {{"residual_mode1", res.mode1, 1e-8}, {"residual_mode2", res.mode2, 1e-8}};
    return r;
  }

  double a1_re = 1.0;
  double a1_im = 0.0;
  double a2_re = 1.0;
  double a2_im = 0.0;
  int dim1 = 40;
  int dim2 = 40;
  double tail = 1e-12;
};

class ThermoCommand final : public Command {
 public:
  ThermoCommand() {
    params.add("beta-min", beta_min, "smallest inverse temperature");
    params.add("beta-max", beta_max, "largest inverse temperature");
    params.add("beta-steps", beta_steps, "number of beta values");
    params.add("g", g, "perturbation strength of chi = n^2");
    params.add("lambda", lambda, "q-oscillator lambda; sets g = lambda^2 / 6");
  }
  std::string name() const override { return "thermo"; }

  Result execute() override {
    if (beta_steps < 1) throw InvalidArgument("--beta-steps must be >= 1");
    if (!(beta_min > 0.0) || !(beta_max >= beta_min) || !std::isfinite(beta_max)) {
      throw InvalidArgument("require 0 < beta-min <= beta-max < inf");
    }
    if (is_set(g) && is_set(lambda)) throw InvalidArgument("give either --g or --lambda, not both");
    const double coupling = is_set(g) ? g : is_set(lambda) ? q_oscillator_g(lambda) : 0.0;
    if (!std::isfinite(coupling)) throw InvalidArgument("coupling must be finite");
    const auto chi = q_oscillator_chi();
    Result r;
    r.table.columns = {"beta", "Z0", "Zf", "E", "S", "F", "correction"};
    double worst_series = 0.0;
    for (int k = 0; k < beta_steps; ++k) {
      const double beta = beta_steps == 1 ? beta_min : beta_min + (beta_max - beta_min) * k / (beta_steps - 1.0);
      const auto d = deformed_partition(beta, coupling, chi);
      worst_series = std::max(worst_series, d.report.series_residual / std::max(1.0, d.Z0));
      r.table.rows.push_back({beta, d.Z0, d.Zf, d.report.E, d.report.S, d.report.F, d.correction});
    }
    r.header = {{"g", coupling}, {"chi", "n^2"}};
    r.metrics = {{"series_residual", worst_series}};
    r.checks = {{"series_residual", worst_series, 1e-10}};
    return r;
  }

  double beta_min = 0.5;
  double beta_max = 2.0;
  int beta_steps = 16;
  double g = kUnset;
  double lambda = kUnset;
};

// ---------------------------------------------------------------------------

void apply_config(const std::string& path, Command& cmd, std::string& output, std::string& format) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != cmd.name()) {
        throw InvalidArgument("config command does not match '" + cmd.name() + "'");
      }
    } else if (key == "nonlinearity") {
      cmd.nonlinearity.from_config = value;
    } else if (key == "output") {
      if (!value.is_string()) throw InvalidArgument("config field 'output' must be a string");
      output = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) throw InvalidArgument("config field 'format' must be a string");
      format = value.get<std::string>();
    } else if (cmd.params.contains(key)) {
      cmd.params.apply(key, value);
    } else {
      throw InvalidArgument("config: unknown field '" + key + "'");
    }
  }
}

struct Rendered {
  std::string data;
  std::string sidecar;
  int status = kSuccess;
};

Rendered render(const Command& cmd, const Result& r, const std::string& format) {
  Rendered out;
  if (format == "csv") {
    out.data = render_csv(r.table, r.header);
  } else if (r.is_document) {
    out.data = r.document.dump(2) + "\n";
  } else {
    out.data = table_json(r.table, r.header).dump(2) + "\n";
  }
  json checks = json::array();
  bool passed = true;
  for (const auto& c : r.checks) {
    const bool ok = c.value <= c.limit;
    passed = passed && ok;
    checks.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"passed", ok}});
  }
  json sidecar = {{"command", cmd.name()},
                  {"format", format},
                  {"parameters", cmd.params.resolved()},
                  {"header", r.header},
                  {"metrics", r.metrics},
                  {"checks", checks},
                  {"passed", passed},
                  {"warnings", r.warnings}};
  if (!cmd.nonlinearity.from_config.is_null()) sidecar["parameters"]["nonlinearity"] = cmd.nonlinearity.from_config;
  out.sidecar = sidecar.dump(2) + "\n";
  out.status = passed ? kSuccess : kToleranceFailure;
  return out;
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
  f.close();
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"f-oscillator numerics"};
  app.require_subcommand(1);
  std::string config;
  std::string output;
  std::string format = "csv";

  std::vector<std::unique_ptr<Command>> commands;
  std::map<CLI::App*, Command*> by_app;
  auto attach = [&](CLI::App* parent, const std::string& cli_name, std::unique_ptr<Command> cmd,
                    const std::string& help) {
    CLI::App* sub = parent->add_subcommand(cli_name, help);
    cmd->params.register_flags(*sub);
    sub->add_option("--config", config, "JSON config; its fields override flags");
    sub->add_option("--output,-o", output, "artifact path (default: stdout)");
    sub->add_option("--format", format, "csv | json");
    by_app[sub] = cmd.get();
    commands.push_back(std::move(cmd));
    return sub;
  };

  CLI::App* classical = app.add_subcommand("classical", "classical dynamics");
  classical->require_subcommand(1);
  attach(classical, "trajectory", std::make_unique<ClassicalTrajectory>(), "exact trajectory and invariants");
  attach(classical, "propagate", std::make_unique<ClassicalPropagate>(), "propagated Gaussian density on a grid");
  CLI::App* quantum = app.add_subcommand("quantum", "truncated Fock-space dynamics");
  quantum->require_subcommand(1);
  attach(quantum, "evolve", std::make_unique<QuantumEvolve>(), "evolve a density matrix");
  attach(&app, "wigner", std::make_unique<WignerCommand>(), "standard or deformed Wigner function");
  attach(&app, "tomogram", std::make_unique<TomogramCommand>(), "symplectic tomogram slice");
  CLI::App* coherent = attach(&app, "coherent", std::make_unique<CoherentCommand>(), "nonlinear coherent state");
  coherent->require_subcommand(0, 1);
  attach(coherent, "wavefunction", std::make_unique<CoherentWavefunction>(), "position wavefunction");
  attach(&app, "two-mode", std::make_unique<TwoModeCommand>(), "two-mode state Schmidt spectrum");
  attach(&app, "thermo", std::make_unique<ThermoCommand>(), "thermodynamics with first-order correction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  Command* cmd = nullptr;
  for (const auto& [sub, command] : by_app) {
    if (sub->parsed() && (sub->get_subcommands().empty())) cmd = command;
  }
  if (!cmd) {
    err << "error: no command selected\n";
    return kValidationError;
  }

  Rendered rendered;
  try {
    if (!config.empty()) apply_config(config, *cmd, output, format);
    if (format != "csv" && format != "json") throw InvalidArgument("--format must be csv or json");
    const Result result = cmd->execute();
    rendered = render(*cmd, result, format);
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const NonConvergent& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  if (output.empty()) {
    out << rendered.data;
    err << rendered.sidecar;
  } else if (!write_file(output, rendered.data, err) || !write_file(output + ".meta.json", rendered.sidecar, err)) {
    return kValidationError;
  }
  if (rendered.status == kToleranceFailure) err << "self-check failed; see sidecar\n";
  return rendered.status;
}

}  // namespace fosc::cli
