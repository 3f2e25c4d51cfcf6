#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebconvex/domain.hpp"
#include "chebconvex/functions.hpp"

namespace chebconvex {

/// Strictly increasing tuple of evaluation nodes. Ordering is validated at
/// construction; domain membership is checked against the system at
/// evaluation time.
class Configuration {
 public:
  explicit Configuration(std::vector<double> points);

  /// Skips the ordering check. Exists for sign tests that deliberately feed
  /// permuted tuples to the determinant; not for general use.
  static Configuration unchecked(std::vector<double> points);

  const std::vector<double>& points() const { return points_; }
  std::span<const double> span() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double width() const { return points_.back() - points_.front(); }

 private:
  Configuration() = default;
  std::vector<double> points_;
};

/// A finite family of continuous functions (w_1, ..., w_n) on a domain whose
/// collocation determinant
///
///   Phi(x_1, ..., x_n) = det [ w_i(x_j) ]_{i,j = 1..n}
///
/// is strictly positive on every strictly increasing n-tuple of domain
/// points. Positivity is a promise of the family, not a constructor check:
/// it is enforced lazily whenever a determinant is actually evaluated.
///
/// Built-in families:
///   poly(n)      1, x, ..., x^{n-1}            any interval
///   trig-odd(n)  1, cos x, sin x, ..., sin nx  interval of length <= 2*pi (dim 2n+1)
///   trig-even(n) cos x, sin x, ..., sin nx     interval of length <= pi    (dim 2n)
///   one-xsq      1, x^2                        positive reals
/// plus tabulated families given by a value matrix over a finite grid.
class ChebSystem {
 public:
  enum class Kind { Poly, TrigOdd, TrigEven, OneXsq, Table };

  static ChebSystem poly(int n, Domain domain = Domain::all());
  static ChebSystem trig_odd(int harmonics, Domain domain);
  static ChebSystem trig_even(int harmonics, Domain domain);
  static ChebSystem one_xsq(Domain domain);
  /// values[i][j] = w_i(points[j]); the domain is the finite point set.
  static ChebSystem tabulated(std::vector<double> points, std::vector<std::vector<double>> values);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  /// Degree/harmonic parameter of the built-in families (0 for tables).
  int param() const { return param_; }
  const Domain& domain() const { return domain_; }

  /// w_i(x), i in [0, dim). Throws EvaluationOffGrid for tabulated systems
  /// when x is not a grid abscissa (exact comparison).
  double basis_value(int i, double x) const;

  /// "poly(3)", "trig-odd(2)", ... for report headers.
  std::string describe() const;

 private:
  ChebSystem() = default;

  Kind kind_ = Kind::Poly;
  int dim_ = 0;
  int param_ = 0;
  Domain domain_ = Domain::all();
  std::vector<double> table_points_;
  std::vector<std::vector<double>> table_values_;
};

/// Parses "poly:3", "trig-odd:2", "trig-even:1", "one-xsq" (with their
/// default domains) into the corresponding built-in system.
ChebSystem builtin_system(const std::string& tag);
ChebSystem builtin_system(const std::string& tag, const Domain& domain);

/// Base family plus one extra function w_{n+1} that is strictly convex with
/// respect to the base: every stacked determinant Phi(w_1..w_n, w_{n+1}) on
/// an (n+1)-tuple must be strictly positive (again checked lazily). Divided
/// differences are taken with respect to such an extended family.
class ExtendedSystem {
 public:
  ExtendedSystem(ChebSystem base, SampledFunction extension);

  /// poly(n) extends canonically by x^n. Other families have no canonical
  /// extension and require an explicit one (ExtensionRequired otherwise).
  static ExtendedSystem with_default_extension(ChebSystem base);

  const ChebSystem& base() const { return base_; }
  const SampledFunction& extension() const { return extension_; }
  int base_dim() const { return base_.dim(); }

 private:
  ChebSystem base_;
  SampledFunction extension_;
};

struct EvalOptions {
  double condition_threshold = 1e12;
};

/// Determinant value plus conditioning diagnostics. `hadamard_bound` is the
/// scale used for sign tolerances downstream: a computed determinant is
/// treated as nonnegative when value >= -(1e-12 + 1e-9 * hadamard_bound).
struct PhiResult {
  double value = 0.0;
  double condition_estimate = 0.0;
  double hadamard_bound = 0.0;
  bool ill_conditioned = false;
};

/// Sign tolerance floor used throughout when deciding Phi >= 0.
inline constexpr double kPhiAbsTol = 1e-12;
inline constexpr double kPhiRelTol = 1e-9;

inline bool phi_nonnegative(double value, double hadamard) {
  return value >= -(kPhiAbsTol + kPhiRelTol * hadamard);
}

/// Phi of the base family on an n-tuple. Throws PositivityViolation if the
/// computed value is not strictly positive: for a valid family on a strictly
/// increasing tuple this can only mean bad tabulated data or a determinant
/// below noise level.
PhiResult evaluate_phi(const ChebSystem& system, const Configuration& config, const EvalOptions& opts = {});

/// Phi of the extended family (w_1..w_n, w_{n+1}) on an (n+1)-tuple, with
/// the same strict-positivity contract.
PhiResult evaluate_phi(const ExtendedSystem& system, const Configuration& config, const EvalOptions& opts = {});

/// Phi of (w_1..w_n, f) on an (n+1)-tuple. No sign contract: this is the
/// quantity whose sign encodes convexity of f. Depends on f only through its
/// values at the configuration.
PhiResult evaluate_phi_with_f(const ChebSystem& system, const SampledFunction& f, const Configuration& config,
                              const EvalOptions& opts = {});

/// Fully general stack: base rows, then the extension row if present, then
/// the f row if present. Configuration length must equal the row count.
PhiResult evaluate_phi_stack(const ChebSystem& system, const SampledFunction* extension, const SampledFunction* f,
                             const Configuration& config, const EvalOptions& opts = {});

struct PositivityEntry {
  std::vector<double> config;
  double value = 0.0;
  int sign = 0;
};

struct PositivityReport {
  std::vector<PositivityEntry> entries;
  bool all_positive = true;
  std::optional<std::size_t> first_violation;
};

/// Evaluates Phi on each configuration and reports values and signs instead
/// of throwing; the tool for auditing tabulated data.
PositivityReport validate_positivity(const ChebSystem& system, const std::vector<Configuration>& configs,
                                     const EvalOptions& opts = {});

namespace testing {
/// Raw determinant on an arbitrary (not necessarily ordered) tuple, domain
/// checks included, sign checks skipped. Supports antisymmetry tests.
double phi_unordered(const ChebSystem& system, std::span<const double> points);
}  // namespace testing

}  // namespace chebconvex
