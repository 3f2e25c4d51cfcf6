#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "chebconvex/systems.hpp"

namespace chebconvex {

/// Divided difference of f with respect to an extended family on an
/// (n+1)-point configuration:
///
///   [x_0, ..., x_n; f] = Phi(w_1..w_n, f)(x) / Phi(w_1..w_n, w_{n+1})(x).
///
/// The denominator is strictly positive by the extension contract, so the
/// sign of the value is the sign of the numerator.
struct DividedDifferenceValue {
  double value = 0.0;
  std::vector<double> config;
  double numerator = 0.0;
  double denominator = 0.0;
};

DividedDifferenceValue divided_difference(const ExtendedSystem& system, const SampledFunction& f,
                                          const Configuration& config, const EvalOptions& opts = {});

/// Newton second divided difference on three points. Identical (not merely
/// proportional) to the generalized one for poly(2) extended by x^2.
double classical_divided_difference(const SampledFunction& f, const Configuration& config);

/// The left-window weight A_j from the single-point-drop identity on an
/// (n+2)-point grid; see divdiff_core.hpp for the formula.
double lemma1_coefficient(const ExtendedSystem& system, const Configuration& grid, std::size_t j);

/// Result of expressing a sub-configuration divided difference as a convex
/// combination of the consecutive-window ones. Computed twice: by the
/// insertion recursion (`coefficients`) and by least squares in the
/// delta-function basis (`ls_coefficients`); the two must agree to 1e-8 or
/// the routine throws InconsistentOracle.
struct DecompositionCertificate {
  std::vector<std::size_t> indices;
  std::vector<double> grid;
  std::vector<double> target;
  std::vector<double> coefficients;
  std::vector<double> ls_coefficients;
  /// Max over the delta basis of the identity defect, scaled by the term
  /// magnitudes (so 1e-9 means nine clean digits).
  double residual = 0.0;
  double path_disagreement = 0.0;
};

DecompositionCertificate decompose(const ExtendedSystem& system, const Configuration& grid,
                                   const std::vector<std::size_t>& indices);

/// min / value / max of the sub-configuration divided difference against the
/// consecutive-window ones; the value always lies between the extremes (up
/// to evaluation noise).
struct ChainBounds {
  double lower = 0.0;
  double mid = 0.0;
  double upper = 0.0;
  std::vector<double> window_values;
};

ChainBounds chain_bounds(const ExtendedSystem& system, const SampledFunction& f, const Configuration& grid,
                         const std::vector<std::size_t>& indices);

struct WindowCheck {
  std::size_t start = 0;
  double phi = 0.0;
  double dd = 0.0;
  bool nonnegative = true;
};

struct DiscreteConvexityReport {
  bool convex = true;
  std::vector<WindowCheck> windows;
  std::optional<WindowCheck> witness;
  /// Random (n+1)-subsets re-checked after a window pass; a failing subset
  /// while all windows pass would contradict the decomposition identity.
  std::size_t spot_checks = 0;
  std::size_t spot_violations = 0;
  std::optional<std::vector<std::size_t>> spot_witness;
};

/// Window criterion for convexity on a finite grid: f is convex with respect
/// to the family on the grid iff every consecutive (n+1)-window has
/// Phi(w, f) >= 0. Nonnegativity is decided with the Hadamard-scaled
/// tolerance from systems.hpp.
DiscreteConvexityReport check_discrete_convexity(const ExtendedSystem& system, const SampledFunction& f,
                                                 const Configuration& grid, std::size_t random_spot_checks = 32,
                                                 std::uint64_t seed = 0);

}  // namespace chebconvex
