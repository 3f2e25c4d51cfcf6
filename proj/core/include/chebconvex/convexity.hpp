#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chebconvex/rational.hpp"
#include "chebconvex/systems.hpp"

namespace chebconvex {

/// Strictly positive step pattern t = (t_1, ..., t_n); its length must match
/// the base family dimension of the check it is used in.
struct StepVector {
  std::vector<double> values;

  explicit StepVector(std::vector<double> v);
  static StepVector ones(std::size_t n);

  std::size_t size() const { return values.size(); }
  double total() const;
  /// Normalised prefix sums S_j / T, j = 0..n (so 0 and 1 included). The
  /// node pattern x + (S_j/T) * W is scale invariant in t by construction.
  std::vector<double> normalized_prefixes() const;
};

enum class ConvexityMode { Plain, Cyclic, Symmetric, Jensen };

const char* mode_name(ConvexityMode mode);

enum class Verdict { ConvexOnSamples, Violated };

const char* verdict_name(Verdict v);

/// Rectangle of base points and step scales scanned by the samplers: a
/// lattice of `lattice_x` by `lattice_h` admissible (x, h) pairs followed by
/// `random_draws` seeded uniform draws. For unbounded domains the x range
/// defaults to [-4, 4]; an explicit range narrows or widens any domain
/// (intersected with it).
struct SamplingPlan {
  std::size_t lattice_x = 32;
  std::size_t lattice_h = 32;
  std::size_t random_draws = 256;
  std::uint64_t seed = 0;
  std::optional<double> x_min;
  std::optional<double> x_max;
};

struct ConvexityWitness {
  double x = 0.0;
  double h = 0.0;
  std::vector<int> permutation;
  std::vector<double> config;
  double phi = 0.0;
  /// Propagation checks: which grid window failed (npos-like max() when the
  /// witness is a target tuple or a plain sample).
  std::optional<std::size_t> window;
  std::string detail;
};

struct ConvexityReport {
  Verdict verdict = Verdict::ConvexOnSamples;
  ConvexityMode mode = ConvexityMode::Plain;
  std::size_t samples_checked = 0;
  std::size_t determinants_checked = 0;
  std::optional<ConvexityWitness> witness;
  /// Propagation checks only: target tuples that failed while every window
  /// passed. Must stay zero; a nonzero count is reported, never hidden.
  std::size_t target_failures = 0;
};

/// Scans Phi(w, f) >= 0 over configurations x + (S_j/T) h T, i.e. steps
/// proportional to a permuted t. Plain uses t as given; cyclic all n
/// rotations; symmetric all n! permutations (n <= 6); jensen replaces t by
/// (1, ..., 1). Stops at the first violation in deterministic scan order.
ConvexityReport check_t_convexity(const ChebSystem& system, const SampledFunction& f, const StepVector& t,
                                  ConvexityMode mode, const SamplingPlan& plan = {}, const EvalOptions& opts = {});

/// Refinement grid connecting steps (r_1, ..., r_m) h to cycles of steps
/// t h / (T q): with q the least common denominator of the r_i and
/// q_i = r_i q, the grid
///
///   x_{k n + j} = x + (k + S_j / T) h / q,  k = 0..Q-1, j = 0..n-1,
///
/// plus the terminal point x + Q h / q (Q = sum q_i) has consecutive
/// differences cycling through (t_1, ..., t_n) h / (T q) and contains the
/// target points x, x + r_1 h, x + (r_1 + r_2) h, ... at known indices.
struct Theorem5Grid {
  Configuration points;
  std::vector<std::size_t> target_indices;
  long long q = 1;
  std::vector<long long> q_counts;
};

Theorem5Grid theorem5_grid(double x, double h, const std::vector<Rational>& r, const StepVector& t);

/// Same grid in exact rational arithmetic.
struct Theorem5GridExact {
  std::vector<Rational> points;
  std::vector<std::size_t> target_indices;
  long long q = 1;
  std::vector<long long> q_counts;
};

Theorem5GridExact theorem5_grid_exact(const Rational& x, const Rational& h, const std::vector<Rational>& r,
                                      const std::vector<Rational>& t);

/// For each sampled (x, h): build the refinement grid, check every
/// consecutive (n+1)-window of it, and only then check the target tuple.
/// A window failure yields a Violated verdict with the window as witness; a
/// target failing while all windows passed is counted in target_failures.
ConvexityReport check_theorem5_propagation(const ChebSystem& system, const SampledFunction& f, const StepVector& t,
                                           const std::vector<Rational>& r, const SamplingPlan& plan = {},
                                           const EvalOptions& opts = {});

/// Two-block step pattern (t_i repeated k times, then t_{i+1} repeated
/// n - k times) instantiated by window `window` of the pairwise grid.
struct PairPattern {
  std::size_t window = 0;
  std::size_t i = 0;       // first block uses t_{i+1} in 1-based terms
  std::size_t first = 0;   // block lengths
  std::size_t second = 0;
};

/// Grid reducing a full step pattern t to pairwise-constant patterns:
///
///   x_{(n-1)(k-1) + j} = x + ((t_0 + ... + t_{k-1}) + j t_k / (n-1)) h,
///   t_0 = 0, k = 1..n, j = 0..n-2, plus the terminal (k = n, j = n-1),
///
/// n(n-1) + 1 points whose every consecutive (n+1)-window realises a
/// two-block pattern on the consecutive pair (t_k, t_{k+1}); the target
/// points x, x + t_1 h, x + (t_1 + t_2) h, ... sit at indices 0, n-1,
/// 2(n-1), ..., n(n-1).
struct Theorem5PlusGrid {
  Configuration points;
  std::vector<std::size_t> target_indices;
  std::vector<PairPattern> window_patterns;
};

Theorem5PlusGrid theorem5plus_grid(double x, double h, const StepVector& t);

/// Samples (x, h), builds the pairwise grid, checks all windows then the
/// target. Witness reports carry the pair pattern of the failing window.
ConvexityReport check_pairwise_reduction(const ChebSystem& system, const SampledFunction& f, const StepVector& t,
                                         const SamplingPlan& plan = {}, const EvalOptions& opts = {});

}  // namespace chebconvex
