#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chebconvex/convexity.hpp"
#include "chebconvex/systems.hpp"

namespace chebconvex {

/// Shrinking width schedule delta_k = delta0 * 2^{-k}, k = 0..levels-1.
struct Schedule {
  double delta0 = 1.0;
  int levels = 12;

  static Schedule for_domain(const Domain& domain, int levels = 12);
};

struct DinghasSamplerOptions {
  std::size_t offsets = 9;       // lattice of window placements around p
  std::size_t widths = 4;        // lattice of window widths per level
  std::size_t random_draws = 64; // seeded extra draws per level
  std::uint64_t seed = 0;
};

/// Sampled lower generalized derivative at a point: the infimum of divided
/// differences over configurations of width < delta_k whose hull contains p,
/// reported per level. Nesting (each level's sample set contains all finer
/// ones) makes inf_estimates nondecreasing in k by construction. Every value
/// is an upper bound for the true lower derivative: sampling can only miss
/// low configurations, never invent them. Hence `one_sided` is always true,
/// and a value below -tolerance certifies a genuinely negative divided
/// difference at `argmin_config`.
struct DinghasEstimate {
  double point = 0.0;
  std::vector<double> deltas;
  std::vector<double> inf_estimates;
  double estimate = 0.0;
  bool one_sided = true;
  std::vector<double> argmin_config;
  double argmin_value = 0.0;
};

/// Free-node variant: configurations are (n+1)-tuples straddling p with
/// equally spaced plus randomly drawn interior nodes. Analytic f only.
DinghasEstimate estimate_D(const ExtendedSystem& system, const SampledFunction& f, double p,
                           const Schedule& schedule, const DinghasSamplerOptions& sampler = {});

/// Step-pattern variant: configurations are x + (S_j/T)(y - x) for pairs
/// x <= p <= y with y - x < delta_k. Analytic f only.
DinghasEstimate estimate_D_t(const ExtendedSystem& system, const SampledFunction& f, const StepVector& t, double p,
                             const Schedule& schedule, const DinghasSamplerOptions& sampler = {});

enum class WitnessMode { General, Jensen, Pair };

const char* witness_mode_name(WitnessMode mode);

/// For the pair refinement: which of the two step ratios the trace tail
/// settles on (Equal when t_1 = t_2).
enum class RatioClass { FirstOverSecond, SecondOverFirst, Equal };

const char* ratio_class_name(RatioClass c);

struct TraceEntry {
  std::vector<double> config;
  double value = 0.0;
};

/// Localisation run: a nested sequence of configurations with geometrically
/// shrinking widths whose divided differences never increase, pinning a
/// point p where the local lower derivative is at most trace.front().value.
struct MeanValueWitness {
  double p = 0.0;
  std::vector<TraceEntry> trace;
  WitnessMode mode = WitnessMode::General;
  std::optional<RatioClass> bound_kind;
};

struct RefineOptions {
  int max_iters = 60;
  /// Stop once the hull width falls below this fraction of the initial one.
  double width_tol_rel = 1e-9;
};

/// Midpoint refinement: insert all midpoints, keep the consecutive
/// (n+1)-window with the smallest divided difference (smallest index on
/// ties). Max gap halves every step; hull width is at most n/2^{k-1} times
/// the initial max gap after k steps.
MeanValueWitness refine_general(const ExtendedSystem& system, const SampledFunction& f, const Configuration& start,
                                const RefineOptions& opts = {});

/// Equal-step refinement on [x, y]: split each step in two, keep the lowest
/// of the n+1 equally spaced windows. Hull width is (y-x)/2^{k-1} after k
/// steps.
MeanValueWitness refine_jensen(const ExtendedSystem& system, const SampledFunction& f, double x, double y,
                               const RefineOptions& opts = {});

/// Two-step-pattern refinement for n = 2: from a triple with spacing ratio
/// t_i : t_j (pattern steps t = (t_1, t_2), {i,j} = {1,2}), insert the two
/// proportional subdivision points; all three candidate windows again have
/// ratio t_i : t_j or t_j : t_i, and the hull shrinks by at least
/// max(t_1, t_2)/(t_1 + t_2). bound_kind reports the ratio class dominating
/// the last ten trace entries.
MeanValueWitness refine_pair(const ExtendedSystem& system, const SampledFunction& f, const StepVector& t, double x,
                             double y, const RefineOptions& opts = {});

/// True when a sampled divided-difference value is negative beyond the
/// dd-scale tolerance 1e-12 + 1e-9 (1 + |value|), i.e. certifies a genuine
/// violation rather than rounding noise.
bool certified_negative(double value);

enum class CharacterizeMode { Omega, Jensen, Pair };

struct ProbeResult {
  double p = 0.0;
  DinghasEstimate estimate;
  /// Pair mode also probes the swapped pattern (t_2, t_1).
  std::optional<DinghasEstimate> swapped;
  bool negative = false;
};

struct CharacterizationReport {
  CharacterizeMode mode = CharacterizeMode::Omega;
  std::vector<ProbeResult> probes;
  /// True when no probe produced a certified negative estimate.
  bool consistent_with_convexity = true;
  std::optional<ProbeResult> witness;
};

/// Probes the sampled lower derivative at each point. Any estimate below
/// -(1e-12 + 1e-9 |estimate scale|) certifies non-convexity together with
/// the concrete configuration achieving it; absence of negatives is
/// evidence, not proof, and is reported as such.
CharacterizationReport characterize_convexity(const ExtendedSystem& system, const SampledFunction& f,
                                              CharacterizeMode mode, const std::vector<double>& probes,
                                              const Schedule& schedule, const DinghasSamplerOptions& sampler = {},
                                              const StepVector* t = nullptr);

}  // namespace chebconvex
