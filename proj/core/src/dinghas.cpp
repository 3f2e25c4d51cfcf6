#include "chebconvex/dinghas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chebconvex/divdiff.hpp"
#include "chebconvex/errors.hpp"
#include "chebconvex/rng.hpp"

namespace chebconvex {

Schedule Schedule::for_domain(const Domain& domain, int levels) {
  Schedule s;
  s.levels = levels;
  s.delta0 = domain.bounded() ? std::min(1.0, domain.width() / 4.0) : 1.0;
  return s;
}

const char* witness_mode_name(WitnessMode mode) {
  switch (mode) {
    case WitnessMode::General: return "general";
    case WitnessMode::Jensen: return "jensen";
    case WitnessMode::Pair: return "pair";
  }
  return "unknown";
}

const char* ratio_class_name(RatioClass c) {
  switch (c) {
    case RatioClass::FirstOverSecond: return "t1/t2";
    case RatioClass::SecondOverFirst: return "t2/t1";
    case RatioClass::Equal: return "equal";
  }
  return "unknown";
}

namespace {

void require_estimable(const ExtendedSystem& system, const SampledFunction& f, double p) {
  if (!f.analytic())
    raise(ErrorCode::TableFunctionNotAdmissible,
          "lower-derivative estimation chooses its own nodes; a finite table cannot support that");
  if (!system.base().domain().is_interval())
    raise(ErrorCode::BadSpec, "lower-derivative estimation needs an interval domain");
  if (!system.base().domain().contains(p)) raise(ErrorCode::OutOfDomain, "estimation point lies outside the domain");
}

void require_refinable(const ExtendedSystem& system, const SampledFunction& f) {
  if (!f.analytic())
    raise(ErrorCode::TableFunctionNotAdmissible,
          "refinement chooses its own nodes; a finite table cannot support that");
  if (!system.base().domain().is_interval()) raise(ErrorCode::BadSpec, "refinement needs an interval domain");
}

bool strictly_increasing(const std::vector<double>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1] < pts[i])) return false;
  return true;
}

double dd_at(const ExtendedSystem& system, const SampledFunction& f, const std::vector<double>& pts) {
  return divided_difference(system, f, Configuration(std::vector<double>(pts))).value;
}

/// Candidate-window evaluation during refinement. Once windows shrink far
/// enough, the collocation determinant loses its sign to rounding even
/// though the nodes are still distinct; such a window marks the end of
/// refinable widths at double resolution, not a caller error.
bool window_dd(const ExtendedSystem& system, const SampledFunction& f, const std::vector<double>& pts, double* out) {
  try {
    *out = dd_at(system, f, pts);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DenominatorNotPositive || e.code() == ErrorCode::PositivityViolation) return false;
    throw;
  }
}

/// Per-level minima plus their achievers, folded into nested (suffix-min)
/// estimates at the end.
class LevelAccumulator {
 public:
  explicit LevelAccumulator(int levels) : mins_(static_cast<std::size_t>(levels), inf()), configs_(static_cast<std::size_t>(levels)) {}

  void offer(int level, const std::vector<double>& config, double value) {
    auto k = static_cast<std::size_t>(level);
    if (value < mins_[k]) {
      mins_[k] = value;
      configs_[k] = config;
    }
  }

  bool level_empty(int level) const { return mins_[static_cast<std::size_t>(level)] == inf(); }

  void finalize(DinghasEstimate& out) const {
    const std::size_t levels = mins_.size();
    out.inf_estimates.assign(levels, 0.0);
    double running = inf();
    std::size_t arg = levels - 1;
    // Suffix minima: level k sees every draw at width below delta_k.
    std::vector<std::size_t> arg_at(levels, levels - 1);
    for (std::size_t k = levels; k-- > 0;) {
      if (mins_[k] < running) {
        running = mins_[k];
        arg = k;
      }
      out.inf_estimates[k] = running;
      arg_at[k] = arg;
    }
    out.estimate = out.inf_estimates.back();
    out.argmin_value = out.inf_estimates.front();
    out.argmin_config = configs_[arg_at.front()];
    out.one_sided = true;
  }

 private:
  static double inf() { return std::numeric_limits<double>::infinity(); }

  std::vector<double> mins_;
  std::vector<std::vector<double>> configs_;
};

void check_sampler(const DinghasSamplerOptions& sampler) {
  if (sampler.offsets < 2) raise(ErrorCode::BadSpec, "sampler needs at least two window offsets");
  if (sampler.widths < 1) raise(ErrorCode::BadSpec, "sampler needs at least one window width");
}

void check_schedule(const Schedule& schedule) {
  if (schedule.levels < 1) raise(ErrorCode::BadSpec, "schedule needs at least one level");
  if (!(schedule.delta0 > 0.0) || !std::isfinite(schedule.delta0))
    raise(ErrorCode::BadSpec, "schedule width must be strictly positive");
}

}  // namespace

DinghasEstimate estimate_D(const ExtendedSystem& system, const SampledFunction& f, double p,
                           const Schedule& schedule, const DinghasSamplerOptions& sampler) {
  require_estimable(system, f, p);
  check_sampler(sampler);
  check_schedule(schedule);

  const std::size_t n = static_cast<std::size_t>(system.base_dim());
  const Domain& domain = system.base().domain();

  DinghasEstimate out;
  out.point = p;
  LevelAccumulator acc(schedule.levels);
  Rng rng(sampler.seed);

  for (int level = 0; level < schedule.levels; ++level) {
    const double delta = schedule.delta0 * std::pow(2.0, -level);
    out.deltas.push_back(delta);

    const auto try_config = [&](double x0, double w, const std::vector<double>* interior) {
      if (!(w > 0.0)) return;
      if (!domain.contains(x0) || !domain.contains(x0 + w)) return;
      std::vector<double> pts(n + 1);
      pts.front() = x0;
      pts.back() = x0 + w;
      if (interior == nullptr) {
        for (std::size_t j = 1; j < n; ++j) pts[j] = x0 + static_cast<double>(j) * w / static_cast<double>(n);
      } else {
        for (std::size_t j = 1; j < n; ++j) pts[j] = (*interior)[j - 1];
      }
      if (!strictly_increasing(pts)) return;
      acc.offer(level, pts, dd_at(system, f, pts));
    };

    for (std::size_t i = 0; i < sampler.offsets; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(sampler.offsets - 1);
      for (std::size_t m = 0; m < sampler.widths; ++m) {
        const double w = delta * static_cast<double>(m + 1) / static_cast<double>(sampler.widths + 1);
        try_config(p - u * w, w, nullptr);
      }
    }
    for (std::size_t k = 0; k < sampler.random_draws; ++k) {
      const double w = delta * rng.uniform(0.15, 0.98);
      const double x0 = p - rng.uniform01() * w;
      std::vector<double> interior(n >= 1 ? n - 1 : 0);
      for (auto& v : interior) v = x0 + rng.uniform01() * w;
      std::sort(interior.begin(), interior.end());
      try_config(x0, w, &interior);
    }

    if (acc.level_empty(level))
      raise(ErrorCode::NoAdmissibleConfiguration, "no admissible configuration at the requested width; shrink delta0");
  }

  acc.finalize(out);
  return out;
}

DinghasEstimate estimate_D_t(const ExtendedSystem& system, const SampledFunction& f, const StepVector& t, double p,
                             const Schedule& schedule, const DinghasSamplerOptions& sampler) {
  require_estimable(system, f, p);
  check_sampler(sampler);
  check_schedule(schedule);

  const std::size_t n = static_cast<std::size_t>(system.base_dim());
  if (t.size() != n) raise(ErrorCode::DimensionMismatch, "step vector length must equal the family dimension");
  const std::vector<double> sigma = t.normalized_prefixes();
  const Domain& domain = system.base().domain();

  DinghasEstimate out;
  out.point = p;
  LevelAccumulator acc(schedule.levels);
  Rng rng(sampler.seed);

  for (int level = 0; level < schedule.levels; ++level) {
    const double delta = schedule.delta0 * std::pow(2.0, -level);
    out.deltas.push_back(delta);

    const auto try_config = [&](double x0, double w) {
      if (!(w > 0.0)) return;
      if (!domain.contains(x0) || !domain.contains(x0 + w)) return;
      std::vector<double> pts(n + 1);
      for (std::size_t j = 0; j <= n; ++j) pts[j] = x0 + sigma[j] * w;
      if (!strictly_increasing(pts)) return;
      acc.offer(level, pts, dd_at(system, f, pts));
    };

    for (std::size_t i = 0; i < sampler.offsets; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(sampler.offsets - 1);
      for (std::size_t m = 0; m < sampler.widths; ++m) {
        const double w = delta * static_cast<double>(m + 1) / static_cast<double>(sampler.widths + 1);
        try_config(p - u * w, w);
      }
    }
    for (std::size_t k = 0; k < sampler.random_draws; ++k) {
      const double w = delta * rng.uniform(0.15, 0.98);
      try_config(p - rng.uniform01() * w, w);
    }

    if (acc.level_empty(level))
      raise(ErrorCode::NoAdmissibleConfiguration, "no admissible configuration at the requested width; shrink delta0");
  }

  acc.finalize(out);
  return out;
}

namespace {

bool width_converged(double width, double initial_width, const RefineOptions& opts) {
  return width < opts.width_tol_rel * initial_width;
}

}  // namespace

MeanValueWitness refine_general(const ExtendedSystem& system, const SampledFunction& f, const Configuration& start,
                                const RefineOptions& opts) {
  require_refinable(system, f);
  const std::size_t n = static_cast<std::size_t>(system.base_dim());
  if (start.size() != n + 1) raise(ErrorCode::DimensionMismatch, "refinement starts from a dim+1 configuration");

  MeanValueWitness out;
  out.mode = WitnessMode::General;
  std::vector<double> current = start.points();
  out.trace.push_back({current, dd_at(system, f, current)});
  const double initial_width = current.back() - current.front();

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    // Insert all midpoints, then keep the lowest consecutive window.
    std::vector<double> fine;
    fine.reserve(2 * n + 1);
    for (std::size_t j = 0; j < current.size(); ++j) {
      if (j > 0) fine.push_back(0.5 * (current[j - 1] + current[j]));
      fine.push_back(current[j]);
    }
    if (!strictly_increasing(fine)) break;  // float coalescence: nothing finer exists

    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_pts;
    for (std::size_t i = 0; i + n < fine.size(); ++i) {
      std::vector<double> window(fine.begin() + static_cast<std::ptrdiff_t>(i),
                                 fine.begin() + static_cast<std::ptrdiff_t>(i + n + 1));
      double value = 0.0;
      if (!window_dd(system, f, window, &value)) continue;
      if (value < best_value) {
        best_value = value;
        best_pts = std::move(window);
      }
    }
    if (best_pts.empty()) break;  // every finer window lost its determinant sign
    current = std::move(best_pts);
    out.trace.push_back({current, best_value});
    if (width_converged(current.back() - current.front(), initial_width, opts)) break;
  }

  out.p = 0.5 * (current.front() + current.back());
  return out;
}

MeanValueWitness refine_jensen(const ExtendedSystem& system, const SampledFunction& f, double x, double y,
                               const RefineOptions& opts) {
  require_refinable(system, f);
  const std::size_t n = static_cast<std::size_t>(system.base_dim());
  if (!(x < y)) raise(ErrorCode::NotStrictlyOrdered, "refinement interval requires x < y");

  MeanValueWitness out;
  out.mode = WitnessMode::Jensen;

  double base = x;
  double step = (y - x) / static_cast<double>(n);
  const auto config_of = [&](double b, double s) {
    std::vector<double> pts(n + 1);
    for (std::size_t j = 0; j <= n; ++j) pts[j] = b + static_cast<double>(j) * s;
    return pts;
  };

  std::vector<double> current = config_of(base, step);
  if (!strictly_increasing(current)) raise(ErrorCode::NotStrictlyOrdered, "interval too narrow for a grid");
  out.trace.push_back({current, dd_at(system, f, current)});
  const double initial_width = y - x;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const double half = 0.5 * step;
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    bool degenerate = false;
    bool found = false;
    for (std::size_t i = 0; i <= n; ++i) {
      const std::vector<double> window = config_of(base + static_cast<double>(i) * half, half);
      if (!strictly_increasing(window)) {
        degenerate = true;
        break;
      }
      double value = 0.0;
      if (!window_dd(system, f, window, &value)) continue;
      if (value < best_value) {
        best_value = value;
        best = i;
        found = true;
      }
    }
    if (degenerate || !found) break;
    base += static_cast<double>(best) * half;
    step = half;
    current = config_of(base, step);
    out.trace.push_back({current, best_value});
    if (width_converged(current.back() - current.front(), initial_width, opts)) break;
  }

  out.p = 0.5 * (current.front() + current.back());
  return out;
}

MeanValueWitness refine_pair(const ExtendedSystem& system, const SampledFunction& f, const StepVector& t, double x,
                             double y, const RefineOptions& opts) {
  require_refinable(system, f);
  if (system.base_dim() != 2) raise(ErrorCode::BadSpec, "pair refinement is a two-step construction (dim 2)");
  if (t.size() != 2) raise(ErrorCode::DimensionMismatch, "pair refinement takes exactly two steps");
  if (!(x < y)) raise(ErrorCode::NotStrictlyOrdered, "refinement interval requires x < y");

  const double t1 = t.values[0];
  const double t2 = t.values[1];
  const bool equal = t1 == t2;

  MeanValueWitness out;
  out.mode = WitnessMode::Pair;

  // Ratio class of the current triple: first/second means (m-a):(b-m) = t1:t2.
  RatioClass cls = RatioClass::FirstOverSecond;
  std::vector<RatioClass> classes;

  std::vector<double> cur = {x, x + (y - x) * t1 / (t1 + t2), y};
  if (!strictly_increasing(cur)) raise(ErrorCode::NotStrictlyOrdered, "interval too narrow for a grid");
  out.trace.push_back({cur, dd_at(system, f, cur)});
  classes.push_back(equal ? RatioClass::Equal : cls);
  const double initial_width = y - x;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const double a = cur[0], m = cur[1], b = cur[2];
    const double d1 = m - a, d2 = b - m;
    // Current ratio d1:d2 = ti:tj. Subdivision keeping every candidate
    // window in one of the two ratio classes:
    //   y1 = a + d1 ti/(ti+tj),  y3 = m + d2 tj/(ti+tj);
    // windows (a,y1,m), (y1,m,y3) have ratio ti:tj, (m,y3,b) has tj:ti.
    const double ti = (cls == RatioClass::SecondOverFirst) ? t2 : t1;
    const double tj = (cls == RatioClass::SecondOverFirst) ? t1 : t2;
    const double y1 = a + d1 * ti / (ti + tj);
    const double y3 = m + d2 * tj / (ti + tj);

    const std::vector<std::vector<double>> windows = {{a, y1, m}, {y1, m, y3}, {m, y3, b}};
    std::size_t best = 3;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < windows.size(); ++i) {
      if (!strictly_increasing(windows[i])) continue;
      double value = 0.0;
      if (!window_dd(system, f, windows[i], &value)) continue;
      if (value < best_value) {
        best_value = value;
        best = i;
      }
    }
    if (best == 3) break;  // all candidates degenerate at float resolution

    cur = windows[best];
    if (best == 2) cls = (cls == RatioClass::FirstOverSecond) ? RatioClass::SecondOverFirst : RatioClass::FirstOverSecond;
    out.trace.push_back({cur, best_value});
    classes.push_back(equal ? RatioClass::Equal : cls);
    if (width_converged(cur.back() - cur.front(), initial_width, opts)) break;
  }

  // Dominant ratio class over the last ten accepted triples; ties go to the
  // most recent one.
  const std::size_t tail = std::min<std::size_t>(10, classes.size());
  std::size_t first_count = 0, second_count = 0;
  for (std::size_t i = classes.size() - tail; i < classes.size(); ++i) {
    if (classes[i] == RatioClass::FirstOverSecond) ++first_count;
    if (classes[i] == RatioClass::SecondOverFirst) ++second_count;
  }
  if (equal)
    out.bound_kind = RatioClass::Equal;
  else if (first_count != second_count)
    out.bound_kind = first_count > second_count ? RatioClass::FirstOverSecond : RatioClass::SecondOverFirst;
  else
    out.bound_kind = classes.back();

  out.p = 0.5 * (cur.front() + cur.back());
  return out;
}

bool certified_negative(double value) { return value < -(1e-12 + 1e-9 * (1.0 + std::abs(value))); }

CharacterizationReport characterize_convexity(const ExtendedSystem& system, const SampledFunction& f,
                                              CharacterizeMode mode, const std::vector<double>& probes,
                                              const Schedule& schedule, const DinghasSamplerOptions& sampler,
                                              const StepVector* t) {
  CharacterizationReport report;
  report.mode = mode;
  const std::size_t n = static_cast<std::size_t>(system.base_dim());

  StepVector pattern = StepVector::ones(n);
  if (mode == CharacterizeMode::Pair) {
    if (t == nullptr) raise(ErrorCode::BadSpec, "pair characterization needs a step pattern");
    if (t->size() != 2 || n != 2) raise(ErrorCode::BadSpec, "pair characterization is a two-step construction");
    pattern = *t;
  }

  for (double p : probes) {
    ProbeResult probe;
    probe.p = p;
    switch (mode) {
      case CharacterizeMode::Omega:
        probe.estimate = estimate_D(system, f, p, schedule, sampler);
        break;
      case CharacterizeMode::Jensen:
        probe.estimate = estimate_D_t(system, f, StepVector::ones(n), p, schedule, sampler);
        break;
      case CharacterizeMode::Pair: {
        probe.estimate = estimate_D_t(system, f, pattern, p, schedule, sampler);
        StepVector swapped(std::vector<double>{pattern.values[1], pattern.values[0]});
        probe.swapped = estimate_D_t(system, f, swapped, p, schedule, sampler);
        break;
      }
    }
    probe.negative = certified_negative(probe.estimate.argmin_value) ||
                     (probe.swapped && certified_negative(probe.swapped->argmin_value));
    if (probe.negative && !report.witness) {
      report.witness = probe;
      report.consistent_with_convexity = false;
    }
    report.probes.push_back(std::move(probe));
  }
  return report;
}

}  // namespace chebconvex
