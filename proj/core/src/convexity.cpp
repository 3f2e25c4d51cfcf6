#include "chebconvex/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chebconvex/errors.hpp"
#include "chebconvex/rng.hpp"

namespace chebconvex {

StepVector::StepVector(std::vector<double> v) : values(std::move(v)) {
  if (values.empty()) raise(ErrorCode::BadSpec, "step vector must be nonempty");
  for (double t : values)
    if (!(t > 0.0) || !std::isfinite(t)) raise(ErrorCode::NonpositiveStep, "step entries must be strictly positive");
}

StepVector StepVector::ones(std::size_t n) { return StepVector(std::vector<double>(n, 1.0)); }

double StepVector::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

std::vector<double> StepVector::normalized_prefixes() const {
  std::vector<double> prefix(values.size() + 1, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = prefix[i] + values[i];
  const double total = prefix.back();
  std::vector<double> out(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) out[i] = prefix[i] / total;
  return out;
}

const char* mode_name(ConvexityMode mode) {
  switch (mode) {
    case ConvexityMode::Plain: return "plain";
    case ConvexityMode::Cyclic: return "cyclic";
    case ConvexityMode::Symmetric: return "symmetric";
    case ConvexityMode::Jensen: return "jensen";
  }
  return "unknown";
}

const char* verdict_name(Verdict v) {
  return v == Verdict::ConvexOnSamples ? "convex-on-samples" : "violated";
}

namespace {

struct SampleBox {
  double lo = 0.0;
  double hi = 0.0;
};

/// Finite (x, scale) rectangle a scan draws from: the domain clipped to the
/// plan's range, with [-4, 4] standing in for unbounded sides and open ends
/// nudged inward.
SampleBox resolve_box(const Domain& domain, const SamplingPlan& plan) {
  if (!domain.is_interval())
    raise(ErrorCode::BadSpec, "convexity scans sample an interval domain; tabulated systems are checked on their grid");
  double lo = std::isfinite(domain.lo()) ? domain.lo() : -4.0;
  double hi = std::isfinite(domain.hi()) ? domain.hi() : 4.0;
  if (plan.x_min) lo = std::max(lo, *plan.x_min);
  if (plan.x_max) hi = std::min(hi, *plan.x_max);
  if (!(lo < hi)) raise(ErrorCode::StepExceedsDomain, "empty sampling range for (x, h)");
  const double nudge = 1e-9 * (hi - lo);
  if (domain.open_lo() && lo == domain.lo()) lo += nudge;
  if (domain.open_hi() && hi == domain.hi()) hi -= nudge;
  if (!(lo < hi)) raise(ErrorCode::StepExceedsDomain, "empty sampling range for (x, h)");
  return {lo, hi};
}

/// The widest node pattern ends at x + w after a couple of roundings in the
/// consumers; pull w back until that endpoint cannot escape the box, which a
/// closed domain boundary would otherwise reject by one ulp.
double clamp_width(double x, double w, double hi) {
  while (w > 0.0 && x + w > hi) w = std::nextafter(w, 0.0);
  for (int s = 0; s < 2 && w > 0.0; ++s) w = std::nextafter(w, 0.0);
  return w;
}

/// Deterministic stream of (x, total-width) pairs: lattice first (x outer,
/// width inner), then seeded random draws. Widths are fractions of the room
/// remaining to the right of x, so every produced pair is admissible.
template <class Fn>
void scan_samples(const SampleBox& box, const SamplingPlan& plan, Fn&& visit) {
  for (std::size_t i = 0; i < plan.lattice_x; ++i) {
    const double x = box.lo + (static_cast<double>(i) + 0.5) * (box.hi - box.lo) / static_cast<double>(plan.lattice_x);
    for (std::size_t j = 0; j < plan.lattice_h; ++j) {
      const double u = static_cast<double>(j + 1) / static_cast<double>(plan.lattice_h);
      const double w = clamp_width(x, u * (box.hi - x), box.hi);
      if (w > 0.0 && !visit(x, w)) return;
    }
  }
  Rng rng(plan.seed);
  for (std::size_t k = 0; k < plan.random_draws; ++k) {
    const double x = rng.uniform(box.lo, box.hi);
    const double w = clamp_width(x, rng.uniform01() * (box.hi - x), box.hi);
    if (w > 0.0 && !visit(x, w)) return;
  }
}

bool strictly_increasing(const std::vector<double>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1] < pts[i])) return false;
  return true;
}

std::vector<std::vector<int>> permutations_for(ConvexityMode mode, std::size_t n) {
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  switch (mode) {
    case ConvexityMode::Plain:
    case ConvexityMode::Jensen:
      return {identity};
    case ConvexityMode::Cyclic: {
      std::vector<std::vector<int>> out;
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<int> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>((i + s) % n);
        out.push_back(std::move(p));
      }
      return out;
    }
    case ConvexityMode::Symmetric: {
      if (n > 6) raise(ErrorCode::FactorialBlowup, "symmetric mode enumerates n! permutations; n is capped at 6");
      std::vector<std::vector<int>> out;
      std::vector<int> p = identity;
      do {
        out.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      return out;
    }
  }
  return {identity};
}

}  // namespace

ConvexityReport check_t_convexity(const ChebSystem& system, const SampledFunction& f, const StepVector& t,
                                  ConvexityMode mode, const SamplingPlan& plan, const EvalOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(system.dim());
  StepVector steps = (mode == ConvexityMode::Jensen) ? StepVector::ones(n) : t;
  if (steps.size() != n) raise(ErrorCode::DimensionMismatch, "step vector length must equal the family dimension");

  const auto perms = permutations_for(mode, n);
  // Normalised prefixes per permutation; the node pattern is x + sigma_j * W.
  std::vector<std::vector<double>> sigmas;
  sigmas.reserve(perms.size());
  for (const auto& p : perms) {
    std::vector<double> permuted(n);
    for (std::size_t i = 0; i < n; ++i) permuted[i] = steps.values[static_cast<std::size_t>(p[i])];
    sigmas.push_back(StepVector(std::move(permuted)).normalized_prefixes());
  }

  ConvexityReport report;
  report.mode = mode;
  const SampleBox box = resolve_box(system.domain(), plan);
  const double total = steps.total();

  scan_samples(box, plan, [&](double x, double w) {
    ++report.samples_checked;
    for (std::size_t pi = 0; pi < sigmas.size(); ++pi) {
      std::vector<double> pts(n + 1);
      for (std::size_t j = 0; j <= n; ++j) pts[j] = x + sigmas[pi][j] * w;
      if (!strictly_increasing(pts)) continue;  // width below float resolution carries no sign information
      const PhiResult phi = evaluate_phi_with_f(system, f, Configuration::unchecked(pts), opts);
      ++report.determinants_checked;
      if (!phi_nonnegative(phi.value, phi.hadamard_bound)) {
        ConvexityWitness witness;
        witness.x = x;
        witness.h = w / total;
        witness.permutation = perms[pi];
        witness.config = std::move(pts);
        witness.phi = phi.value;
        witness.detail = "steps permuted by " + std::string(mode_name(mode)) + " scan";
        report.witness = std::move(witness);
        report.verdict = Verdict::Violated;
        return false;
      }
    }
    return true;
  });
  if (report.samples_checked == 0) raise(ErrorCode::StepExceedsDomain, "no admissible (x, h) samples in the domain");
  return report;
}

namespace {

struct QCounts {
  long long q = 1;
  std::vector<long long> counts;
};

QCounts rational_counts(const std::vector<Rational>& r) {
  if (r.empty()) raise(ErrorCode::BadSpec, "at least one target step required");
  Integer q(1);
  for (const auto& ri : r) {
    if (!(ri > 0)) raise(ErrorCode::NonpositiveStep, "target steps must be strictly positive rationals");
    q = boost::multiprecision::lcm(q, Integer(denominator(ri)));
  }
  QCounts out;
  if (q > 1000000) raise(ErrorCode::BadSpec, "common denominator too large for a refinement grid");
  out.q = q.convert_to<long long>();
  long long total = 0;
  for (const auto& ri : r) {
    const Integer qi = Integer(numerator(ri)) * (q / Integer(denominator(ri)));
    const long long c = qi.convert_to<long long>();
    total += c;
    if (total > 1000000) raise(ErrorCode::BadSpec, "refinement grid too large");
    out.counts.push_back(c);
  }
  return out;
}

}  // namespace

Theorem5Grid theorem5_grid(double x, double h, const std::vector<Rational>& r, const StepVector& t) {
  if (!(h > 0.0) || !std::isfinite(h)) raise(ErrorCode::NonpositiveH, "grid scale h must be strictly positive");
  const QCounts qc = rational_counts(r);
  const std::size_t n = t.size();
  const std::vector<double> sigma = t.normalized_prefixes();
  const long long big_q = std::accumulate(qc.counts.begin(), qc.counts.end(), 0LL);
  const double step = h / static_cast<double>(qc.q);

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(big_q) * n + 1);
  for (long long k = 0; k < big_q; ++k)
    for (std::size_t j = 0; j < n; ++j) pts.push_back(x + (static_cast<double>(k) + sigma[j]) * step);
  pts.push_back(x + static_cast<double>(big_q) * step);

  Theorem5Grid out{Configuration(std::move(pts)), {}, qc.q, qc.counts};
  out.target_indices.push_back(0);
  long long acc = 0;
  for (long long c : qc.counts) {
    acc += c;
    out.target_indices.push_back(static_cast<std::size_t>(acc) * n);
  }
  return out;
}

Theorem5GridExact theorem5_grid_exact(const Rational& x, const Rational& h, const std::vector<Rational>& r,
                                      const std::vector<Rational>& t) {
  if (!(h > 0)) raise(ErrorCode::NonpositiveH, "grid scale h must be strictly positive");
  if (t.empty()) raise(ErrorCode::BadSpec, "step vector must be nonempty");
  for (const auto& ti : t)
    if (!(ti > 0)) raise(ErrorCode::NonpositiveStep, "step entries must be strictly positive");
  const QCounts qc = rational_counts(r);
  const std::size_t n = t.size();

  std::vector<Rational> prefix(n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + t[i];
  const Rational total = prefix.back();

  const long long big_q = std::accumulate(qc.counts.begin(), qc.counts.end(), 0LL);
  const Rational step = h / qc.q;

  Theorem5GridExact out;
  out.q = qc.q;
  out.q_counts = qc.counts;
  out.points.reserve(static_cast<std::size_t>(big_q) * n + 1);
  for (long long k = 0; k < big_q; ++k)
    for (std::size_t j = 0; j < n; ++j) out.points.push_back(x + (Rational(k) + prefix[j] / total) * step);
  out.points.push_back(x + Rational(big_q) * step);

  out.target_indices.push_back(0);
  long long acc = 0;
  for (long long c : qc.counts) {
    acc += c;
    out.target_indices.push_back(static_cast<std::size_t>(acc) * n);
  }
  return out;
}

namespace {

/// Shared body of the two propagation checks: windows first, target second.
template <class GridFn, class DetailFn>
ConvexityReport propagation_scan(const ChebSystem& system, const SampledFunction& f, double step_total,
                                 const SamplingPlan& plan, const EvalOptions& opts, GridFn&& make_grid,
                                 DetailFn&& window_detail) {
  const std::size_t n = static_cast<std::size_t>(system.dim());
  ConvexityReport report;
  report.mode = ConvexityMode::Plain;
  const SampleBox box = resolve_box(system.domain(), plan);

  scan_samples(box, plan, [&](double x, double w) {
    const double h = w / step_total;
    std::vector<double> pts;
    std::vector<std::size_t> targets;
    try {
      auto grid = make_grid(x, h);
      pts = std::move(grid.first);
      targets = std::move(grid.second);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotStrictlyOrdered) return true;  // width below float resolution
      throw;
    }
    ++report.samples_checked;

    for (std::size_t win = 0; win + n < pts.size(); ++win) {
      std::vector<double> nodes(pts.begin() + static_cast<std::ptrdiff_t>(win),
                                pts.begin() + static_cast<std::ptrdiff_t>(win + n + 1));
      const PhiResult phi = evaluate_phi_with_f(system, f, Configuration::unchecked(std::move(nodes)), opts);
      ++report.determinants_checked;
      if (!phi_nonnegative(phi.value, phi.hadamard_bound)) {
        ConvexityWitness witness;
        witness.x = x;
        witness.h = h;
        witness.config = std::vector<double>(pts.begin() + static_cast<std::ptrdiff_t>(win),
                                             pts.begin() + static_cast<std::ptrdiff_t>(win + n + 1));
        witness.phi = phi.value;
        witness.window = win;
        witness.detail = window_detail(win);
        report.witness = std::move(witness);
        report.verdict = Verdict::Violated;
        return false;
      }
    }

    std::vector<double> target_nodes;
    for (std::size_t i : targets) target_nodes.push_back(pts[i]);
    const PhiResult phi = evaluate_phi_with_f(system, f, Configuration::unchecked(std::move(target_nodes)), opts);
    ++report.determinants_checked;
    if (!phi_nonnegative(phi.value, phi.hadamard_bound)) {
      // Every window passed, so the convex decomposition of the target says
      // this cannot happen; record it loudly instead of hiding it.
      ++report.target_failures;
      ConvexityWitness witness;
      witness.x = x;
      witness.h = h;
      for (std::size_t i : targets) witness.config.push_back(pts[i]);
      witness.phi = phi.value;
      witness.detail = "target tuple failed although every window passed";
      report.witness = std::move(witness);
      report.verdict = Verdict::Violated;
      return false;
    }
    return true;
  });
  if (report.samples_checked == 0) raise(ErrorCode::StepExceedsDomain, "no admissible (x, h) samples in the domain");
  return report;
}

}  // namespace

ConvexityReport check_theorem5_propagation(const ChebSystem& system, const SampledFunction& f, const StepVector& t,
                                           const std::vector<Rational>& r, const SamplingPlan& plan,
                                           const EvalOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(system.dim());
  if (t.size() != n) raise(ErrorCode::DimensionMismatch, "step vector length must equal the family dimension");
  if (r.size() != n) raise(ErrorCode::DimensionMismatch, "target step vector must have one entry per family slot");

  double step_total = 0.0;
  for (const auto& ri : r) step_total += to_double(ri);
  rational_counts(r);  // validates positivity and denominators up front

  return propagation_scan(
      system, f, step_total, plan, opts,
      [&](double x, double h) {
        Theorem5Grid grid = theorem5_grid(x, h, r, t);
        return std::pair<std::vector<double>, std::vector<std::size_t>>(grid.points.points(), grid.target_indices);
      },
      [&](std::size_t win) {
        std::ostringstream os;
        os << "refinement window " << win << " (steps are the cyclic shift by " << win % n << " of t, scaled by h/(T q))";
        return os.str();
      });
}

Theorem5PlusGrid theorem5plus_grid(double x, double h, const StepVector& t) {
  if (!(h > 0.0) || !std::isfinite(h)) raise(ErrorCode::NonpositiveH, "grid scale h must be strictly positive");
  const std::size_t n = t.size();
  if (n < 2) raise(ErrorCode::BadSpec, "pairwise reduction needs at least two steps");

  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + t.values[i];

  std::vector<double> pts;
  pts.reserve(n * (n - 1) + 1);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t j = 0; j + 1 < n; ++j)
      pts.push_back(x + (cum[k - 1] + static_cast<double>(j) * t.values[k - 1] / static_cast<double>(n - 1)) * h);
  pts.push_back(x + cum[n] * h);

  Theorem5PlusGrid out{Configuration(std::move(pts)), {}, {}};
  for (std::size_t k = 0; k <= n; ++k) out.target_indices.push_back(k * (n - 1));

  const std::size_t windows = n * (n - 1) + 1 - n;
  for (std::size_t win = 0; win < windows; ++win) {
    PairPattern pattern;
    pattern.window = win;
    pattern.i = win / (n - 1) + 1;
    pattern.first = (n - 1) * pattern.i - win;
    pattern.second = n - pattern.first;
    out.window_patterns.push_back(pattern);
  }
  return out;
}

ConvexityReport check_pairwise_reduction(const ChebSystem& system, const SampledFunction& f, const StepVector& t,
                                         const SamplingPlan& plan, const EvalOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(system.dim());
  if (t.size() != n) raise(ErrorCode::DimensionMismatch, "step vector length must equal the family dimension");
  if (n < 2) raise(ErrorCode::BadSpec, "pairwise reduction needs at least two steps");

  // Pattern descriptions do not depend on (x, h); compute them once.
  const Theorem5PlusGrid probe = theorem5plus_grid(0.0, 1.0, t);

  return propagation_scan(
      system, f, t.total(), plan, opts,
      [&](double x, double h) {
        Theorem5PlusGrid grid = theorem5plus_grid(x, h, t);
        return std::pair<std::vector<double>, std::vector<std::size_t>>(grid.points.points(), grid.target_indices);
      },
      [&](std::size_t win) {
        const PairPattern& p = probe.window_patterns[win];
        std::ostringstream os;
        os << "pair window " << win << ": steps (t_" << p.i << " x" << p.first << ", t_" << p.i + 1 << " x"
           << p.second << ") scaled by h/(n-1)";
        return os.str();
      });
}

}  // namespace chebconvex
