#include "chebconvex/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "chebconvex/divdiff_core.hpp"
#include "chebconvex/errors.hpp"
#include "chebconvex/matrix.hpp"
#include "chebconvex/rng.hpp"

namespace chebconvex {

namespace {

/// Floating-point scalar evaluator over a ChebSystem; see divdiff_core.hpp
/// for the contract.
class SystemEval {
 public:
  SystemEval(const ChebSystem& base, const SampledFunction& extension, const EvalOptions& opts)
      : base_(base), extension_(extension), opts_(opts) {}

  int dim() const { return base_.dim(); }

  double phi_base(std::span<const double> nodes) const { return det(nodes, nullptr); }

  double phi_star(std::span<const double> nodes) const { return det(nodes, &extension_); }

  double phi_f(std::span<const double> nodes, std::span<const double> fvals) const {
    const std::size_t rows = static_cast<std::size_t>(base_.dim()) + 1;
    if (nodes.size() != rows || fvals.size() != rows)
      raise(ErrorCode::DimensionMismatch, "value-stack size mismatch");
    Matrix<double> m(rows, rows);
    fill_base_rows(m, nodes);
    for (std::size_t j = 0; j < rows; ++j) m(rows - 1, j) = fvals[j];
    return determinant_info(std::move(m), opts_.condition_threshold).value;
  }

  double hadamard_star(std::span<const double> nodes) const {
    const std::size_t rows = static_cast<std::size_t>(base_.dim()) + 1;
    Matrix<double> m(rows, rows);
    fill_base_rows(m, nodes);
    for (std::size_t j = 0; j < rows; ++j) m(rows - 1, j) = extension_(nodes[j]);
    return hadamard_bound(m);
  }

 private:
  void fill_base_rows(Matrix<double>& m, std::span<const double> nodes) const {
    for (double x : nodes)
      if (!base_.domain().contains(x)) {
        std::ostringstream os;
        os << "node " << x << " lies outside the system domain";
        raise(ErrorCode::OutOfDomain, os.str());
      }
    for (int i = 0; i < base_.dim(); ++i)
      for (std::size_t j = 0; j < nodes.size(); ++j) m(static_cast<std::size_t>(i), j) = base_.basis_value(i, nodes[j]);
  }

  double det(std::span<const double> nodes, const SampledFunction* last_row) const {
    const std::size_t rows = static_cast<std::size_t>(base_.dim()) + (last_row != nullptr ? 1 : 0);
    if (nodes.size() != rows) raise(ErrorCode::DimensionMismatch, "node count must match stacked rows");
    Matrix<double> m(rows, rows);
    fill_base_rows(m, nodes);
    if (last_row != nullptr)
      for (std::size_t j = 0; j < rows; ++j) m(rows - 1, j) = (*last_row)(nodes[j]);
    return determinant_info(std::move(m), opts_.condition_threshold).value;
  }

  const ChebSystem& base_;
  const SampledFunction& extension_;
  const EvalOptions& opts_;
};

std::vector<double> values_on(const SampledFunction& f, std::span<const double> nodes) {
  std::vector<double> v;
  v.reserve(nodes.size());
  for (double x : nodes) v.push_back(f(x));
  return v;
}

}  // namespace

DividedDifferenceValue divided_difference(const ExtendedSystem& system, const SampledFunction& f,
                                          const Configuration& config, const EvalOptions& opts) {
  const SystemEval ev(system.base(), system.extension(), opts);
  if (config.size() != static_cast<std::size_t>(system.base_dim()) + 1)
    raise(ErrorCode::DimensionMismatch, "divided difference needs dim+1 nodes");

  const std::vector<double> fvals = values_on(f, config.span());
  const double den = ev.phi_star(config.span());
  if (!(den > 0.0)) raise(ErrorCode::DenominatorNotPositive, "extended determinant must be strictly positive");
  const double num = ev.phi_f(config.span(), fvals);

  DividedDifferenceValue out;
  out.value = num / den;
  out.config = config.points();
  out.numerator = num;
  out.denominator = den;
  return out;
}

double classical_divided_difference(const SampledFunction& f, const Configuration& config) {
  if (config.size() != 3) raise(ErrorCode::DimensionMismatch, "classical second divided difference needs 3 nodes");
  const auto& x = config.points();
  const double d01 = (f(x[1]) - f(x[0])) / (x[1] - x[0]);
  const double d12 = (f(x[2]) - f(x[1])) / (x[2] - x[1]);
  return (d12 - d01) / (x[2] - x[0]);
}

double lemma1_coefficient(const ExtendedSystem& system, const Configuration& grid, std::size_t j) {
  const EvalOptions opts;
  const SystemEval ev(system.base(), system.extension(), opts);
  return detail::lemma1_coefficient_core<double>(ev, grid.span(), j);
}

namespace {

/// Identity defect of weights `a` over the delta basis, scaled per row by the
/// participating term magnitudes. Also reports the raw window/target delta
/// divided differences for reuse.
struct DeltaSystem {
  Matrix<double> w;        // rows: delta index, cols: window
  std::vector<double> b;   // target dd per delta index
};

DeltaSystem delta_system(const SystemEval& ev, std::span<const double> grid, std::span<const std::size_t> indices) {
  const std::size_t n = static_cast<std::size_t>(ev.dim());
  const std::size_t windows = grid.size() - n;
  DeltaSystem sys{Matrix<double>(grid.size(), windows), std::vector<double>(grid.size())};

  std::vector<std::size_t> window_idx(n + 1);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t i = 0; i < windows; ++i) {
      for (std::size_t j = 0; j <= n; ++j) window_idx[j] = i + j;
      sys.w(k, i) = detail::delta_dd<double>(ev, grid, std::span<const std::size_t>(window_idx), k);
    }
    sys.b[k] = detail::delta_dd<double>(ev, grid, indices, k);
  }
  return sys;
}

double scaled_defect(const DeltaSystem& sys, std::span<const double> coeffs) {
  double worst = 0.0;
  for (std::size_t k = 0; k < sys.b.size(); ++k) {
    double combo = 0.0;
    double scale = 1.0 + std::abs(sys.b[k]);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      combo += coeffs[i] * sys.w(k, i);
      scale += std::abs(coeffs[i] * sys.w(k, i));
    }
    worst = std::max(worst, std::abs(sys.b[k] - combo) / scale);
  }
  return worst;
}

}  // namespace

DecompositionCertificate decompose(const ExtendedSystem& system, const Configuration& grid,
                                   const std::vector<std::size_t>& indices) {
  const EvalOptions opts;
  const SystemEval ev(system.base(), system.extension(), opts);
  const std::size_t n = static_cast<std::size_t>(system.base_dim());
  if (grid.size() < n + 1) raise(ErrorCode::GridTooSmall, "grid smaller than one window");

  detail::DecomposeCore<double, SystemEval> core(ev, grid.span());
  std::vector<double> coeffs = core.run(indices);

  // Independent path: least squares in the delta basis. The window columns
  // are linearly independent (column i is the first with a nonzero entry in
  // row i), so the solution is unique and must match the insertion path.
  const DeltaSystem sys = delta_system(ev, grid.span(), indices);
  Matrix<double> w_copy = sys.w;
  std::vector<double> ls = solve_least_squares(std::move(w_copy), sys.b);

  DecompositionCertificate cert;
  cert.indices = indices;
  cert.grid = grid.points();
  for (std::size_t i : indices) cert.target.push_back(grid.points()[i]);
  cert.coefficients = std::move(coeffs);
  cert.ls_coefficients = std::move(ls);
  cert.residual = scaled_defect(sys, cert.coefficients);

  double disagree = 0.0;
  for (std::size_t i = 0; i < cert.coefficients.size(); ++i)
    disagree = std::max(disagree, std::abs(cert.coefficients[i] - cert.ls_coefficients[i]));
  cert.path_disagreement = disagree;
  if (disagree > 1e-8)
    raise(ErrorCode::InconsistentOracle, "insertion and least-squares decompositions disagree beyond 1e-8");
  return cert;
}

ChainBounds chain_bounds(const ExtendedSystem& system, const SampledFunction& f, const Configuration& grid,
                         const std::vector<std::size_t>& indices) {
  const EvalOptions opts;
  const SystemEval ev(system.base(), system.extension(), opts);
  const std::size_t n = static_cast<std::size_t>(system.base_dim());
  if (grid.size() < n + 1) raise(ErrorCode::GridTooSmall, "grid smaller than one window");
  if (indices.size() != n + 1) raise(ErrorCode::DimensionMismatch, "target must select dim+1 grid points");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= grid.size()) raise(ErrorCode::BadSpec, "target index out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) raise(ErrorCode::NotStrictlyOrdered, "target indices must increase");
  }

  const std::vector<double> fvals = values_on(f, grid.span());
  const auto dd_at = [&](std::span<const std::size_t> idx) {
    const std::vector<double> nodes = detail::gather(grid.span(), idx);
    const std::vector<double> vals = detail::gather(std::span<const double>(fvals), idx);
    return detail::dd_value<double>(ev, std::span<const double>(nodes), std::span<const double>(vals));
  };

  ChainBounds out;
  std::vector<std::size_t> window_idx(n + 1);
  for (std::size_t i = 0; i + n < grid.size(); ++i) {
    for (std::size_t j = 0; j <= n; ++j) window_idx[j] = i + j;
    out.window_values.push_back(dd_at(window_idx));
  }
  out.mid = dd_at(indices);
  out.lower = *std::min_element(out.window_values.begin(), out.window_values.end());
  out.upper = *std::max_element(out.window_values.begin(), out.window_values.end());
  return out;
}

DiscreteConvexityReport check_discrete_convexity(const ExtendedSystem& system, const SampledFunction& f,
                                                 const Configuration& grid, std::size_t random_spot_checks,
                                                 std::uint64_t seed) {
  const EvalOptions opts;
  const std::size_t n = static_cast<std::size_t>(system.base_dim());
  if (grid.size() < n + 1) raise(ErrorCode::GridTooSmall, "grid smaller than one window");

  DiscreteConvexityReport report;
  const auto& pts = grid.points();
  for (std::size_t i = 0; i + n < pts.size(); ++i) {
    Configuration window(std::vector<double>(pts.begin() + static_cast<std::ptrdiff_t>(i),
                                             pts.begin() + static_cast<std::ptrdiff_t>(i + n + 1)));
    const PhiResult num = evaluate_phi_with_f(system.base(), f, window, opts);
    const PhiResult den = evaluate_phi(system, window, opts);

    WindowCheck check;
    check.start = i;
    check.phi = num.value;
    check.dd = num.value / den.value;
    check.nonnegative = phi_nonnegative(num.value, num.hadamard_bound);
    if (!check.nonnegative && report.convex) {
      report.convex = false;
      report.witness = check;
    }
    report.windows.push_back(check);
  }

  if (report.convex && random_spot_checks > 0 && pts.size() > n + 1) {
    Rng rng(seed);
    for (std::size_t trial = 0; trial < random_spot_checks; ++trial) {
      // Random (n+1)-subset of grid indices, sorted.
      std::set<std::size_t> pick;
      while (pick.size() < n + 1) pick.insert(static_cast<std::size_t>(rng.below(pts.size())));
      std::vector<double> nodes;
      for (std::size_t i : pick) nodes.push_back(pts[i]);
      const PhiResult num = evaluate_phi_with_f(system.base(), f, Configuration(std::move(nodes)), opts);
      ++report.spot_checks;
      if (!phi_nonnegative(num.value, num.hadamard_bound)) {
        ++report.spot_violations;
        if (!report.spot_witness) report.spot_witness = std::vector<std::size_t>(pick.begin(), pick.end());
      }
    }
  }
  return report;
}

}  // namespace chebconvex
