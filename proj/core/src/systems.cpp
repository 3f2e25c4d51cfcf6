#include "chebconvex/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chebconvex/errors.hpp"
#include "chebconvex/matrix.hpp"

namespace chebconvex {

namespace {

void require_increasing(const std::vector<double>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1] < pts[i])) {
      std::ostringstream os;
      os << "configuration must be strictly increasing (points " << i - 1 << " and " << i << ")";
      raise(ErrorCode::NotStrictlyOrdered, os.str());
    }
}

void require_positive_domain(const Domain& d) {
  const bool ok = d.is_finite_set() ? d.points().front() > 0.0 : (d.lo() > 0.0 || (d.lo() == 0.0 && d.open_lo()));
  if (!ok) raise(ErrorCode::DomainNotPositive, "family (1, x^2) requires a domain of strictly positive reals");
}

void require_length_at_most(const Domain& d, double limit, const char* family) {
  if (d.is_finite_set()) {
    if (!(d.points().back() - d.points().front() <= limit))
      raise(ErrorCode::DomainTooLong, std::string(family) + ": grid span exceeds the admissible length");
    return;
  }
  if (!d.bounded() || !(d.width() <= limit))
    raise(ErrorCode::DomainTooLong, std::string(family) + ": interval length exceeds the admissible length");
}

}  // namespace

Configuration::Configuration(std::vector<double> points) : points_(std::move(points)) {
  require_increasing(points_);
}

Configuration Configuration::unchecked(std::vector<double> points) {
  Configuration c;
  c.points_ = std::move(points);
  return c;
}

ChebSystem ChebSystem::poly(int n, Domain domain) {
  if (n < 1) raise(ErrorCode::BadSpec, "poly family requires n >= 1");
  ChebSystem s;
  s.kind_ = Kind::Poly;
  s.dim_ = n;
  s.param_ = n;
  s.domain_ = std::move(domain);
  return s;
}

ChebSystem ChebSystem::trig_odd(int harmonics, Domain domain) {
  if (harmonics < 1) raise(ErrorCode::BadSpec, "trig-odd family requires at least one harmonic");
  require_length_at_most(domain, 2.0 * std::numbers::pi, "trig-odd");
  ChebSystem s;
  s.kind_ = Kind::TrigOdd;
  s.dim_ = 2 * harmonics + 1;
  s.param_ = harmonics;
  s.domain_ = std::move(domain);
  return s;
}

ChebSystem ChebSystem::trig_even(int harmonics, Domain domain) {
  if (harmonics < 1) raise(ErrorCode::BadSpec, "trig-even family requires at least one harmonic");
  require_length_at_most(domain, std::numbers::pi, "trig-even");
  ChebSystem s;
  s.kind_ = Kind::TrigEven;
  s.dim_ = 2 * harmonics;
  s.param_ = harmonics;
  s.domain_ = std::move(domain);
  return s;
}

ChebSystem ChebSystem::one_xsq(Domain domain) {
  require_positive_domain(domain);
  ChebSystem s;
  s.kind_ = Kind::OneXsq;
  s.dim_ = 2;
  s.param_ = 0;
  s.domain_ = std::move(domain);
  return s;
}

ChebSystem ChebSystem::tabulated(std::vector<double> points, std::vector<std::vector<double>> values) {
  if (values.empty()) raise(ErrorCode::BadSpec, "tabulated system requires at least one basis row");
  for (const auto& row : values)
    if (row.size() != points.size()) raise(ErrorCode::BadSpec, "tabulated system rows must match the grid length");
  if (points.size() < values.size())
    raise(ErrorCode::GridTooSmall, "tabulated system needs at least dim grid points");
  ChebSystem s;
  s.kind_ = Kind::Table;
  s.dim_ = static_cast<int>(values.size());
  s.param_ = 0;
  s.domain_ = Domain::finite_set(points);
  s.table_points_ = std::move(points);
  s.table_values_ = std::move(values);
  return s;
}

double ChebSystem::basis_value(int i, double x) const {
  if (i < 0 || i >= dim_) raise(ErrorCode::BadSpec, "basis index out of range");
  switch (kind_) {
    case Kind::Poly: {
      double acc = 1.0;
      for (int k = 0; k < i; ++k) acc *= x;
      return acc;
    }
    case Kind::TrigOdd: {
      if (i == 0) return 1.0;
      const int harmonic = (i + 1) / 2;
      return (i % 2 == 1) ? std::cos(harmonic * x) : std::sin(harmonic * x);
    }
    case Kind::TrigEven: {
      const int harmonic = i / 2 + 1;
      return (i % 2 == 0) ? std::cos(harmonic * x) : std::sin(harmonic * x);
    }
    case Kind::OneXsq:
      return i == 0 ? 1.0 : x * x;
    case Kind::Table: {
      const auto it = std::lower_bound(table_points_.begin(), table_points_.end(), x);
      if (it == table_points_.end() || *it != x) {
        std::ostringstream os;
        os << "tabulated system has no column at x = " << x;
        raise(ErrorCode::EvaluationOffGrid, os.str());
      }
      return table_values_[static_cast<std::size_t>(i)][static_cast<std::size_t>(it - table_points_.begin())];
    }
  }
  raise(ErrorCode::BadSpec, "unreachable system kind");
}

std::string ChebSystem::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Poly: os << "poly(" << param_ << ")"; break;
    case Kind::TrigOdd: os << "trig-odd(" << param_ << ")"; break;
    case Kind::TrigEven: os << "trig-even(" << param_ << ")"; break;
    case Kind::OneXsq: os << "one-xsq"; break;
    case Kind::Table: os << "table[" << dim_ << "x" << table_points_.size() << "]"; break;
  }
  return os.str();
}

namespace {

std::pair<std::string, int> split_tag(const std::string& tag) {
  const auto colon = tag.find(':');
  if (colon == std::string::npos) return {tag, -1};
  const std::string head = tag.substr(0, colon);
  const std::string num = tag.substr(colon + 1);
  try {
    std::size_t used = 0;
    const int n = std::stoi(num, &used);
    if (used != num.size()) throw std::invalid_argument(num);
    return {head, n};
  } catch (const std::exception&) {
    raise(ErrorCode::BadSpec, "malformed system tag '" + tag + "'");
  }
}

}  // namespace

ChebSystem builtin_system(const std::string& tag) {
  const auto [head, n] = split_tag(tag);
  if (head == "poly") return ChebSystem::poly(n < 0 ? 2 : n);
  if (head == "trig-odd") return ChebSystem::trig_odd(n < 0 ? 1 : n, Domain::interval(0.0, 2.0 * std::numbers::pi, false, true));
  if (head == "trig-even") return ChebSystem::trig_even(n < 0 ? 1 : n, Domain::interval(0.0, std::numbers::pi, false, true));
  if (head == "one-xsq") return ChebSystem::one_xsq(Domain::interval(0.0, std::numeric_limits<double>::infinity(), true, true));
  raise(ErrorCode::BadSpec, "unknown system tag '" + tag + "'");
}

ChebSystem builtin_system(const std::string& tag, const Domain& domain) {
  const auto [head, n] = split_tag(tag);
  if (head == "poly") return ChebSystem::poly(n < 0 ? 2 : n, domain);
  if (head == "trig-odd") return ChebSystem::trig_odd(n < 0 ? 1 : n, domain);
  if (head == "trig-even") return ChebSystem::trig_even(n < 0 ? 1 : n, domain);
  if (head == "one-xsq") return ChebSystem::one_xsq(domain);
  raise(ErrorCode::BadSpec, "unknown system tag '" + tag + "'");
}

ExtendedSystem::ExtendedSystem(ChebSystem base, SampledFunction extension)
    : base_(std::move(base)), extension_(std::move(extension)) {}

ExtendedSystem ExtendedSystem::with_default_extension(ChebSystem base) {
  if (base.kind() != ChebSystem::Kind::Poly)
    raise(ErrorCode::ExtensionRequired,
          "only the polynomial family has a canonical extension (x^n); supply one explicitly");
  std::vector<double> monomial(static_cast<std::size_t>(base.dim()) + 1, 0.0);
  monomial.back() = 1.0;
  return ExtendedSystem(std::move(base), SampledFunction::poly(std::move(monomial)));
}

namespace {

DetInfo raw_stack(const ChebSystem& system, const SampledFunction* extension, const SampledFunction* f,
                  std::span<const double> pts, const EvalOptions& opts, bool check_domain = true) {
  const std::size_t rows =
      static_cast<std::size_t>(system.dim()) + (extension != nullptr ? 1 : 0) + (f != nullptr ? 1 : 0);
  if (pts.size() != rows) {
    std::ostringstream os;
    os << "stack of " << rows << " rows needs " << rows << " nodes, got " << pts.size();
    raise(ErrorCode::DimensionMismatch, os.str());
  }
  if (check_domain) {
    for (double x : pts)
      if (!system.domain().contains(x)) {
        std::ostringstream os;
        os << "node " << x << " lies outside the system domain";
        raise(ErrorCode::OutOfDomain, os.str());
      }
  }

  Matrix<double> m(rows, rows);
  std::size_t r = 0;
  for (int i = 0; i < system.dim(); ++i, ++r)
    for (std::size_t j = 0; j < pts.size(); ++j) m(r, j) = system.basis_value(i, pts[j]);
  if (extension != nullptr) {
    for (std::size_t j = 0; j < pts.size(); ++j) m(r, j) = (*extension)(pts[j]);
    ++r;
  }
  if (f != nullptr) {
    for (std::size_t j = 0; j < pts.size(); ++j) m(r, j) = (*f)(pts[j]);
    ++r;
  }
  return determinant_info(std::move(m), opts.condition_threshold);
}

PhiResult to_result(const DetInfo& info) {
  return PhiResult{info.value, info.condition_estimate, info.hadamard_bound, info.ill_conditioned};
}

void require_strictly_positive(const DetInfo& info, const char* what) {
  if (!(info.value > 0.0)) {
    std::ostringstream os;
    os << what << " determinant is not strictly positive (value " << info.value << ")";
    raise(ErrorCode::PositivityViolation, os.str());
  }
}

}  // namespace

PhiResult evaluate_phi(const ChebSystem& system, const Configuration& config, const EvalOptions& opts) {
  const DetInfo info = raw_stack(system, nullptr, nullptr, config.span(), opts);
  require_strictly_positive(info, "collocation");
  return to_result(info);
}

PhiResult evaluate_phi(const ExtendedSystem& system, const Configuration& config, const EvalOptions& opts) {
  const DetInfo info = raw_stack(system.base(), &system.extension(), nullptr, config.span(), opts);
  require_strictly_positive(info, "extended collocation");
  return to_result(info);
}

PhiResult evaluate_phi_with_f(const ChebSystem& system, const SampledFunction& f, const Configuration& config,
                              const EvalOptions& opts) {
  return to_result(raw_stack(system, nullptr, &f, config.span(), opts));
}

PhiResult evaluate_phi_stack(const ChebSystem& system, const SampledFunction* extension, const SampledFunction* f,
                             const Configuration& config, const EvalOptions& opts) {
  return to_result(raw_stack(system, extension, f, config.span(), opts));
}

PositivityReport validate_positivity(const ChebSystem& system, const std::vector<Configuration>& configs,
                                     const EvalOptions& opts) {
  PositivityReport report;
  report.entries.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const DetInfo info = raw_stack(system, nullptr, nullptr, configs[i].span(), opts);
    const double tol = kPhiAbsTol + kPhiRelTol * info.hadamard_bound;
    PositivityEntry entry;
    entry.config = configs[i].points();
    entry.value = info.value;
    entry.sign = info.value > tol ? 1 : (info.value < -tol ? -1 : 0);
    if (entry.sign <= 0 && report.all_positive) {
      report.all_positive = false;
      report.first_violation = i;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

namespace testing {

double phi_unordered(const ChebSystem& system, std::span<const double> points) {
  EvalOptions opts;
  return raw_stack(system, nullptr, nullptr, points, opts).value;
}

}  // namespace testing

}  // namespace chebconvex
