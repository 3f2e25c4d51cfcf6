#include "chebconvex/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chebconvex/errors.hpp"

namespace chebconvex {

SampledFunction SampledFunction::table(std::vector<double> points, std::vector<double> values) {
  if (points.empty()) raise(ErrorCode::BadSpec, "table function requires at least one sample");
  if (points.size() != values.size()) raise(ErrorCode::BadSpec, "table points/values length mismatch");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i])) raise(ErrorCode::NotStrictlyOrdered, "table points must increase");
  SampledFunction f(Source::Table, {});
  f.points_ = std::move(points);
  f.values_ = std::move(values);
  return f;
}

SampledFunction SampledFunction::poly(std::vector<double> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return SampledFunction(Source::Poly, std::move(coefficients));
}

SampledFunction SampledFunction::abs_shift(double center) { return SampledFunction(Source::AbsShift, {center}); }

SampledFunction SampledFunction::exp_scale(double rate) { return SampledFunction(Source::Exp, {rate}); }

SampledFunction SampledFunction::sin_wave(double freq, double phase) {
  return SampledFunction(Source::Sin, {freq, phase});
}

double SampledFunction::operator()(double x) const {
  switch (source_) {
    case Source::Table: {
      const auto it = std::lower_bound(points_.begin(), points_.end(), x);
      if (it == points_.end() || *it != x) {
        std::ostringstream os;
        os << "table function has no sample at x = " << x;
        raise(ErrorCode::EvaluationOffGrid, os.str());
      }
      return values_[static_cast<std::size_t>(it - points_.begin())];
    }
    case Source::Poly: {
      double acc = 0.0;
      for (std::size_t i = params_.size(); i-- > 0;) acc = acc * x + params_[i];
      return acc;
    }
    case Source::AbsShift:
      return std::abs(x - params_[0]);
    case Source::Exp:
      return std::exp(params_[0] * x);
    case Source::Sin:
      return std::sin(params_[0] * x + params_[1]);
  }
  raise(ErrorCode::BadSpec, "unreachable function source");
}

std::string SampledFunction::describe() const {
  std::ostringstream os;
  switch (source_) {
    case Source::Table:
      os << "table[" << points_.size() << "]";
      break;
    case Source::Poly: {
      os << "poly(";
      for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
      os << ")";
      break;
    }
    case Source::AbsShift:
      os << "abs(x-" << params_[0] << ")";
      break;
    case Source::Exp:
      os << "exp(" << params_[0] << "x)";
      break;
    case Source::Sin:
      os << "sin(" << params_[0] << "x+" << params_[1] << ")";
      break;
  }
  return os.str();
}

}  // namespace chebconvex
