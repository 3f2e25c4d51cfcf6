#pragma once

#include <string>
#include <vector>

namespace chebconvex {

/// A function known either through a finite table of samples or through a
/// small analytic family (polynomial, shifted absolute value, exponential,
/// sinusoid). Tables are evaluable only at their own abscissae; asking for
/// any other point is an error, never an interpolation.
class SampledFunction {
 public:
  enum class Source { Table, Poly, AbsShift, Exp, Sin };

  /// points strictly increasing, values aligned.
  static SampledFunction table(std::vector<double> points, std::vector<double> values);
  /// c[0] + c[1] x + ... + c[k] x^k.
  static SampledFunction poly(std::vector<double> coefficients);
  /// |x - center|.
  static SampledFunction abs_shift(double center = 0.0);
  /// exp(rate * x).
  static SampledFunction exp_scale(double rate = 1.0);
  /// sin(freq * x + phase).
  static SampledFunction sin_wave(double freq = 1.0, double phase = 0.0);

  double operator()(double x) const;

  Source source() const { return source_; }
  /// True for the analytic families (evaluable anywhere).
  bool analytic() const { return source_ != Source::Table; }

  const std::vector<double>& table_points() const { return points_; }
  const std::vector<double>& table_values() const { return values_; }
  const std::vector<double>& params() const { return params_; }

  std::string describe() const;

 private:
  SampledFunction(Source source, std::vector<double> params) : source_(source), params_(std::move(params)) {}

  Source source_ = Source::Poly;
  std::vector<double> params_;  // coefficients / rate / center / (freq, phase)
  std::vector<double> points_;  // table only
  std::vector<double> values_;  // table only
};

}  // namespace chebconvex
