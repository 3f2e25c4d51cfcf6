#pragma once

#include <limits>
#include <vector>

namespace chebconvex {

/// Interval (with independently open or closed ends, possibly unbounded) or a
/// finite strictly increasing point set. Finite sets back tabulated systems:
/// membership there means "is one of the tabulated abscissae" and is decided
/// by exact floating-point equality.
class Domain {
 public:
  static Domain interval(double lo, double hi, bool open_lo = false, bool open_hi = false);
  static Domain all();
  static Domain finite_set(std::vector<double> points);

  bool is_interval() const { return !finite_; }
  bool is_finite_set() const { return finite_; }

  bool contains(double x) const;

  double lo() const;
  double hi() const;
  bool open_lo() const { return open_lo_; }
  bool open_hi() const { return open_hi_; }

  /// hi - lo (infinite for unbounded intervals); span of a finite set.
  double width() const;
  bool bounded() const;

  const std::vector<double>& points() const;

 private:
  Domain() = default;

  bool finite_ = false;
  double lo_ = -std::numeric_limits<double>::infinity();
  double hi_ = std::numeric_limits<double>::infinity();
  bool open_lo_ = false;
  bool open_hi_ = false;
  std::vector<double> points_;
};

}  // namespace chebconvex
