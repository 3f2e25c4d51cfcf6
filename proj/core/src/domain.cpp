#include "chebconvex/domain.hpp"

#include <algorithm>
#include <cmath>

#include "chebconvex/errors.hpp"

namespace chebconvex {

Domain Domain::interval(double lo, double hi, bool open_lo, bool open_hi) {
  if (std::isnan(lo) || std::isnan(hi)) raise(ErrorCode::BadSpec, "domain bounds must not be NaN");
  if (!(lo < hi)) raise(ErrorCode::BadSpec, "domain requires lo < hi");
  Domain d;
  d.finite_ = false;
  d.lo_ = lo;
  d.hi_ = hi;
  d.open_lo_ = open_lo || std::isinf(lo);
  d.open_hi_ = open_hi || std::isinf(hi);
  return d;
}

Domain Domain::all() { return interval(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()); }

Domain Domain::finite_set(std::vector<double> points) {
  if (points.empty()) raise(ErrorCode::BadSpec, "finite-set domain requires at least one point");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i])) raise(ErrorCode::NotStrictlyOrdered, "finite-set domain points must increase");
  Domain d;
  d.finite_ = true;
  d.points_ = std::move(points);
  d.lo_ = d.points_.front();
  d.hi_ = d.points_.back();
  return d;
}

bool Domain::contains(double x) const {
  if (std::isnan(x)) return false;
  if (finite_) return std::binary_search(points_.begin(), points_.end(), x);
  if (open_lo_ ? !(x > lo_) : !(x >= lo_)) return false;
  if (open_hi_ ? !(x < hi_) : !(x <= hi_)) return false;
  return true;
}

double Domain::lo() const { return lo_; }
double Domain::hi() const { return hi_; }

double Domain::width() const { return hi_ - lo_; }

bool Domain::bounded() const { return std::isfinite(lo_) && std::isfinite(hi_); }

const std::vector<double>& Domain::points() const {
  if (!finite_) raise(ErrorCode::BadSpec, "interval domain has no point list");
  return points_;
}

}  // namespace chebconvex
