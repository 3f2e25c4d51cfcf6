#include "chebconvex/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebconvex/errors.hpp"

namespace chebconvex {

double hadamard_bound(const Matrix<double>& a) {
  double bound = 1.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    bound *= std::sqrt(s);
  }
  return bound;
}

DetInfo determinant_info(Matrix<double> a, double condition_threshold) {
  DetInfo info;
  info.hadamard_bound = hadamard_bound(a);

  const std::size_t n = a.rows();
  if (n == 0) {
    info.value = 1.0;
    info.condition_estimate = 1.0;
    return info;
  }

  bool negate = false;
  double det = 1.0;
  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    const double p = std::abs(a(piv, k));
    if (p == 0.0) {
      info.value = 0.0;
      info.condition_estimate = std::numeric_limits<double>::infinity();
      info.ill_conditioned = true;
      return info;
    }
    if (piv != k) {
      a.swap_rows(piv, k);
      negate = !negate;
    }
    max_pivot = std::max(max_pivot, p);
    min_pivot = std::min(min_pivot, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
    det *= a(k, k);
  }
  info.value = negate ? -det : det;
  info.condition_estimate = max_pivot / min_pivot;
  info.ill_conditioned = !(info.condition_estimate < condition_threshold);
  return info;
}

std::vector<double> solve_least_squares(Matrix<double> a, std::vector<double> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) raise(ErrorCode::DimensionMismatch, "least-squares rhs length mismatch");
  if (m < n) raise(ErrorCode::DimensionMismatch, "least squares requires rows >= cols");

  // Exactly dependent columns leave a rounding-level residue after the
  // reflections, so rank deficiency is tested against the column scale
  // rather than against zero.
  double column_scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm += a(i, j) * a(i, j);
    column_scale = std::max(column_scale, std::sqrt(norm));
  }
  const double rank_tol = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(m) * column_scale;

  // Householder QR applied in place to [a | b].
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm <= rank_tol) raise(ErrorCode::DimensionMismatch, "rank-deficient least-squares system");
    if (a(k, k) > 0.0) norm = -norm;

    std::vector<double> v(m - k);
    v[0] = a(k, k) - norm;
    for (std::size_t i = k + 1; i < m; ++i) v[i - k] = a(i, k);
    double vtv = 0.0;
    for (double x : v) vtv += x * x;
    if (vtv == 0.0) continue;

    const auto reflect = [&](auto&& column_at) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * column_at(i);
      const double scale = 2.0 * dot / vtv;
      for (std::size_t i = k; i < m; ++i) column_at(i) -= scale * v[i - k];
    };

    for (std::size_t j = k; j < n; ++j)
      reflect([&](std::size_t i) -> double& { return a(i, j); });
    reflect([&](std::size_t i) -> double& { return b[i]; });
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

}  // namespace chebconvex
