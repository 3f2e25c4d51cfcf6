#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace chebconvex {

/// Small dense row-major matrix. The library only ever forms collocation
/// matrices whose order equals a system dimension (a handful of rows), so a
/// flat vector with no blocking is the right tool.
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

/// Determinant by LU with partial pivoting. Instantiated for double and for
/// the exact rational scalar; with exact arithmetic pivoting only avoids
/// zero pivots and the result is exact.
template <class T>
T determinant(Matrix<T> a) {
  using std::abs;
  const std::size_t n = a.rows();
  if (n == 0) return T(1);
  bool negate = false;
  T det = T(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
    }
    if (a(piv, k) == T(0)) return T(0);
    if (piv != k) {
      a.swap_rows(piv, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      T m = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
    det *= a(k, k);
  }
  if (negate) det = -det;
  return det;
}

/// Determinant plus the diagnostics the evaluation layer reports: a pivot
/// ratio as condition proxy and the Hadamard bound used to scale sign
/// tolerances.
struct DetInfo {
  double value = 0.0;
  double condition_estimate = 0.0;
  double hadamard_bound = 0.0;
  bool ill_conditioned = false;
};

DetInfo determinant_info(Matrix<double> a, double condition_threshold = 1e12);

/// Product of row Euclidean norms; an upper bound for |det|.
double hadamard_bound(const Matrix<double>& a);

/// Least-squares solution of A x = b (rows(A) >= cols(A), full column rank)
/// via Householder QR.
std::vector<double> solve_least_squares(Matrix<double> a, std::vector<double> b);

}  // namespace chebconvex
