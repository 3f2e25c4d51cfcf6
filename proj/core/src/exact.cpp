#include "chebconvex/exact.hpp"

#include "chebconvex/divdiff_core.hpp"
#include "chebconvex/errors.hpp"
#include "chebconvex/matrix.hpp"

namespace chebconvex::exact {

namespace {

/// Exact evaluator for (1, x, ..., x^{n-1}) extended by x^n; see
/// divdiff_core.hpp for the contract.
class PolyEval {
 public:
  explicit PolyEval(int n) : n_(n) {
    if (n < 1) raise(ErrorCode::BadSpec, "poly family requires n >= 1");
  }

  int dim() const { return n_; }

  Rational phi_base(std::span<const Rational> nodes) const { return vandermonde_det(nodes); }

  Rational phi_star(std::span<const Rational> nodes) const { return vandermonde_det(nodes); }

  Rational phi_f(std::span<const Rational> nodes, std::span<const Rational> fvals) const {
    const std::size_t rows = static_cast<std::size_t>(n_) + 1;
    if (nodes.size() != rows || fvals.size() != rows)
      raise(ErrorCode::DimensionMismatch, "value-stack size mismatch");
    Matrix<Rational> m(rows, rows);
    for (std::size_t i = 0; i + 1 < rows; ++i)
      for (std::size_t j = 0; j < rows; ++j) m(i, j) = pow_int(nodes[j], i);
    for (std::size_t j = 0; j < rows; ++j) m(rows - 1, j) = fvals[j];
    return determinant(std::move(m));
  }

 private:
  static Rational pow_int(const Rational& x, std::size_t k) {
    Rational acc = 1;
    for (std::size_t i = 0; i < k; ++i) acc *= x;
    return acc;
  }

  /// Full monomial stack 1, x, ..., x^{m-1} on m nodes: both the base and
  /// the extended determinant of the polynomial family are Vandermonde.
  static Rational vandermonde_det(std::span<const Rational> nodes) {
    const std::size_t m = nodes.size();
    Matrix<Rational> mat(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) mat(i, j) = pow_int(nodes[j], i);
    return determinant(std::move(mat));
  }

  int n_;
};

}  // namespace

Rational phi_poly(int n, std::span<const Rational> nodes) {
  if (nodes.size() != static_cast<std::size_t>(n)) raise(ErrorCode::DimensionMismatch, "phi_poly needs n nodes");
  return PolyEval(n).phi_base(nodes);
}

Rational vandermonde_product(std::span<const Rational> nodes) {
  Rational prod = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) prod *= nodes[j] - nodes[i];
  return prod;
}

Rational divided_difference_poly(int n, std::span<const Rational> nodes, std::span<const Rational> fvals) {
  const PolyEval ev(n);
  return detail::dd_value<Rational>(ev, nodes, fvals);
}

Rational lemma1_coefficient_poly(int n, std::span<const Rational> grid, std::size_t j) {
  const PolyEval ev(n);
  return detail::lemma1_coefficient_core<Rational>(ev, grid, j);
}

std::vector<Rational> decompose_poly(int n, std::span<const Rational> grid, std::vector<std::size_t> indices) {
  const PolyEval ev(n);
  detail::DecomposeCore<Rational, PolyEval> core(ev, grid);
  return core.run(std::move(indices));
}

Rational decomposition_defect_poly(int n, std::span<const Rational> grid, std::span<const std::size_t> indices,
                                   std::span<const Rational> coefficients) {
  const PolyEval ev(n);
  const std::size_t windows = grid.size() - static_cast<std::size_t>(n);
  if (coefficients.size() != windows) raise(ErrorCode::DimensionMismatch, "one weight per window required");

  using std::abs;
  Rational worst = 0;
  std::vector<std::size_t> window_idx(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Rational combo = 0;
    for (std::size_t i = 0; i < windows; ++i) {
      for (std::size_t j = 0; j < window_idx.size(); ++j) window_idx[j] = i + j;
      combo += coefficients[i] * detail::delta_dd<Rational>(ev, grid, std::span<const std::size_t>(window_idx), k);
    }
    const Rational defect = abs(detail::delta_dd<Rational>(ev, grid, indices, k) - combo);
    if (defect > worst) worst = defect;
  }
  return worst;
}

}  // namespace chebconvex::exact
