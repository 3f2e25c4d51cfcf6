#pragma once

#include <span>
#include <vector>

#include "chebconvex/rational.hpp"

namespace chebconvex::exact {

/// Exact rational kernels for the polynomial family (1, x, ..., x^{n-1})
/// extended by x^n. They re-instantiate the same generic algorithms as the
/// floating-point path, so float results can be checked against arithmetic
/// with no rounding at all.

/// Vandermonde determinant det[x_j^i] via exact LU.
Rational phi_poly(int n, std::span<const Rational> nodes);

/// The closed form prod_{i<j} (x_j - x_i); the independent oracle for
/// phi_poly.
Rational vandermonde_product(std::span<const Rational> nodes);

/// [nodes; f] for poly(n) + x^n, f given by its values at the nodes.
Rational divided_difference_poly(int n, std::span<const Rational> nodes, std::span<const Rational> fvals);

/// Left-window weight for dropping grid[j] from an (n+2)-point grid.
Rational lemma1_coefficient_poly(int n, std::span<const Rational> grid, std::size_t j);

/// Convex window weights for the target sub-configuration grid[indices].
std::vector<Rational> decompose_poly(int n, std::span<const Rational> grid, std::vector<std::size_t> indices);

/// Max absolute identity defect of a weight vector over the delta basis;
/// exactly zero for weights produced by decompose_poly.
Rational decomposition_defect_poly(int n, std::span<const Rational> grid, std::span<const std::size_t> indices,
                                   std::span<const Rational> coefficients);

}  // namespace chebconvex::exact
