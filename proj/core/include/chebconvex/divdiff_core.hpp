#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "chebconvex/errors.hpp"

namespace chebconvex::detail {

/// The divided-difference algorithms below are written once against a scalar
/// evaluator and instantiated twice: floating point (scalar double, backed by
/// a ChebSystem) and exact rational (polynomial family). An evaluator
/// provides
///
///   int dim() const;                      base family size n
///   S phi_base(span<const S> nodes) const;            det over n nodes
///   S phi_star(span<const S> nodes) const;            extended det, n+1 nodes
///   S phi_f(span<const S> nodes, span<const S> fvals); base rows plus a value row
///
/// phi_f depends on f only through fvals, which is what lets the same code
/// drive both real functions and delta tables.

template <class S>
std::vector<S> gather(std::span<const S> src, std::span<const std::size_t> idx) {
  std::vector<S> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(src[i]);
  return out;
}

/// [x_0..x_n; f] = Phi(w, f)(nodes) / Phi(w*)(nodes).
template <class S, class Eval>
S dd_value(const Eval& ev, std::span<const S> nodes, std::span<const S> fvals) {
  const S den = ev.phi_star(nodes);
  if (!(den > S(0))) raise(ErrorCode::DenominatorNotPositive, "extended determinant must be strictly positive");
  return ev.phi_f(nodes, fvals) / den;
}

/// Weight of the left consecutive window when the point x_j (0 < j < n+1) is
/// dropped from an (n+2)-point grid:
///
///   [grid \ x_j] = A_j [x_0..x_n] + (1 - A_j) [x_1..x_{n+1}],
///   A_j / (1 - A_j) = (Phi*(x_0..x_n) / Phi*(x_1..x_{n+1}))
///                   * (Phi(x_1,..,^x_j,..,x_{n+1}) / Phi(x_0,..,^x_j,..,x_n)).
///
/// Degenerate drops keep the identity trivially: A_0 = 0, A_{n+1} = 1.
template <class S, class Eval>
S lemma1_coefficient_core(const Eval& ev, std::span<const S> grid, std::size_t j) {
  const std::size_t n = static_cast<std::size_t>(ev.dim());
  if (grid.size() != n + 2) raise(ErrorCode::DimensionMismatch, "lemma-1 grid must have dim+2 points");
  if (j > n + 1) raise(ErrorCode::BadSpec, "drop index out of range");
  if (j == 0) return S(0);
  if (j == n + 1) return S(1);

  std::vector<S> tail_minus_j, head_minus_j;
  for (std::size_t i = 1; i <= n + 1; ++i)
    if (i != j) tail_minus_j.push_back(grid[i]);
  for (std::size_t i = 0; i <= n; ++i)
    if (i != j) head_minus_j.push_back(grid[i]);

  const S star_head = ev.phi_star(grid.subspan(0, n + 1));
  const S star_tail = ev.phi_star(grid.subspan(1, n + 1));
  const S base_num = ev.phi_base(tail_minus_j);
  const S base_den = ev.phi_base(head_minus_j);
  if (!(star_head > S(0)) || !(star_tail > S(0)))
    raise(ErrorCode::DenominatorNotPositive, "extended determinant must be strictly positive");
  if (!(base_num > S(0)) || !(base_den > S(0)))
    raise(ErrorCode::PositivityViolation, "base determinant must be strictly positive");

  const S ratio = (star_head / star_tail) * (base_num / base_den);
  return ratio / (S(1) + ratio);
}

/// Convex decomposition of [grid[idx]; .] over the consecutive windows
/// [grid[i..i+n]; .], i = 0..m-n, by repeated single-point insertion. The
/// inserted point is always the smallest-index grid point strictly inside
/// the target's hull, so each split strictly shrinks the hull of at least
/// one child and the recursion terminates. Memoised on the index tuple.
template <class S, class Eval>
class DecomposeCore {
 public:
  DecomposeCore(const Eval& ev, std::span<const S> grid) : ev_(ev), grid_(grid) {}

  /// idx strictly increasing, idx.size() == dim+1. Result has one weight per
  /// consecutive window.
  std::vector<S> run(std::vector<std::size_t> idx) {
    const std::size_t n = static_cast<std::size_t>(ev_.dim());
    if (grid_.size() < n + 1) raise(ErrorCode::GridTooSmall, "grid smaller than one window");
    if (idx.size() != n + 1) raise(ErrorCode::DimensionMismatch, "target must select dim+1 grid points");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= grid_.size()) raise(ErrorCode::BadSpec, "target index out of range");
      if (i > 0 && idx[i] <= idx[i - 1]) raise(ErrorCode::NotStrictlyOrdered, "target indices must increase");
    }
    return solve(std::move(idx));
  }

 private:
  std::vector<S> solve(std::vector<std::size_t> idx) {
    if (auto it = memo_.find(idx); it != memo_.end()) return it->second;

    const std::size_t n = static_cast<std::size_t>(ev_.dim());
    const std::size_t windows = grid_.size() - n;
    std::vector<S> coeffs(windows, S(0));

    if (idx.back() - idx.front() == n) {
      coeffs[idx.front()] = S(1);  // already a consecutive window
      memo_.emplace(std::move(idx), coeffs);
      return coeffs;
    }

    // Smallest grid index inside the hull that the target skips.
    std::size_t extra = idx.front() + 1;
    for (std::size_t pos = 1; pos < idx.size(); ++pos) {
      if (idx[pos] > extra) break;
      extra = idx[pos] + 1;
    }

    std::vector<std::size_t> merged = idx;
    std::size_t at = 0;
    while (at < merged.size() && merged[at] < extra) ++at;
    merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(at), extra);

    const std::vector<S> nodes = gather(grid_, std::span<const std::size_t>(merged));
    const S a = lemma1_coefficient_core<S>(ev_, std::span<const S>(nodes), at);

    std::vector<std::size_t> left(merged.begin(), merged.end() - 1);
    std::vector<std::size_t> right(merged.begin() + 1, merged.end());
    const std::vector<S> cl = solve(std::move(left));
    const std::vector<S> cr = solve(std::move(right));
    for (std::size_t i = 0; i < windows; ++i) coeffs[i] = a * cl[i] + (S(1) - a) * cr[i];

    memo_.emplace(std::move(idx), coeffs);
    return coeffs;
  }

  const Eval& ev_;
  std::span<const S> grid_;
  std::map<std::vector<std::size_t>, std::vector<S>> memo_;
};

/// Divided difference of the delta table at grid point k, restricted to the
/// nodes selected by idx.
template <class S, class Eval>
S delta_dd(const Eval& ev, std::span<const S> grid, std::span<const std::size_t> idx, std::size_t k) {
  std::vector<S> nodes = gather(grid, idx);
  std::vector<S> fvals(idx.size(), S(0));
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] == k) fvals[i] = S(1);
  return dd_value<S>(ev, std::span<const S>(nodes), std::span<const S>(fvals));
}

}  // namespace chebconvex::detail
