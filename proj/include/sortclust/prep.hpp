#pragma once

// Data preparation: centering, first principal direction, sorting by
// principal score and the median extend used to make the radius scale-free.

#include "sortclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sortclust {

/// Scale estimate that makes the radius parameter unit-free.
enum class MextMode {
  norm_median,     ///< median of the centered point norms (default)
  score_interval,  ///< smallest m with ceil(n/2) scores in [-m, m]
};

template <typename Scalar>
struct PreparedData {
  RowMatrix<Scalar> centered;  ///< centered points, rows in sorted order
  Vector<Scalar> mean;
  Vector<Scalar> v1;
  Vector<Scalar> v2;           ///< second principal direction (zero when d == 1)
  Vector<Scalar> scores;       ///< nondecreasing
  std::vector<Index> perm;     ///< sorted index -> original row
  Scalar sigma1 = 0;
  Scalar sigma2 = 0;
  Scalar mext = 0;

  Index size() const { return centered.rows(); }
  Index dim() const { return centered.cols(); }
};

template <typename Scalar>
struct PrincipalComponents {
  Vector<Scalar> v1;
  Vector<Scalar> v2;
  Scalar sigma1 = 0;
  Scalar sigma2 = 0;
};

template <typename Derived>
void validate_points(const Eigen::MatrixBase<Derived>& raw) {
  if (raw.rows() < 1 || raw.cols() < 1)
    throw InputError("data must contain at least one point with at least one feature");
  for (Index i = 0; i < raw.rows(); ++i)
    for (Index j = 0; j < raw.cols(); ++j)
      if (!std::isfinite(static_cast<double>(raw(i, j))))
        throw InputError("non-finite value at row " + std::to_string(i) + ", column " +
                         std::to_string(j));
}

/// Subtracts the column means. Returns the centered matrix and the mean.
template <typename Derived>
auto center(const Eigen::MatrixBase<Derived>& raw) {
  using Scalar = typename Derived::Scalar;
  validate_points(raw);
  Vector<Scalar> mean = raw.colwise().mean().transpose();
  Matrix<Scalar> centered = raw.rowwise() - mean.transpose();
  return std::make_pair(std::move(centered), std::move(mean));
}

namespace detail {

template <typename Scalar>
struct Eigenpair {
  Vector<Scalar> vector;
  Scalar value = 0;
};

// Power iteration on a symmetric positive semidefinite matrix. Falls back to
// the dense symmetric solver when the iteration stalls (nearly equal leading
// eigenvalues).
template <typename Scalar>
Eigenpair<Scalar> dominant_eigenpair(const Matrix<Scalar>& sym) {
  const Index d = sym.rows();
  const Scalar tol = std::max(Scalar(1e-10), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
  constexpr int max_iterations = 1000;

  // Deterministic start with irregular positive entries, so it is not
  // orthogonal to the dominant eigenvector in practice.
  Vector<Scalar> v(d);
  for (Index i = 0; i < d; ++i) {
    const double frac = std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
    v(i) = static_cast<Scalar>(1.0 + frac);
  }
  v.normalize();

  for (int it = 0; it < max_iterations; ++it) {
    Vector<Scalar> w = sym * v;
    const Scalar norm = w.norm();
    if (norm == Scalar(0)) return {v, Scalar(0)};
    w /= norm;
    const Scalar change = (w - v).norm();
    v = std::move(w);
    if (change <= tol) return {v, v.dot(sym * v)};
  }

  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(sym);
  return {solver.eigenvectors().col(d - 1), solver.eigenvalues()(d - 1)};
}

template <typename Scalar>
void fix_sign(Vector<Scalar>& v) {
  if (v.size() == 0) return;
  Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v(k) < Scalar(0)) v = -v;
}

}  // namespace detail

/// Leading two principal directions and singular values of a centered matrix,
/// via power iteration on the d x d Gram matrix and one deflation step.
/// The entry of largest magnitude in each direction is made positive.
template <typename Derived>
PrincipalComponents<typename Derived::Scalar> principal_components(
    const Eigen::MatrixBase<Derived>& centered) {
  using Scalar = typename Derived::Scalar;
  const Index d = centered.cols();
  PrincipalComponents<Scalar> pc;
  pc.v2 = Vector<Scalar>::Zero(d);

  const Matrix<Scalar> gram = centered.transpose() * centered;
  auto first = detail::dominant_eigenpair<Scalar>(gram);
  if (!(first.value > Scalar(0))) {
    pc.v1 = Vector<Scalar>::Unit(d, 0);
    return pc;
  }
  detail::fix_sign(first.vector);
  pc.v1 = first.vector;
  pc.sigma1 = std::sqrt(first.value);
  if (d == 1) return pc;

  const Matrix<Scalar> deflated = gram - first.value * pc.v1 * pc.v1.transpose();
  auto second = detail::dominant_eigenpair<Scalar>(deflated);
  if (second.value > Scalar(0)) {
    detail::fix_sign(second.vector);
    pc.v2 = second.vector;
    pc.sigma2 = std::min(std::sqrt(second.value), pc.sigma1);
  }
  return pc;
}

/// First principal direction v1 with singular values sigma1 >= sigma2.
template <typename Derived>
auto first_principal_component(const Eigen::MatrixBase<Derived>& centered) {
  auto pc = principal_components(centered);
  return std::make_tuple(std::move(pc.v1), pc.sigma1, pc.sigma2);
}

template <typename Scalar>
struct SortedScores {
  RowMatrix<Scalar> sorted;
  Vector<Scalar> scores;
  std::vector<Index> perm;
};

/// Projects onto v1 and stably sorts the rows by score (ties keep row order).
template <typename Derived, typename VDerived>
SortedScores<typename Derived::Scalar> score_and_sort(const Eigen::MatrixBase<Derived>& centered,
                                                      const Eigen::MatrixBase<VDerived>& v1) {
  using Scalar = typename Derived::Scalar;
  const Index n = centered.rows();
  const Vector<Scalar> raw_scores = centered * v1;

  SortedScores<Scalar> out;
  out.perm.resize(static_cast<std::size_t>(n));
  std::iota(out.perm.begin(), out.perm.end(), Index{0});
  std::stable_sort(out.perm.begin(), out.perm.end(),
                   [&](Index a, Index b) { return raw_scores(a) < raw_scores(b); });

  out.sorted.resize(n, centered.cols());
  out.scores.resize(n);
  for (Index k = 0; k < n; ++k) {
    const Index row = out.perm[static_cast<std::size_t>(k)];
    out.sorted.row(k) = centered.row(row);
    out.scores(k) = raw_scores(row);
  }
  return out;
}

/// The ceil(n/2)-th smallest absolute score.
template <typename Derived>
typename Derived::Scalar median_extend(const Eigen::MatrixBase<Derived>& scores) {
  using Scalar = typename Derived::Scalar;
  const Index n = scores.size();
  if (n == 0) return Scalar(0);
  std::vector<Scalar> magnitudes(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) magnitudes[static_cast<std::size_t>(i)] = std::abs(scores(i));
  const auto kth = magnitudes.begin() + (n + 1) / 2 - 1;
  std::nth_element(magnitudes.begin(), kth, magnitudes.end());
  return *kth;
}

/// Median of the row norms (average of the two middle values for even n).
template <typename Derived>
typename Derived::Scalar median_norm(const Eigen::MatrixBase<Derived>& centered) {
  using Scalar = typename Derived::Scalar;
  const Index n = centered.rows();
  std::vector<Scalar> norms(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) norms[static_cast<std::size_t>(i)] = centered.row(i).norm();
  std::sort(norms.begin(), norms.end());
  const auto half = static_cast<std::size_t>(n / 2);
  return n % 2 == 1 ? norms[half] : (norms[half - 1] + norms[half]) / Scalar(2);
}

template <typename Derived>
PreparedData<typename Derived::Scalar> prepare(const Eigen::MatrixBase<Derived>& raw,
                                               MextMode mode = MextMode::norm_median) {
  using Scalar = typename Derived::Scalar;
  auto [centered, mean] = center(raw);
  auto pc = principal_components(centered);
  auto sorted = score_and_sort(centered, pc.v1);

  PreparedData<Scalar> out;
  out.mean = std::move(mean);
  out.v1 = std::move(pc.v1);
  out.v2 = std::move(pc.v2);
  out.sigma1 = pc.sigma1;
  out.sigma2 = pc.sigma2;
  out.centered = std::move(sorted.sorted);
  out.scores = std::move(sorted.scores);
  out.perm = std::move(sorted.perm);
  out.mext = mode == MextMode::score_interval ? median_extend(out.scores) : median_norm(out.centered);
  return out;
}

}  // namespace sortclust
