#pragma once

// Greedy aggregation of score-sorted points into groups of radius R.

#include "sortclust/prep.hpp"
#include "sortclust/types.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace sortclust {

/// A group produced by aggregation. Indices refer to sorted order.
struct Group {
  Index start = 0;
  std::vector<Index> members;  ///< ascending, starts with `start`
};

/// Distance evaluations performed during aggregation. Only candidates that
/// were still unassigned are evaluated, so each non-starting point costs at
/// least one evaluation.
struct AggregationStats {
  std::int64_t dist_count = 0;
  Index n = 0;

  double avg_dist_pp() const {
    return n > 0 ? static_cast<double>(dist_count) / static_cast<double>(n) : 0.0;
  }
};

struct Aggregation {
  std::vector<Group> groups;
  AggregationStats stats;
};

/// Effective absolute radius: radius * mext, or radius itself for degenerate data.
template <typename Scalar>
Scalar effective_radius(Scalar radius, Scalar mext) {
  return mext > Scalar(0) ? radius * mext : radius;
}

namespace detail {

template <typename Scalar>
void check_radius(Scalar R) {
  if (!(R > Scalar(0)) || !std::isfinite(static_cast<double>(R)))
    throw ParameterError("aggregation radius must be positive and finite");
}

template <typename Scalar, bool EarlyExit>
Aggregation aggregate_impl(const PreparedData<Scalar>& prepared, Scalar R) {
  check_radius(R);
  const Index n = prepared.size();
  const auto& x = prepared.centered;
  const auto& alpha = prepared.scores;
  const Scalar R2 = R * R;

  Aggregation out;
  out.stats.n = n;
  std::vector<char> assigned(static_cast<std::size_t>(n), 0);

  for (Index i = 0; i < n; ++i) {
    if (assigned[static_cast<std::size_t>(i)]) continue;
    Group g;
    g.start = i;
    g.members.push_back(i);
    assigned[static_cast<std::size_t>(i)] = 1;

    for (Index j = i + 1; j < n; ++j) {
      if constexpr (EarlyExit) {
        if (alpha(j) - alpha(i) > R) break;
      }
      if (assigned[static_cast<std::size_t>(j)]) continue;
      ++out.stats.dist_count;
      if ((x.row(j) - x.row(i)).squaredNorm() <= R2) {
        assigned[static_cast<std::size_t>(j)] = 1;
        g.members.push_back(j);
      }
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace detail

/// Scans points in sorted order; the first unassigned point starts a new group
/// and collects every unassigned successor within distance R (inclusive). The
/// scan for a starting point stops once the score gap exceeds R, which cannot
/// change the result because |alpha_i - alpha_j| <= dist(x_i, x_j).
template <typename Scalar>
Aggregation aggregate(const PreparedData<Scalar>& prepared, Scalar R) {
  return detail::aggregate_impl<Scalar, true>(prepared, R);
}

/// Same partition as `aggregate`, without the score-gap early exit.
template <typename Scalar>
Aggregation aggregate_reference(const PreparedData<Scalar>& prepared, Scalar R) {
  return detail::aggregate_impl<Scalar, false>(prepared, R);
}

/// Group index of every sorted point.
inline std::vector<Index> group_of_sorted(const std::vector<Group>& groups, Index n) {
  std::vector<Index> out(static_cast<std::size_t>(n), -1);
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (Index m : groups[g].members) out[static_cast<std::size_t>(m)] = static_cast<Index>(g);
  return out;
}

}  // namespace sortclust
