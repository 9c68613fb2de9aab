#pragma once

// Merging of groups into clusters, by starting-point distance or by the
// density of points in the overlap of two group balls.

#include "sortclust/aggregation.hpp"
#include "sortclust/geometry.hpp"
#include "sortclust/parallel.hpp"
#include "sortclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace sortclust {

using Edge = std::pair<Index, Index>;

/// Undirected graph on groups; edges (i, j) with i < j, sorted, no duplicates.
struct MergeGraph {
  Index num_groups = 0;
  std::vector<Edge> edges;
};

struct GroupClusterMap {
  std::vector<int> cluster_of_group;  ///< kOutlier for groups dropped as outliers
  int k = 0;
  std::vector<Index> sizes;           ///< total points per cluster id
};

enum class DensityCounting {
  geometric,     ///< every dataset point inside the balls is counted
  members_only,  ///< only members of the two groups are counted
};

struct DensityMergeOptions {
  DensityCounting counting = DensityCounting::geometric;
  unsigned threads = 0;
};

inline void check_scale(double scale) {
  if (!(scale >= 1.0 && scale <= 2.0)) throw ParameterError("scale must lie in [1, 2]");
}

/// Edge (i, j) iff dist(start_i, start_j) <= scale * R. Starting points must be
/// in nondecreasing score order; the scan for i stops at the first successor
/// whose score gap exceeds scale * R.
template <typename SDerived, typename PDerived>
MergeGraph distance_merge(const Eigen::MatrixBase<SDerived>& starting_scores,
                          const Eigen::MatrixBase<PDerived>& starting_points,
                          typename PDerived::Scalar R, double scale) {
  using Scalar = typename PDerived::Scalar;
  check_scale(scale);
  detail::check_radius(R);
  const Index l = starting_points.rows();
  if (starting_scores.size() != l)
    throw ParameterError("starting_scores and starting_points disagree in length");

  const Scalar threshold = static_cast<Scalar>(scale) * R;
  const Scalar threshold2 = threshold * threshold;
  MergeGraph graph;
  graph.num_groups = l;
  for (Index i = 0; i < l; ++i) {
    for (Index j = i + 1; j < l; ++j) {
      if (starting_scores(j) - starting_scores(i) > threshold) break;
      if ((starting_points.row(j) - starting_points.row(i)).squaredNorm() <= threshold2)
        graph.edges.emplace_back(i, j);
    }
  }
  return graph;
}

/// The density criterion for two starting points `dist` apart, given the
/// number of points in the union and in the intersection of their R-balls:
///   count_union / vol_union <= count_inter / vol_inter.
/// Both volumes share the factor vol(B(R)), so the comparison is made on the
/// lens fraction alone and stays finite in any dimension.
inline bool density_criterion(std::int64_t count_union, std::int64_t count_inter, double dist,
                              double R, int d) {
  if (count_inter == 0) return false;
  const double frac = intersection_fraction(dist, R, d);
  if (frac == 0.0) return false;
  return static_cast<double>(count_union) * frac <=
         static_cast<double>(count_inter) * (2.0 - frac);
}

namespace detail {

template <typename Scalar>
std::pair<std::int64_t, std::int64_t> count_window(const PreparedData<Scalar>& prepared, Index si,
                                                   Index sj, Scalar R) {
  const auto& x = prepared.centered;
  const auto& alpha = prepared.scores;
  const Scalar R2 = R * R;
  // The window is only a prefilter, so a slightly wider band is harmless.
  const Scalar slack = R * Scalar(1e-9);
  const Scalar* first = alpha.data();
  const Scalar* last = alpha.data() + alpha.size();
  const Scalar* lo = std::lower_bound(first, last, alpha(si) - R - slack);
  const Scalar* hi = std::upper_bound(first, last, alpha(sj) + R + slack);

  std::int64_t in_union = 0;
  std::int64_t in_inter = 0;
  for (Index p = lo - first; p < hi - first; ++p) {
    const bool a = (x.row(p) - x.row(si)).squaredNorm() <= R2;
    const bool b = (x.row(p) - x.row(sj)).squaredNorm() <= R2;
    in_union += (a || b);
    in_inter += (a && b);
  }
  return {in_union, in_inter};
}

template <typename Scalar>
std::pair<std::int64_t, std::int64_t> count_members(const PreparedData<Scalar>& prepared,
                                                    const Group& gi, const Group& gj, Scalar R) {
  const auto& x = prepared.centered;
  const Scalar R2 = R * R;
  std::int64_t in_inter = 0;
  for (const Group* g : {&gi, &gj}) {
    const Index other = g == &gi ? gj.start : gi.start;
    for (Index p : g->members) in_inter += (x.row(p) - x.row(other)).squaredNorm() <= R2;
  }
  return {static_cast<std::int64_t>(gi.members.size() + gj.members.size()), in_inter};
}

}  // namespace detail

/// Edge (i, j) iff the density criterion holds for the R-balls around the two
/// starting points. Pairs whose starting scores differ by more than 2R, or
/// whose starting points are 2R or more apart, have no overlap and are skipped.
template <typename Scalar>
MergeGraph density_merge(const std::vector<Group>& groups, const PreparedData<Scalar>& prepared,
                         Scalar R, const DensityMergeOptions& options = {}) {
  detail::check_radius(R);
  const auto l = groups.size();
  const int d = static_cast<int>(prepared.dim());
  const auto& x = prepared.centered;
  const auto& alpha = prepared.scores;
  const Scalar two_r = Scalar(2) * R;

  std::vector<std::vector<Edge>> per_group(l);
  parallel_for(l, options.threads, [&](std::size_t i) {
    const Index si = groups[i].start;
    for (std::size_t j = i + 1; j < l; ++j) {
      const Index sj = groups[j].start;
      if (alpha(sj) - alpha(si) > two_r) break;
      const Scalar dist2 = (x.row(sj) - x.row(si)).squaredNorm();
      if (dist2 >= two_r * two_r) continue;
      const auto [in_union, in_inter] =
          options.counting == DensityCounting::geometric
              ? detail::count_window(prepared, si, sj, R)
              : detail::count_members(prepared, groups[i], groups[j], R);
      if (density_criterion(in_union, in_inter, std::sqrt(static_cast<double>(dist2)),
                            static_cast<double>(R), d))
        per_group[i].emplace_back(static_cast<Index>(i), static_cast<Index>(j));
    }
  });

  MergeGraph graph;
  graph.num_groups = static_cast<Index>(l);
  for (auto& edges : per_group) graph.edges.insert(graph.edges.end(), edges.begin(), edges.end());
  return graph;
}

/// Connected components of the merge graph. Cluster ids are ordered by
/// descending total point count; ties go to the component holding the
/// smallest group index.
GroupClusterMap connected_components(const MergeGraph& graph,
                                     const std::vector<Index>& group_sizes);

/// Renumbers arbitrary component keys (one per group) into contiguous ids with
/// the same size-then-index ordering. Groups with key kOutlier keep it.
GroupClusterMap canonical_cluster_map(const std::vector<int>& key_of_group,
                                      const std::vector<Index>& group_sizes);

}  // namespace sortclust
