#pragma once

// Fitted clustering model: aggregation groups, merge graph, cluster map and
// the preprocessing needed to classify new points.

#include "sortclust/aggregation.hpp"
#include "sortclust/merging.hpp"
#include "sortclust/prep.hpp"
#include "sortclust/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sortclust {

enum class MergeMode { distance, density };
enum class OutlierMode { reassign, separate };

std::string_view to_string(MergeMode mode);
std::string_view to_string(OutlierMode mode);
MergeMode parse_merge_mode(std::string_view text);
OutlierMode parse_outlier_mode(std::string_view text);

struct Config {
  double radius = 0.5;
  Index min_pts = 0;
  double scale = 1.5;
  MergeMode merge_mode = MergeMode::distance;
  OutlierMode outlier_mode = OutlierMode::reassign;
  MextMode mext_mode = MextMode::norm_median;
  DensityCounting density_counting = DensityCounting::geometric;
  unsigned threads = 0;  ///< 0 or 1: sequential

  /// Throws ParameterError unless radius > 0, min_pts >= 0 and scale in [1, 2].
  void validate() const;
};

/// Everything a model is built from. Group members are original row indices
/// listed in score order, so members.front() is the starting point.
struct ModelData {
  Config config;
  Vector<double> mean;
  Vector<double> v1;
  double mext = 0;
  RowMatrix<double> starting_points;  ///< centered coordinates, one row per group
  Vector<double> starting_scores;
  std::vector<std::vector<Index>> group_members;
  std::vector<int> group_cluster;
  std::vector<Index> cluster_sizes;
  MergeGraph merge_graph;
  AggregationStats stats;
  Index n = 0;
  Index d = 0;
};

/// Immutable fitted model. A default-constructed model is unfitted and every
/// query on it throws StateError.
class ClusterModel {
public:
  ClusterModel() = default;

  /// Validates the data for consistency and derives per-point lookups.
  explicit ClusterModel(ModelData data);

  bool fitted() const { return fitted_; }

  const ModelData& data() const;
  const Config& config() const { return data().config; }
  Index size() const { return data().n; }
  Index dim() const { return data().d; }
  Index num_groups() const { return static_cast<Index>(data().group_members.size()); }
  int num_clusters() const { return static_cast<int>(data().cluster_sizes.size()); }

  /// Absolute aggregation radius R = radius * mext.
  double aggregation_radius() const;

  /// Per-point cluster label in original row order; kOutlier marks outliers.
  const LabelVector& labels() const;
  Index group_of(Index row) const;
  Index starting_row(Index group) const;

  /// Starting point of a group in the original (uncentered) coordinates.
  Vector<double> starting_point_raw(Index group) const;

private:
  const ModelData& checked() const;

  ModelData data_;
  LabelVector labels_;
  std::vector<Index> group_of_row_;
  bool fitted_ = false;
};

/// Minimum cluster size rule. Reassign mode moves every group of a cluster
/// smaller than min_pts to the cluster of the nearest starting point (ties:
/// smallest group index) among clusters that had at least min_pts points
/// before the pass; nothing changes if no cluster qualifies. Separate mode
/// marks those groups kOutlier. Cluster ids are renumbered by size.
GroupClusterMap apply_minpts(const GroupClusterMap& map, const std::vector<Index>& group_sizes,
                             const RowMatrix<double>& starting_points, Index min_pts,
                             OutlierMode mode);

/// Per-point labels for `groups` whose members index a set of n points.
LabelVector labels_from_groups(const std::vector<std::vector<Index>>& members,
                               const std::vector<int>& group_cluster, Index n);

ClusterModel fit(const Matrix<double>& raw, const Config& config = {});

/// Cluster of the nearest starting point (ties: smallest group index). In
/// separate mode only non-outlier groups are considered, so the result is
/// kOutlier only when every cluster was dropped.
LabelVector predict(const ClusterModel& model, const Matrix<double>& points);

}  // namespace sortclust
