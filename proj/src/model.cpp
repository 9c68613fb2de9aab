#include "sortclust/model.hpp"

#include "sortclust/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sortclust {

std::string_view to_string(MergeMode mode) {
  return mode == MergeMode::distance ? "distance" : "density";
}

std::string_view to_string(OutlierMode mode) {
  return mode == OutlierMode::reassign ? "reassign" : "separate";
}

MergeMode parse_merge_mode(std::string_view text) {
  if (text == "distance") return MergeMode::distance;
  if (text == "density") return MergeMode::density;
  throw ParameterError("unknown merge mode '" + std::string(text) + "'");
}

OutlierMode parse_outlier_mode(std::string_view text) {
  if (text == "reassign") return OutlierMode::reassign;
  if (text == "separate") return OutlierMode::separate;
  throw ParameterError("unknown outlier mode '" + std::string(text) + "'");
}

void Config::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("radius must be positive");
  if (min_pts < 0) throw ParameterError("minPts must be nonnegative");
  check_scale(scale);
}

ClusterModel::ClusterModel(ModelData data) : data_(std::move(data)) {
  const auto& m = data_;
  const auto l = m.group_members.size();
  if (m.n < 1 || m.d < 1) throw InputError("model must describe at least one point");
  if (m.mean.size() != m.d || m.v1.size() != m.d) throw InputError("model vectors disagree with d");
  if (m.starting_points.rows() != static_cast<Index>(l) || m.starting_points.cols() != m.d ||
      m.starting_scores.size() != static_cast<Index>(l) || m.group_cluster.size() != l)
    throw InputError("model group arrays disagree in length");
  for (Index g = 1; g < m.starting_scores.size(); ++g)
    if (!(m.starting_scores(g - 1) <= m.starting_scores(g)))
      throw InputError("starting scores must be nondecreasing");
  if (m.merge_graph.num_groups != static_cast<Index>(l))
    throw InputError("merge graph size disagrees with group count");
  for (const auto& [i, j] : m.merge_graph.edges)
    if (i < 0 || j <= i || j >= static_cast<Index>(l)) throw InputError("invalid merge edge");

  const int k = static_cast<int>(m.cluster_sizes.size());
  std::vector<Index> counted(static_cast<std::size_t>(k), 0);
  group_of_row_.assign(static_cast<std::size_t>(m.n), -1);
  for (std::size_t g = 0; g < l; ++g) {
    const int c = m.group_cluster[g];
    if (c != kOutlier && (c < 0 || c >= k)) throw InputError("group mapped to unknown cluster");
    if (m.group_members[g].empty()) throw InputError("empty group");
    for (Index row : m.group_members[g]) {
      if (row < 0 || row >= m.n || group_of_row_[static_cast<std::size_t>(row)] != -1)
        throw InputError("group members do not partition the points");
      group_of_row_[static_cast<std::size_t>(row)] = static_cast<Index>(g);
    }
    if (c != kOutlier) counted[static_cast<std::size_t>(c)] += static_cast<Index>(m.group_members[g].size());
  }
  if (std::find(group_of_row_.begin(), group_of_row_.end(), -1) != group_of_row_.end())
    throw InputError("group members do not cover every point");
  if (counted != m.cluster_sizes) throw InputError("cluster sizes disagree with group members");

  labels_ = labels_from_groups(m.group_members, m.group_cluster, m.n);
  fitted_ = true;
}

const ModelData& ClusterModel::checked() const {
  if (!fitted_) throw StateError("model has not been fitted");
  return data_;
}

const ModelData& ClusterModel::data() const { return checked(); }

double ClusterModel::aggregation_radius() const {
  const auto& m = checked();
  return effective_radius(m.config.radius, m.mext);
}

const LabelVector& ClusterModel::labels() const {
  checked();
  return labels_;
}

Index ClusterModel::group_of(Index row) const {
  const auto& m = checked();
  if (row < 0 || row >= m.n)
    throw ParameterError("point index " + std::to_string(row) + " out of range [0, " +
                         std::to_string(m.n) + ")");
  return group_of_row_[static_cast<std::size_t>(row)];
}

Index ClusterModel::starting_row(Index group) const {
  const auto& m = checked();
  if (group < 0 || group >= num_groups()) throw ParameterError("group index out of range");
  return m.group_members[static_cast<std::size_t>(group)].front();
}

Vector<double> ClusterModel::starting_point_raw(Index group) const {
  const auto& m = checked();
  if (group < 0 || group >= num_groups()) throw ParameterError("group index out of range");
  return m.starting_points.row(group).transpose() + m.mean;
}

LabelVector labels_from_groups(const std::vector<std::vector<Index>>& members,
                               const std::vector<int>& group_cluster, Index n) {
  LabelVector labels(static_cast<std::size_t>(n), kOutlier);
  for (std::size_t g = 0; g < members.size(); ++g)
    for (Index p : members[g]) labels[static_cast<std::size_t>(p)] = group_cluster[g];
  return labels;
}

GroupClusterMap apply_minpts(const GroupClusterMap& map, const std::vector<Index>& group_sizes,
                             const RowMatrix<double>& starting_points, Index min_pts,
                             OutlierMode mode) {
  const auto l = map.cluster_of_group.size();
  if (group_sizes.size() != l || starting_points.rows() != static_cast<Index>(l))
    throw ParameterError("apply_minpts: group arrays disagree in length");

  auto eligible = [&](int c) {
    return c != kOutlier && map.sizes[static_cast<std::size_t>(c)] >= min_pts;
  };
  std::vector<int> key = map.cluster_of_group;

  if (mode == OutlierMode::separate) {
    for (std::size_t g = 0; g < l; ++g)
      if (!eligible(key[g])) key[g] = kOutlier;
    return canonical_cluster_map(key, group_sizes);
  }

  std::vector<std::size_t> targets;
  for (std::size_t g = 0; g < l; ++g)
    if (eligible(map.cluster_of_group[g])) targets.push_back(g);
  if (targets.empty()) return map;

  for (std::size_t g = 0; g < l; ++g) {
    if (eligible(map.cluster_of_group[g])) continue;
    double best = std::numeric_limits<double>::infinity();
    std::size_t nearest = targets.front();
    for (std::size_t h : targets) {
      const double d2 = (starting_points.row(static_cast<Index>(h)) -
                         starting_points.row(static_cast<Index>(g))).squaredNorm();
      if (d2 < best) {
        best = d2;
        nearest = h;
      }
    }
    key[g] = map.cluster_of_group[nearest];
  }
  return canonical_cluster_map(key, group_sizes);
}

ClusterModel fit(const Matrix<double>& raw, const Config& config) {
  config.validate();
  const auto prepared = prepare(raw, config.mext_mode);
  const double R = effective_radius(config.radius, prepared.mext);
  auto aggregation = aggregate(prepared, R);
  const auto& groups = aggregation.groups;
  const auto l = static_cast<Index>(groups.size());

  ModelData m;
  m.config = config;
  m.mean = prepared.mean;
  m.v1 = prepared.v1;
  m.mext = prepared.mext;
  m.n = prepared.size();
  m.d = prepared.dim();
  m.stats = aggregation.stats;
  m.starting_points.resize(l, m.d);
  m.starting_scores.resize(l);
  std::vector<Index> sizes(static_cast<std::size_t>(l));
  m.group_members.resize(static_cast<std::size_t>(l));
  for (Index g = 0; g < l; ++g) {
    const auto& group = groups[static_cast<std::size_t>(g)];
    m.starting_points.row(g) = prepared.centered.row(group.start);
    m.starting_scores(g) = prepared.scores(group.start);
    sizes[static_cast<std::size_t>(g)] = static_cast<Index>(group.members.size());
    auto& rows = m.group_members[static_cast<std::size_t>(g)];
    rows.reserve(group.members.size());
    for (Index p : group.members) rows.push_back(prepared.perm[static_cast<std::size_t>(p)]);
  }

  if (config.merge_mode == MergeMode::distance) {
    m.merge_graph = distance_merge(m.starting_scores, m.starting_points, R, config.scale);
  } else {
    m.merge_graph = density_merge(groups, prepared, R,
                                  DensityMergeOptions{config.density_counting, config.threads});
  }

  const auto components = connected_components(m.merge_graph, sizes);
  const auto final_map =
      apply_minpts(components, sizes, m.starting_points, config.min_pts, config.outlier_mode);
  m.group_cluster = final_map.cluster_of_group;
  m.cluster_sizes = final_map.sizes;
  return ClusterModel(std::move(m));
}

LabelVector predict(const ClusterModel& model, const Matrix<double>& points) {
  const auto& m = model.data();
  if (points.cols() != m.d)
    throw ParameterError("query points have " + std::to_string(points.cols()) +
                         " features, model expects " + std::to_string(m.d));
  validate_points(points);

  const auto l = static_cast<Index>(m.group_members.size());
  std::vector<char> usable(static_cast<std::size_t>(l), 1);
  const bool any_cluster = std::any_of(m.group_cluster.begin(), m.group_cluster.end(),
                                       [](int c) { return c != kOutlier; });
  if (any_cluster)
    for (Index g = 0; g < l; ++g) usable[static_cast<std::size_t>(g)] = m.group_cluster[static_cast<std::size_t>(g)] != kOutlier;

  const double* first = m.starting_scores.data();
  const double* last = first + l;
  LabelVector out(static_cast<std::size_t>(points.rows()));

  parallel_for(static_cast<std::size_t>(points.rows()), m.config.threads, [&](std::size_t q) {
    const Vector<double> x = points.row(static_cast<Index>(q)).transpose() - m.mean;
    const double score = x.dot(m.v1);
    double best = std::numeric_limits<double>::infinity();
    Index best_group = -1;
    auto consider = [&](Index g) {
      if (!usable[static_cast<std::size_t>(g)]) return;
      const double d2 = (m.starting_points.row(g).transpose() - x).squaredNorm();
      if (d2 < best || (d2 == best && g < best_group)) {
        best = d2;
        best_group = g;
      }
    };
    // Scan outward from the query's score; |score gap| bounds the distance.
    auto beyond = [&](double gap) { return gap * gap > best * (1.0 + 1e-12) + 1e-300; };
    const Index pos = std::lower_bound(first, last, score) - first;
    for (Index g = pos; g < l; ++g) {
      if (beyond(m.starting_scores(g) - score)) break;
      consider(g);
    }
    for (Index g = pos - 1; g >= 0; --g) {
      if (beyond(score - m.starting_scores(g))) break;
      consider(g);
    }
    out[q] = m.group_cluster[static_cast<std::size_t>(best_group)];
  });
  return out;
}

}  // namespace sortclust
