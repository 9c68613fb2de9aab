#include "sortclust/explain.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

namespace sortclust {

namespace {

using nlohmann::json;

std::string fixed(double value, int digits = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

std::string plural(std::int64_t count, const std::string& noun) {
  return std::to_string(count) + " " + noun + (count == 1 ? "" : "s");
}

std::string cluster_phrase(int cluster) {
  return cluster == kOutlier ? "which has been labelled as an outlier"
                             : "which has been merged into cluster #" + std::to_string(cluster);
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string render_summary(const json& p) {
  std::ostringstream os;
  const auto n = p.at("n").get<std::int64_t>();
  const auto l = p.at("num_groups").get<std::int64_t>();
  const auto k = p.at("num_clusters").get<std::int64_t>();
  const double radius = p.at("radius").get<double>();
  const double mext = p.at("mext").get<double>();

  os << "A clustering of " << plural(n, "data point") << " with "
     << plural(p.at("d").get<std::int64_t>(), "feature") << " has been performed. ";
  os << "The radius parameter was set to " << fixed(radius) << " and MinPts was set to "
     << p.at("minPts").get<std::int64_t>() << ". ";
  if (mext > 0.0) {
    os << "As the provided data has been scaled by a factor of 1/" << fixed(mext)
       << ", data points within a radius of R=" << fixed(radius) << "*" << fixed(mext) << "="
       << fixed(p.at("R").get<double>()) << " were aggregated into groups. ";
  } else {
    os << "As the provided data has zero median extend, it was not scaled and data points within a radius of R="
       << fixed(p.at("R").get<double>()) << " were aggregated into groups. ";
  }
  os << "In total " << p.at("dist_count").get<std::int64_t>() << " comparisons were required ("
     << fixed(p.at("comparisons_per_point").get<double>()) << " comparisons per data point). ";
  os << "This resulted in " << plural(l, "group") << ", each uniquely associated with a starting point. ";
  os << "These " << plural(l, "group") << " were subsequently merged into " << plural(k, "cluster")
     << (k == 1 ? " with the following size:\n" : " with the following sizes:\n");
  const auto sizes = p.at("cluster_sizes").get<std::vector<std::int64_t>>();
  for (std::size_t c = 0; c < sizes.size(); ++c)
    os << "* cluster " << c << " : " << sizes[c] << '\n';
  const auto outliers = p.at("num_outliers").get<std::int64_t>();
  if (outliers > 0) os << plural(outliers, "data point") << " were labelled as outliers.\n";

  os << "A list of all starting points is shown below.\n";
  os << "-----\n";
  os << "Group  NrPts  Cluster  Coordinates\n";
  for (const auto& row : p.at("groups")) {
    os << pad_left(std::to_string(row.at("group").get<std::int64_t>()), 5) << "  "
       << pad_left(std::to_string(row.at("num_points").get<std::int64_t>()), 5) << "  "
       << pad_left(std::to_string(row.at("cluster").get<int>()), 7) << "  ";
    const auto coords = row.at("coordinates").get<std::vector<double>>();
    for (std::size_t j = 0; j < coords.size(); ++j) os << (j ? " " : "") << fixed(coords[j]);
    os << '\n';
  }
  os << "-----\n";
  os << "In order to explain the clustering of individual data points, pass one or two point indices.\n";
  return os.str();
}

std::string render_point(const json& p) {
  std::ostringstream os;
  const auto group = p.at("group").get<std::int64_t>();
  os << "The data point " << p.at("index").get<std::int64_t>() << " is in group " << group << ", "
     << cluster_phrase(p.at("cluster").get<int>()) << ".\n";
  os << "Group " << group << " has starting point " << p.at("starting_point").get<std::int64_t>()
     << " and contains " << plural(p.at("group_size").get<std::int64_t>(), "data point") << ".\n";
  return os.str();
}

std::string render_pair(const json& p) {
  std::ostringstream os;
  const auto i = p.at("index1").get<std::int64_t>();
  const auto j = p.at("index2").get<std::int64_t>();
  const auto gi = p.at("group1").get<std::int64_t>();
  const auto gj = p.at("group2").get<std::int64_t>();
  const int ci = p.at("cluster1").get<int>();
  const int cj = p.at("cluster2").get<int>();

  if (gi == gj) {
    os << "Both data points " << i << " and " << j << " are in group " << gi << ", "
       << cluster_phrase(ci) << ".\n";
    return os.str();
  }
  if (!p.at("same_cluster").get<bool>()) {
    os << "The data point " << i << " is in group " << gi << ", " << cluster_phrase(ci)
       << ", and the data point " << j << " is in group " << gj << ", " << cluster_phrase(cj)
       << ". There is no path of groups connecting these two data points.\n";
    return os.str();
  }
  os << "The data point " << i << " is in group " << gi << " and the data point " << j
     << " is in group " << gj << ", both of which were merged into cluster #" << ci << ". ";
  if (p.at("path").empty()) {
    os << "These two groups are not connected by merge edges; at least one of them joined the "
          "cluster through outlier reassignment.\n";
  } else {
    os << "These two groups are connected via groups "
       << format_path(p.at("path").get<std::vector<Index>>()) << ".\n";
  }
  return os.str();
}

}  // namespace

std::string format_path(const std::vector<Index>& path) {
  std::string out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k) out += " <-> ";
    out += std::to_string(path[k]);
  }
  return out;
}

std::string render_report(const json& structured) {
  const auto kind = structured.at("kind").get<std::string>();
  if (kind == "summary") return render_summary(structured);
  if (kind == "point") return render_point(structured);
  if (kind == "pair") return render_pair(structured);
  throw ParameterError("unknown report kind '" + kind + "'");
}

std::optional<std::vector<Index>> shortest_group_path(const ClusterModel& model, Index from,
                                                      Index to) {
  const auto& m = model.data();
  const Index l = model.num_groups();
  if (from < 0 || from >= l || to < 0 || to >= l) throw ParameterError("group index out of range");

  const int cluster = m.group_cluster[static_cast<std::size_t>(from)];
  auto inside = [&](Index g) { return m.group_cluster[static_cast<std::size_t>(g)] == cluster; };

  std::vector<std::vector<std::pair<Index, double>>> adjacency(static_cast<std::size_t>(l));
  for (const auto& [a, b] : m.merge_graph.edges) {
    if (!inside(a) || !inside(b)) continue;
    const double w = (m.starting_points.row(a) - m.starting_points.row(b)).norm();
    adjacency[static_cast<std::size_t>(a)].emplace_back(b, w);
    adjacency[static_cast<std::size_t>(b)].emplace_back(a, w);
  }

  // Dense Dijkstra keyed on (distance, path); the group count is small.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(l), inf);
  std::vector<std::vector<Index>> path(static_cast<std::size_t>(l));
  std::vector<char> done(static_cast<std::size_t>(l), 0);
  dist[static_cast<std::size_t>(from)] = 0.0;
  path[static_cast<std::size_t>(from)] = {from};

  auto better = [&](double da, const std::vector<Index>& pa, double db, const std::vector<Index>& pb) {
    if (da != db) return da < db;
    return pb.empty() || pa < pb;
  };

  for (;;) {
    Index u = -1;
    for (Index v = 0; v < l; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      if (done[vi] || dist[vi] == inf) continue;
      if (u < 0 || better(dist[vi], path[vi], dist[static_cast<std::size_t>(u)], path[static_cast<std::size_t>(u)]))
        u = v;
    }
    if (u < 0) return std::nullopt;
    const auto ui = static_cast<std::size_t>(u);
    if (u == to) return path[ui];
    done[ui] = 1;
    for (const auto& [v, w] : adjacency[ui]) {
      const auto vi = static_cast<std::size_t>(v);
      if (done[vi]) continue;
      std::vector<Index> candidate = path[ui];
      candidate.push_back(v);
      if (better(dist[ui] + w, candidate, dist[vi], path[vi])) {
        dist[vi] = dist[ui] + w;
        path[vi] = std::move(candidate);
      }
    }
  }
}

ExplainReport explain_summary(const ClusterModel& model) {
  const auto& m = model.data();
  json p;
  p["kind"] = "summary";
  p["template_version"] = kExplainTemplateVersion;
  p["n"] = m.n;
  p["d"] = m.d;
  p["radius"] = m.config.radius;
  p["minPts"] = m.config.min_pts;
  p["mext"] = m.mext;
  p["R"] = model.aggregation_radius();
  p["dist_count"] = m.stats.dist_count;
  p["comparisons_per_point"] = static_cast<double>(m.stats.dist_count) / static_cast<double>(m.n);
  p["num_groups"] = model.num_groups();
  p["num_clusters"] = model.num_clusters();
  p["cluster_sizes"] = m.cluster_sizes;
  p["num_outliers"] = std::count(model.labels().begin(), model.labels().end(), kOutlier);

  const Index shown = std::min<Index>(m.d, 2);
  json rows = json::array();
  for (Index g = 0; g < model.num_groups(); ++g) {
    const Vector<double> raw = model.starting_point_raw(g);
    rows.push_back({{"group", g},
                    {"num_points", m.group_members[static_cast<std::size_t>(g)].size()},
                    {"cluster", m.group_cluster[static_cast<std::size_t>(g)]},
                    {"starting_point", model.starting_row(g)},
                    {"coordinates", std::vector<double>(raw.data(), raw.data() + shown)}});
  }
  p["groups"] = std::move(rows);
  return {ReportKind::summary, render_report(p), p};
}

ExplainReport explain_point(const ClusterModel& model, Index row) {
  const Index g = model.group_of(row);
  json p;
  p["kind"] = "point";
  p["template_version"] = kExplainTemplateVersion;
  p["index"] = row;
  p["group"] = g;
  p["cluster"] = model.data().group_cluster[static_cast<std::size_t>(g)];
  p["starting_point"] = model.starting_row(g);
  p["group_size"] = model.data().group_members[static_cast<std::size_t>(g)].size();
  return {ReportKind::point, render_report(p), p};
}

ExplainReport explain_pair(const ClusterModel& model, Index row1, Index row2) {
  const Index g1 = model.group_of(row1);
  const Index g2 = model.group_of(row2);
  const auto& clusters = model.data().group_cluster;
  const int c1 = clusters[static_cast<std::size_t>(g1)];
  const int c2 = clusters[static_cast<std::size_t>(g2)];
  const bool same_cluster = g1 == g2 || (c1 == c2 && c1 != kOutlier);

  json p;
  p["kind"] = "pair";
  p["template_version"] = kExplainTemplateVersion;
  p["index1"] = row1;
  p["index2"] = row2;
  p["group1"] = g1;
  p["group2"] = g2;
  p["cluster1"] = c1;
  p["cluster2"] = c2;
  p["same_cluster"] = same_cluster;
  std::vector<Index> path;
  if (same_cluster) {
    if (auto found = shortest_group_path(model, g1, g2)) path = std::move(*found);
  }
  p["path"] = path;
  return {ReportKind::pair, render_report(p), p};
}

}  // namespace sortclust
