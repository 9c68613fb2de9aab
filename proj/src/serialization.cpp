#include "sortclust/serialization.hpp"

#include <fstream>

namespace sortclust {

namespace {

using nlohmann::json;

std::string_view to_string(MextMode mode) {
  return mode == MextMode::score_interval ? "score_interval" : "norm_median";
}

MextMode parse_mext_mode(const std::string& text) {
  if (text == "score_interval") return MextMode::score_interval;
  if (text == "norm_median") return MextMode::norm_median;
  throw InputError("unknown mext mode '" + text + "'");
}

json vector_to_json(const Vector<double>& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector<double> vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector<double>>(values.data(), static_cast<Index>(values.size()));
}

}  // namespace

json model_to_json(const ClusterModel& model) {
  const auto& m = model.data();
  json doc;
  doc["version"] = kModelFormatVersion;
  doc["config"] = {
      {"radius", m.config.radius},
      {"minPts", m.config.min_pts},
      {"scale", m.config.scale},
      {"merge_mode", to_string(m.config.merge_mode)},
      {"outlier_mode", to_string(m.config.outlier_mode)},
      {"mext_mode", to_string(m.config.mext_mode)},
      {"density_counting",
       m.config.density_counting == DensityCounting::geometric ? "geometric" : "members_only"},
  };
  doc["mean"] = vector_to_json(m.mean);
  doc["v1"] = vector_to_json(m.v1);
  doc["mext"] = m.mext;

  json points = json::array();
  for (Index g = 0; g < m.starting_points.rows(); ++g)
    points.push_back(vector_to_json(m.starting_points.row(g).transpose()));
  doc["starting_points"] = std::move(points);
  doc["starting_scores"] = vector_to_json(m.starting_scores);
  doc["group_members"] = m.group_members;
  doc["group_cluster"] = m.group_cluster;
  doc["cluster_sizes"] = m.cluster_sizes;

  json edges = json::array();
  for (const auto& [i, j] : m.merge_graph.edges) edges.push_back({i, j});
  doc["merge_edges"] = std::move(edges);
  doc["stats"] = {{"dist_count", m.stats.dist_count}, {"n", m.n}, {"d", m.d}};
  return doc;
}

ClusterModel model_from_json(const json& doc) {
  try {
    if (doc.at("version").get<int>() != kModelFormatVersion)
      throw InputError("unsupported model version " + doc.at("version").dump());
    ModelData m;
    const auto& cfg = doc.at("config");
    m.config.radius = cfg.at("radius").get<double>();
    m.config.min_pts = cfg.at("minPts").get<Index>();
    m.config.scale = cfg.at("scale").get<double>();
    m.config.merge_mode = parse_merge_mode(cfg.at("merge_mode").get<std::string>());
    m.config.outlier_mode = parse_outlier_mode(cfg.at("outlier_mode").get<std::string>());
    m.config.mext_mode = parse_mext_mode(cfg.value("mext_mode", std::string("norm_median")));
    m.config.density_counting = cfg.value("density_counting", std::string("geometric")) == "members_only"
                                    ? DensityCounting::members_only
                                    : DensityCounting::geometric;
    m.config.validate();

    m.mean = vector_from_json(doc.at("mean"));
    m.v1 = vector_from_json(doc.at("v1"));
    m.mext = doc.at("mext").get<double>();
    const auto& stats = doc.at("stats");
    m.n = stats.at("n").get<Index>();
    m.d = stats.at("d").get<Index>();
    m.stats.dist_count = stats.at("dist_count").get<std::int64_t>();
    m.stats.n = m.n;

    const auto rows = doc.at("starting_points").get<std::vector<std::vector<double>>>();
    m.starting_points.resize(static_cast<Index>(rows.size()), m.d);
    for (std::size_t g = 0; g < rows.size(); ++g) {
      if (static_cast<Index>(rows[g].size()) != m.d) throw InputError("starting point has wrong dimension");
      for (Index j = 0; j < m.d; ++j) m.starting_points(static_cast<Index>(g), j) = rows[g][static_cast<std::size_t>(j)];
    }
    m.starting_scores = vector_from_json(doc.at("starting_scores"));
    m.group_members = doc.at("group_members").get<std::vector<std::vector<Index>>>();
    m.group_cluster = doc.at("group_cluster").get<std::vector<int>>();
    m.cluster_sizes = doc.at("cluster_sizes").get<std::vector<Index>>();
    m.merge_graph.num_groups = static_cast<Index>(m.group_members.size());
    for (const auto& e : doc.value("merge_edges", json::array()))
      m.merge_graph.edges.emplace_back(e.at(0).get<Index>(), e.at(1).get<Index>());
    return ClusterModel(std::move(m));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model document: ") + e.what());
  } catch (const ParameterError& e) {
    throw InputError(std::string("invalid model configuration: ") + e.what());
  }
}

void save_model(const ClusterModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file " + path.string());
  out << model_to_json(model).dump(1) << '\n';
  if (!out) throw InputError("failed writing model file " + path.string());
}

ClusterModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace sortclust
