#include "cli.hpp"

#include "sortclust/blobs.hpp"
#include "sortclust/csv.hpp"
#include "sortclust/explain.hpp"
#include "sortclust/gaussian_model.hpp"
#include "sortclust/metrics.hpp"
#include "sortclust/model.hpp"
#include "sortclust/serialization.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace sortclust::cli {

namespace {

// Outputs are rendered completely before any file is touched, so a failing
// command leaves nothing behind.
struct PendingFile {
  std::string path;
  std::string content;
};

// Files are staged next to their targets and renamed once all of them have
// been written.
void write_all(const std::vector<PendingFile>& files, std::ostream& out) {
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged;
  auto discard = [&] {
    std::error_code ignored;
    for (const auto& [tmp, target] : staged) std::filesystem::remove(tmp, ignored);
  };
  for (const auto& f : files) {
    if (f.path.empty()) continue;
    std::filesystem::path target(f.path);
    std::filesystem::path tmp = target;
    tmp += ".partial";
    staged.emplace_back(tmp, target);
    std::ofstream file(tmp, std::ios::binary);
    if (!file || !(file << f.content) || !file.flush()) {
      discard();
      throw InputError("cannot write " + f.path);
    }
  }
  for (const auto& [tmp, target] : staged) {
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      discard();
      throw InputError("cannot write " + target.string() + ": " + ec.message());
    }
  }
  for (const auto& f : files)
    if (f.path.empty()) out << f.content;
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParameterError(std::string("missing required option ") + flag);
  return value;
}

Config model_config(const CliConfig& c) {
  Config config;
  config.radius = c.radius;
  config.min_pts = static_cast<Index>(c.min_pts);
  config.scale = c.scale;
  config.merge_mode = parse_merge_mode(c.merge);
  config.outlier_mode = parse_outlier_mode(c.outliers);
  if (c.mext == "norm") config.mext_mode = MextMode::norm_median;
  else if (c.mext == "interval") config.mext_mode = MextMode::score_interval;
  else throw ParameterError("unknown --mext value '" + c.mext + "'");
  config.threads = c.threads;
  config.validate();
  return config;
}

std::string labels_text(const LabelVector& labels) {
  std::ostringstream os;
  write_labels(os, labels);
  return os.str();
}

std::string stats_text(const ClusterModel& model) {
  const auto& m = model.data();
  std::ostringstream os;
  os << "The " << m.n << " data points with " << m.d << " features were aggregated into "
     << model.num_groups() << " groups.\n";
  os << "In total " << m.stats.dist_count << " comparisons were required (" << std::fixed
     << std::setprecision(2) << m.stats.avg_dist_pp() << " comparisons per data point).\n";
  os << "The " << model.num_groups() << " groups were merged into " << model.num_clusters()
     << " clusters with the following sizes:\n";
  for (std::size_t c = 0; c < m.cluster_sizes.size(); ++c)
    os << "* cluster " << c << " : " << m.cluster_sizes[c] << '\n';
  const auto outliers = std::count(model.labels().begin(), model.labels().end(), kOutlier);
  if (outliers > 0) os << outliers << " data points were labelled as outliers.\n";
  return os.str();
}

std::string plot_text(const ClusterModel& model, const Matrix<double>& raw) {
  auto [centered, mean] = center(raw);
  const auto pc = principal_components(centered);
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "pc1,pc2,group,cluster\n";
  for (Index i = 0; i < centered.rows(); ++i) {
    os << centered.row(i).dot(pc.v1) << ',' << centered.row(i).dot(pc.v2) << ','
       << model.group_of(i) << ',' << model.labels()[static_cast<std::size_t>(i)] << '\n';
  }
  return os.str();
}

unsigned threads_from_env() {
  const char* value = std::getenv("SORTCLUST_THREADS");
  if (!value || !*value) return 0;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (*end != '\0' || parsed < 0) throw ParameterError("SORTCLUST_THREADS must be a nonnegative integer");
  return static_cast<unsigned>(parsed);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int cmd_fit(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Config config = model_config(c);
    const auto csv = read_csv(require(c.input, "--input"), {c.header, c.drop_bad_rows});
    if (csv.dropped_rows > 0) err << "dropped " << csv.dropped_rows << " malformed rows\n";
    const auto model = fit(csv.points, config);

    std::vector<PendingFile> files;
    files.push_back({c.output, labels_text(model.labels())});
    if (!c.model.empty()) files.push_back({c.model, model_to_json(model).dump(1) + "\n"});
    if (!c.plot_data.empty()) files.push_back({c.plot_data, plot_text(model, csv.points)});
    write_all(files, out);
    if (c.stats) (c.output.empty() ? err : out) << stats_text(model);
    return kExitOk;
  });
}

int cmd_predict(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto model = load_model(require(c.model, "--model"));
    const auto csv = read_csv(require(c.input, "--input"), {c.header, c.drop_bad_rows});
    const auto labels = predict(model, csv.points);
    write_all({{c.output, labels_text(labels)}}, out);
    return kExitOk;
  });
}

int cmd_explain(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto model = load_model(require(c.model, "--model"));
    if (c.index2 && !c.index) throw ParameterError("--index2 requires --index");
    ExplainReport report;
    if (c.index && c.index2)
      report = explain_pair(model, static_cast<Index>(*c.index), static_cast<Index>(*c.index2));
    else if (c.index)
      report = explain_point(model, static_cast<Index>(*c.index));
    else
      report = explain_summary(model);
    write_all({{c.output, c.json ? report.structured.dump(2) + "\n" : report.text}}, out);
    return kExitOk;
  });
}

int cmd_eval(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.metric != "ari" && c.metric != "ami" && c.metric != "both")
      throw ParameterError("--metric must be ari, ami or both");
    const auto truth = read_labels(std::filesystem::path(require(c.truth, "--truth")));
    const auto pred = read_labels(std::filesystem::path(require(c.pred, "--pred")));
    std::ostringstream os;
    os << std::fixed << std::setprecision(6);
    if (c.metric != "ami") os << "ARI: " << ari(truth, pred) << '\n';
    if (c.metric != "ari") os << "AMI: " << ami(truth, pred) << '\n';
    write_all({{c.output, os.str()}}, out);
    return kExitOk;
  });
}

int cmd_probe(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (int d : c.grid_d)
      if (d < 2) throw ParameterError("probe dimensions must be at least 2");
    std::ostringstream os;
    os << "c,R,s,d,P1,P2,ratio\n";
    os << std::setprecision(10);
    for (double cc : c.grid_c)
      for (double R : c.grid_R)
        for (double s : c.grid_s)
          for (int d : c.grid_d) {
            const GaussianModelParams p{cc, R, s, d};
            os << cc << ',' << R << ',' << s << ',' << d << ',' << model_p1(cc, R) << ','
               << model_p2(p) << ',' << model_ratio(p) << '\n';
          }
    write_all({{c.output, os.str()}}, out);
    return kExitOk;
  });
}

int cmd_blobs(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.n < 1 || c.k < 1 || c.n < c.k) throw ParameterError("blobs requires n >= k >= 1");
    const auto blobs = make_blobs(c.n, c.d, c.k, c.stddev, c.seed);
    std::ostringstream data;
    write_csv(data, blobs.points, c.header);
    std::vector<PendingFile> files{{c.output, data.str()}};
    if (!c.truth.empty()) files.push_back({c.truth, labels_text(blobs.labels)});
    write_all(files, out);
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Sorting-based clustering: fit, predict, explain, evaluate"};
  app.require_subcommand(1);

  auto add_fit_params = [&](CLI::App* sub) {
    sub->add_option("--radius", c.radius, "Aggregation tolerance (scaled by the median extend)");
    sub->add_option("--minpts", c.min_pts, "Minimum cluster size");
    sub->add_option("--scale", c.scale, "Distance-merge multiplier in [1, 2]");
    sub->add_option("--merge", c.merge, "Group merging: distance | density");
    sub->add_option("--outliers", c.outliers, "Small clusters: reassign | separate");
    sub->add_option("--mext", c.mext, "Radius scale: norm (median point norm) | interval (median |score|)");
  };

  auto* fit_cmd = app.add_subcommand("fit", "Cluster a CSV file");
  fit_cmd->add_option("--input", c.input, "Input CSV")->required();
  fit_cmd->add_option("--output", c.output, "Labels file (default: stdout)");
  fit_cmd->add_option("--model", c.model, "Write the fitted model as JSON");
  fit_cmd->add_option("--plot-data", c.plot_data, "Write principal coordinates, group and cluster per point");
  fit_cmd->add_flag("--header", c.header, "Input has a header row");
  fit_cmd->add_flag("--drop-bad-rows", c.drop_bad_rows, "Skip malformed rows");
  fit_cmd->add_flag("--stats", c.stats, "Print aggregation and merging statistics");
  add_fit_params(fit_cmd);

  auto* predict_cmd = app.add_subcommand("predict", "Assign new points with a fitted model");
  predict_cmd->add_option("--model", c.model, "Model JSON")->required();
  predict_cmd->add_option("--input", c.input, "Query CSV")->required();
  predict_cmd->add_option("--output", c.output, "Labels file (default: stdout)");
  predict_cmd->add_flag("--header", c.header, "Input has a header row");
  predict_cmd->add_flag("--drop-bad-rows", c.drop_bad_rows, "Skip malformed rows");

  auto* explain_cmd = app.add_subcommand("explain", "Explain a fitted model or point assignments");
  explain_cmd->add_option("--model", c.model, "Model JSON")->required();
  explain_cmd->add_option("--index", c.index, "Row index of a data point");
  explain_cmd->add_option("--index2", c.index2, "Row index of a second data point");
  explain_cmd->add_option("--output", c.output, "Report file (default: stdout)");
  explain_cmd->add_flag("--json", c.json, "Emit the structured report as JSON");

  auto* eval_cmd = app.add_subcommand("eval", "Compare two label files");
  eval_cmd->add_option("--truth", c.truth, "Reference labels")->required();
  eval_cmd->add_option("--pred", c.pred, "Predicted labels")->required();
  eval_cmd->add_option("--metric", c.metric, "ari | ami | both");
  eval_cmd->add_option("--output", c.output, "Result file (default: stdout)");

  auto* probe_cmd = app.add_subcommand("probe", "Tabulate the Gaussian aggregation-efficiency model");
  probe_cmd->add_option("--c", c.grid_c, "Window centers")->delimiter(',');
  probe_cmd->add_option("--R", c.grid_R, "Radii")->delimiter(',');
  probe_cmd->add_option("--s", c.grid_s, "Elongations")->delimiter(',');
  probe_cmd->add_option("--d", c.grid_d, "Dimensions (>= 2)")->delimiter(',');
  probe_cmd->add_option("--output", c.output, "Table file (default: stdout)");

  auto* blobs_cmd = app.add_subcommand("blobs", "Generate isotropic Gaussian blobs");
  blobs_cmd->add_option("--n", c.n, "Number of points");
  blobs_cmd->add_option("--d", c.d, "Number of features");
  blobs_cmd->add_option("--k", c.k, "Number of blobs");
  blobs_cmd->add_option("--std", c.stddev, "Standard deviation per coordinate");
  blobs_cmd->add_option("--seed", c.seed, "Random seed");
  blobs_cmd->add_option("--output", c.output, "Data CSV (default: stdout)");
  blobs_cmd->add_option("--truth", c.truth, "Ground-truth labels file");
  blobs_cmd->add_flag("--header", c.header, "Write a header row f0,...,f{d-1}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    c.threads = threads_from_env();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (fit_cmd->parsed()) return cmd_fit(c, out, err);
  if (predict_cmd->parsed()) return cmd_predict(c, out, err);
  if (explain_cmd->parsed()) return cmd_explain(c, out, err);
  if (eval_cmd->parsed()) return cmd_eval(c, out, err);
  if (probe_cmd->parsed()) return cmd_probe(c, out, err);
  return cmd_blobs(c, out, err);
}

}  // namespace sortclust::cli
