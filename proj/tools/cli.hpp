#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sortclust::cli {

struct CliConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string model;
  std::string plot_data;
  std::string truth;
  std::string pred;
  double radius = 0.5;
  long long min_pts = 0;
  double scale = 1.5;
  std::string merge = "distance";
  std::string outliers = "reassign";
  std::string mext = "norm";
  bool header = false;
  bool drop_bad_rows = false;
  bool stats = false;
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<long long> index;
  std::optional<long long> index2;
  std::string metric = "both";
  // blobs
  long long n = 1000;
  long long d = 2;
  long long k = 3;
  double stddev = 1.0;
  // probe grids
  std::vector<double> grid_c{0.0};
  std::vector<double> grid_R{0.5};
  std::vector<double> grid_s{0.3};
  std::vector<int> grid_d{2};
  unsigned threads = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

int cmd_fit(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_predict(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_explain(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_probe(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_blobs(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. SORTCLUST_THREADS caps internal parallelism.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sortclust::cli
