#include "doctest.h"

#include "cli.hpp"

#include "sortclust/csv.hpp"
#include "sortclust/metrics.hpp"

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sortclust;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sortclust");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// A fresh directory per test case, removed on exit.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("sortclust_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  std::size_t file_count() const {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(path), fs::directory_iterator()));
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

LabelVector labels_in(const std::string& path) { return read_labels(fs::path(path)); }

}  // namespace

TEST_CASE("fit recovers four blobs") {
  TempDir dir;
  REQUIRE(run({"blobs", "--n", "1000", "--d", "2", "--k", "4", "--std", "0.5", "--seed", "7", "--output",
               dir / "x.csv", "--truth", dir / "truth.txt"})
              .code == 0);
  const auto r = run({"fit", "--input", dir / "x.csv", "--radius", "0.3", "--minpts", "5", "--output",
                      dir / "labels.txt", "--model", dir / "model.json", "--stats"});
  REQUIRE(r.code == 0);
  const auto labels = labels_in(dir / "labels.txt");
  CHECK(labels.size() == 1000);
  CHECK(std::set<int>(labels.begin(), labels.end()).size() == 4);
  CHECK(ari(labels_in(dir / "truth.txt"), labels) >= 0.95);
  CHECK(r.out.find("comparisons were required") != std::string::npos);
  CHECK(r.out.find("* cluster 3 : ") != std::string::npos);

  const auto e = run({"eval", "--truth", dir / "truth.txt", "--pred", dir / "labels.txt"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("ARI: ", 0) == 0);
  CHECK(e.out.find("\nAMI: ") != std::string::npos);
}

TEST_CASE("fit writes labels to stdout and is deterministic") {
  TempDir dir;
  REQUIRE(run({"blobs", "--n", "500", "--d", "3", "--k", "3", "--seed", "2", "--output", dir / "x.csv"}).code == 0);
  for (const char* merge : {"distance", "density"}) {
    const std::vector<std::string> args{"fit", "--input", dir / "x.csv", "--radius", "0.2", "--merge", merge,
                                        "--minpts", "4", "--model", dir / "m.json"};
    const auto a = run(args);
    const auto model_a = slurp(dir / "m.json");
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(model_a == slurp(dir / "m.json"));
    std::istringstream in(a.out);
    CHECK(read_labels(in).size() == 500);
  }
}

TEST_CASE("thread count does not change results") {
  TempDir dir;
  REQUIRE(run({"blobs", "--n", "800", "--d", "4", "--k", "5", "--seed", "3", "--output", dir / "x.csv"}).code == 0);
  const std::vector<std::string> args{"fit", "--input", dir / "x.csv", "--radius", "0.25", "--merge", "density"};
  setenv("SORTCLUST_THREADS", "1", 1);
  const auto one = run(args);
  setenv("SORTCLUST_THREADS", "4", 1);
  const auto four = run(args);
  setenv("SORTCLUST_THREADS", "many", 1);
  const auto bad = run(args);
  unsetenv("SORTCLUST_THREADS");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
}

TEST_CASE("plot data") {
  TempDir dir;
  REQUIRE(run({"blobs", "--n", "50", "--d", "3", "--k", "2", "--seed", "1", "--output", dir / "x.csv"}).code == 0);
  REQUIRE(run({"fit", "--input", dir / "x.csv", "--output", dir / "l.txt", "--plot-data", dir / "p.csv"}).code == 0);
  std::istringstream plot(slurp(dir / "p.csv"));
  std::string line;
  std::getline(plot, line);
  CHECK(line == "pc1,pc2,group,cluster");
  int rows = 0;
  while (std::getline(plot, line)) ++rows;
  CHECK(rows == 50);
}

TEST_CASE("errors exit with 2 and write nothing") {
  TempDir dir;
  spit(dir / "empty.csv", "");
  spit(dir / "bad.csv", "1,2\n3,x\n");
  spit(dir / "ok.csv", "0,0\n1,1\n5,5\n");
  const auto outputs = [&](const std::string& input, std::vector<std::string> extra) {
    std::vector<std::string> args{"fit", "--input", input, "--output", dir / "l.txt", "--model", dir / "m.json",
                                  "--plot-data", dir / "p.csv"};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  const std::size_t before = dir.file_count();

  auto r = outputs(dir / "empty.csv", {});
  CHECK(r.code == 2);
  CHECK(r.err.find("no data rows") != std::string::npos);
  r = outputs(dir / "bad.csv", {});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(outputs(dir / "missing.csv", {}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--radius", "-1"}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--radius", "0"}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--scale", "2.5"}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--minpts", "-3"}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--merge", "nearest"}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--outliers", "drop"}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--mext", "huge"}).code == 2);
  CHECK(outputs(dir / "ok.csv", {"--radius", "abc"}).code == 2);
  CHECK(dir.file_count() == before);

  CHECK(run({"fit"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"cluster"}).code == 2);
  CHECK(run({"fit", "--input", dir / "ok.csv", "--output", dir / "no_dir/l.txt"}).code == 2);
  CHECK(dir.file_count() == before);
}

TEST_CASE("help exits with 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fit") != std::string::npos);
  CHECK(run({"fit", "--help"}).code == 0);
}

TEST_CASE("header and dropped rows") {
  TempDir dir;
  spit(dir / "h.csv", "a,b\n0,0\n0.1,0\nNA,1\n5,5\n");
  auto r = run({"fit", "--input", dir / "h.csv", "--header", "--drop-bad-rows"});
  CHECK(r.code == 0);
  CHECK(r.err.find("dropped 1 malformed rows") != std::string::npos);
  std::istringstream in(r.out);
  CHECK(read_labels(in).size() == 3);
  CHECK(run({"fit", "--input", dir / "h.csv", "--header"}).code == 2);
}

TEST_CASE("predict reproduces training labels and checks dimensions") {
  TempDir dir;
  REQUIRE(run({"blobs", "--n", "600", "--d", "2", "--k", "3", "--std", "0.3", "--seed", "5", "--output",
               dir / "x.csv"})
              .code == 0);
  REQUIRE(run({"fit", "--input", dir / "x.csv", "--radius", "0.3", "--output", dir / "fit.txt", "--model",
               dir / "m.json"})
              .code == 0);
  REQUIRE(run({"predict", "--model", dir / "m.json", "--input", dir / "x.csv", "--output", dir / "pred.txt"}).code == 0);
  const auto fitted = labels_in(dir / "fit.txt");
  const auto predicted = labels_in(dir / "pred.txt");
  REQUIRE(fitted.size() == predicted.size());
  std::size_t agree = 0;
  for (std::size_t i = 0; i < fitted.size(); ++i) agree += fitted[i] == predicted[i];
  CHECK(agree >= fitted.size() * 99 / 100);

  spit(dir / "three.csv", "1,2,3\n");
  const auto r = run({"predict", "--model", dir / "m.json", "--input", dir / "three.csv", "--output", dir / "q.txt"});
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(dir / "q.txt"));
  spit(dir / "broken.json", "{");
  CHECK(run({"predict", "--model", dir / "broken.json", "--input", dir / "x.csv"}).code == 2);
  CHECK(run({"predict", "--model", dir / "nothing.json", "--input", dir / "x.csv"}).code == 2);
}

TEST_CASE("explain in text and JSON") {
  TempDir dir;
  spit(dir / "chain.csv", "0\n1\n2\n");
  REQUIRE(run({"fit", "--input", dir / "chain.csv", "--radius", "0.6", "--scale", "2", "--output", dir / "l.txt",
               "--model", dir / "m.json"})
              .code == 0);
  const auto summary = run({"explain", "--model", dir / "m.json"});
  CHECK(summary.code == 0);
  CHECK(summary.out.rfind("A clustering of 3 data points with 1 feature", 0) == 0);
  const auto point = run({"explain", "--model", dir / "m.json", "--index", "1"});
  CHECK(point.out.find("The data point 1 is in group 1") != std::string::npos);
  const auto pair = run({"explain", "--model", dir / "m.json", "--index", "0", "--index2", "2"});
  CHECK(pair.out.find("0 <-> 1 <-> 2") != std::string::npos);
  const auto json = run({"explain", "--model", dir / "m.json", "--index", "0", "--index2", "2", "--json"});
  CHECK(json.code == 0);
  CHECK(json.out.find("\"path\"") != std::string::npos);
  CHECK(json.out.find("\"template_version\": 1") != std::string::npos);

  CHECK(run({"explain", "--model", dir / "m.json", "--index", "3"}).code == 2);
  CHECK(run({"explain", "--model", dir / "m.json", "--index", "-1"}).code == 2);
  CHECK(run({"explain", "--model", dir / "m.json", "--index2", "1"}).code == 2);
}

TEST_CASE("eval") {
  TempDir dir;
  spit(dir / "a.txt", "0\n1\n0\n1\n");
  spit(dir / "b.txt", "0\n0\n1\n1\n");
  spit(dir / "short.txt", "0\n1\n");
  CHECK(run({"eval", "--truth", dir / "a.txt", "--pred", dir / "a.txt"}).out == "ARI: 1.000000\nAMI: 1.000000\n");
  CHECK(run({"eval", "--truth", dir / "a.txt", "--pred", dir / "b.txt", "--metric", "ari"}).out == "ARI: -0.500000\n");
  CHECK(run({"eval", "--truth", dir / "a.txt", "--pred", dir / "b.txt", "--metric", "ami"}).out.rfind("AMI: -0.5", 0) ==
        0);
  CHECK(run({"eval", "--truth", dir / "a.txt", "--pred", dir / "short.txt"}).code == 2);
  CHECK(run({"eval", "--truth", dir / "a.txt", "--pred", dir / "b.txt", "--metric", "nmi"}).code == 2);
  CHECK(run({"eval", "--truth", dir / "a.txt", "--pred", dir / "missing.txt"}).code == 2);
}

TEST_CASE("probe") {
  auto r = run({"probe", "--c", "0", "--R", "0.5", "--s", "0.000001", "--d", "3"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "c,R,s,d,P1,P2,ratio");
  CHECK(std::stod(row.substr(row.rfind(',') + 1)) == doctest::Approx(1.0).epsilon(1e-6));

  r = run({"probe", "--c", "0.5", "--R", "0.4", "--s", "0.3", "--d", "2,4,8,16"});
  REQUIRE(r.code == 0);
  std::istringstream grid(r.out);
  std::getline(grid, header);
  double previous = 1.0;
  int rows = 0;
  while (std::getline(grid, row)) {
    const double ratio = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(ratio <= previous + 1e-12);
    previous = ratio;
    ++rows;
  }
  CHECK(rows == 4);
  CHECK(run({"probe", "--d", "1"}).code == 2);
  CHECK(run({"probe", "--R", "-1"}).code == 2);
}

TEST_CASE("blobs") {
  TempDir dir;
  const auto a = run({"blobs", "--n", "30", "--d", "3", "--k", "2", "--seed", "11", "--header"});
  const auto b = run({"blobs", "--n", "30", "--d", "3", "--k", "2", "--seed", "11", "--header"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("f0,f1,f2\n", 0) == 0);
  CHECK(run({"blobs", "--n", "30", "--d", "3", "--k", "2", "--seed", "12", "--header"}).out != a.out);

  REQUIRE(run({"blobs", "--n", "40", "--d", "2", "--k", "4", "--std", "0", "--seed", "1", "--output", dir / "x.csv",
               "--truth", dir / "t.txt"})
              .code == 0);
  const auto points = read_csv(fs::path(dir / "x.csv")).points;
  const auto truth = labels_in(dir / "t.txt");
  for (Index i = 0; i < points.rows(); ++i)
    for (Index j = 0; j < points.rows(); ++j)
      if (truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)])
        CHECK(points.row(i) == points.row(j));

  CHECK(run({"blobs", "--n", "2", "--k", "3"}).code == 2);
  CHECK(run({"blobs", "--n", "0", "--k", "0"}).code == 2);
  CHECK(run({"blobs", "--std", "-1"}).code == 2);
}
