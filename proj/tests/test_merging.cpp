#include "doctest.h"
#include "oracles.hpp"

#include "sortclust/disjoint_set.hpp"
#include "sortclust/merging.hpp"

#include <random>

using namespace sortclust;

namespace {

PreparedData<double> line(std::vector<double> xs) {
  Matrix<double> x(static_cast<Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) x(static_cast<Index>(i), 0) = xs[i];
  return oracle::manual_prepared(x, Vector<double>::Ones(1));
}

struct Starts {
  Vector<double> scores;
  RowMatrix<double> points;
};

Starts starts_1d(std::vector<double> xs) {
  Starts s;
  s.scores.resize(static_cast<Index>(xs.size()));
  s.points.resize(static_cast<Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s.scores(static_cast<Index>(i)) = xs[i];
    s.points(static_cast<Index>(i), 0) = xs[i];
  }
  return s;
}

Starts starts_of(const std::vector<Group>& groups, const PreparedData<double>& p) {
  Starts s;
  s.scores.resize(static_cast<Index>(groups.size()));
  s.points.resize(static_cast<Index>(groups.size()), p.dim());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    s.scores(static_cast<Index>(g)) = p.scores(groups[g].start);
    s.points.row(static_cast<Index>(g)) = p.centered.row(groups[g].start);
  }
  return s;
}

}  // namespace

TEST_CASE("distance merge examples") {
  auto s = starts_1d({0, 1.2, 5.0});
  const auto g = distance_merge(s.scores, s.points, 1.0, 1.5);
  CHECK(g.num_groups == 3);
  CHECK(g.edges == std::vector<Edge>{{0, 1}});

  auto one = starts_1d({4.0});
  CHECK(distance_merge(one.scores, one.points, 1.0, 1.5).edges.empty());

  auto tie = starts_1d({0, 1.5});
  CHECK(distance_merge(tie.scores, tie.points, 1.0, 1.5).edges == std::vector<Edge>{{0, 1}});
  auto gap = starts_1d({0, 1.5000001});
  CHECK(distance_merge(gap.scores, gap.points, 1.0, 1.5).edges.empty());
}

TEST_CASE("scale outside [1, 2] is rejected") {
  auto s = starts_1d({0, 1});
  CHECK_THROWS_AS(distance_merge(s.scores, s.points, 1.0, 0.99), ParameterError);
  CHECK_THROWS_AS(distance_merge(s.scores, s.points, 1.0, 2.01), ParameterError);
  CHECK_NOTHROW(distance_merge(s.scores, s.points, 1.0, 1.0));
  CHECK_NOTHROW(distance_merge(s.scores, s.points, 1.0, 2.0));
}

TEST_CASE("density merge hand example") {
  const auto p = line({0, 0.6, 0.7, 0.9, 1.5});
  const auto a = aggregate(p, 1.0);
  REQUIRE(a.groups.size() == 2);
  CHECK(a.groups[0].members == std::vector<Index>{0, 1, 2, 3});
  CHECK(a.groups[1].start == 4);
  // union [-1, 2.5]: 5 points over length 3.5; lens [0.5, 1]: 3 points over 0.5.
  CHECK(density_criterion(5, 3, 1.5, 1.0, 1));
  const auto g = density_merge(a.groups, p, 1.0);
  CHECK(g.edges == std::vector<Edge>{{0, 1}});
}

TEST_CASE("density criterion edge cases") {
  CHECK_FALSE(density_criterion(5, 0, 1.0, 1.0, 2));
  CHECK_FALSE(density_criterion(0, 0, 1.0, 1.0, 2));
  CHECK_FALSE(density_criterion(5, 5, 2.0, 1.0, 2));
  // Identical balls: the densities coincide and the inequality is inclusive.
  CHECK(density_criterion(7, 7, 0.0, 1.0, 3));
  // d = 1, dist = 1: union 3, lens 1, so count_union <= 3 * count_inter.
  CHECK(density_criterion(3, 1, 1.0, 1.0, 1));
  CHECK_FALSE(density_criterion(4, 1, 1.0, 1.0, 1));
}

TEST_CASE("no edge when nothing lies in the lens") {
  std::vector<double> xs(10, 0.0);
  xs.insert(xs.end(), 10, 1.5);
  const auto p = line(xs);
  const auto a = aggregate(p, 1.0);
  REQUIRE(a.groups.size() == 2);
  CHECK(density_merge(a.groups, p, 1.0).edges.empty());
}

TEST_CASE("geometric and members-only counting differ") {
  // q lies in the lens of groups {a} and {b} but was claimed earlier by c.
  Matrix<double> x(4, 2);
  x << 0.5, 1.2,  // c
      0.6, 0.0,   // a
      0.9, 0.4,   // q
      1.7, 0.0;   // b
  const auto p = oracle::manual_prepared(x, Vector<double>::Unit(2, 0));
  const auto a = aggregate(p, 1.0);
  REQUIRE(a.groups.size() == 3);
  CHECK(a.groups[0].members == std::vector<Index>{0, 2});
  const auto geo = detail::count_window(p, a.groups[1].start, a.groups[2].start, 1.0);
  const auto mem = detail::count_members(p, a.groups[1], a.groups[2], 1.0);
  CHECK(geo == std::pair<std::int64_t, std::int64_t>{3, 1});
  CHECK(mem == std::pair<std::int64_t, std::int64_t>{2, 0});
  CHECK(oracle::edge_set(density_merge(a.groups, p, 1.0)).count({1, 2}) == 1);
  CHECK(oracle::edge_set(density_merge(a.groups, p, 1.0, {DensityCounting::members_only, 0})).count({1, 2}) == 0);
  CHECK(oracle::edge_set(density_merge(a.groups, p, 1.0)) == oracle::brute_density_edges(a.groups, p, 1.0));
}

TEST_CASE("pruned merges equal brute force on random data") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> rad(0.05, 0.8);
  std::uniform_real_distribution<double> scl(1.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 250);
    const Index d = 1 + static_cast<Index>(rng() % 6);
    const auto p = prepare(oracle::random_points(rng, n, d));
    const double R = rad(rng) * p.mext;
    const double scale = scl(rng);
    const auto a = aggregate(p, R);
    const auto s = starts_of(a.groups, p);

    const auto dist = distance_merge(s.scores, s.points, R, scale);
    CHECK(oracle::edge_set(dist) == oracle::brute_distance_edges(s.points, R, scale));
    CHECK(oracle::edge_set(dist).size() == dist.edges.size());

    const auto dens = density_merge(a.groups, p, R);
    CHECK(oracle::edge_set(dens) == oracle::brute_density_edges(a.groups, p, R));
    const auto members = density_merge(a.groups, p, R, {DensityCounting::members_only, 0});
    CHECK(oracle::edge_set(members) == oracle::brute_density_edges(a.groups, p, R, true));

    const auto threaded = density_merge(a.groups, p, R, {DensityCounting::geometric, 4});
    CHECK(threaded.edges == dens.edges);
    for (const auto& [i, j] : dens.edges) CHECK(i < j);
  }
}

TEST_CASE("connected components examples") {
  MergeGraph chain{4, {{0, 1}, {1, 2}}};
  const auto m = connected_components(chain, {1, 1, 1, 1});
  CHECK(m.k == 2);
  CHECK(m.cluster_of_group == std::vector<int>{0, 0, 0, 1});
  CHECK(m.sizes == std::vector<Index>{3, 1});

  MergeGraph none{3, {}};
  const auto iso = connected_components(none, {2, 5, 2});
  CHECK(iso.k == 3);
  // Largest first, ties by smallest group index.
  CHECK(iso.cluster_of_group == std::vector<int>{1, 0, 2});
  CHECK(iso.sizes == std::vector<Index>{5, 2, 2});

  MergeGraph span{4, {{2, 3}, {0, 3}, {1, 2}}};
  const auto one = connected_components(span, {1, 2, 3, 4});
  CHECK(one.k == 1);
  CHECK(one.sizes == std::vector<Index>{10});
}

TEST_CASE("cluster ids order by size then smallest group") {
  MergeGraph g{5, {{0, 4}, {1, 2}}};
  const auto m = connected_components(g, {1, 1, 1, 5, 1});
  CHECK(m.cluster_of_group == std::vector<int>{1, 2, 2, 0, 1});
  CHECK(m.sizes == std::vector<Index>{5, 2, 2});
}

TEST_CASE("canonical map keeps outliers") {
  const auto m = canonical_cluster_map({7, kOutlier, 3, 7}, {1, 4, 2, 2});
  CHECK(m.cluster_of_group == std::vector<int>{0, kOutlier, 1, 0});
  CHECK(m.sizes == std::vector<Index>{3, 2});
  CHECK(m.k == 2);
}

TEST_CASE("disjoint set") {
  DisjointSet ds(6);
  CHECK(ds.unite(0, 1));
  CHECK(ds.unite(2, 3));
  CHECK_FALSE(ds.unite(1, 0));
  CHECK(ds.unite(1, 3));
  CHECK(ds.find(0) == ds.find(2));
  CHECK(ds.find(4) != ds.find(5));
  CHECK(ds.size() == 6);
}
