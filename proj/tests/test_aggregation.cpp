#include "doctest.h"
#include "oracles.hpp"

#include "sortclust/aggregation.hpp"

#include <limits>
#include <random>

using namespace sortclust;

namespace {

PreparedData<double> line(std::vector<double> xs) {
  Matrix<double> x(static_cast<Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) x(static_cast<Index>(i), 0) = xs[i];
  return oracle::manual_prepared(x, Vector<double>::Ones(1));
}

std::vector<std::vector<Index>> members(const Aggregation& a) {
  std::vector<std::vector<Index>> out;
  for (const auto& g : a.groups) out.push_back(g.members);
  return out;
}

}  // namespace

TEST_CASE("one-dimensional hand trace") {
  const auto p = line({0, 0.5, 1.1, 5.0});
  const auto a = aggregate(p, 0.6);
  CHECK(members(a) == std::vector<std::vector<Index>>{{0, 1}, {2}, {3}});
  CHECK(a.groups[1].start == 2);

  const auto ref = aggregate_reference(p, 0.6);
  CHECK(members(ref) == members(a));
  CHECK(ref.stats.dist_count == 4);
  CHECK(a.stats.dist_count <= ref.stats.dist_count);
}

TEST_CASE("radius beyond the diameter gives one group") {
  const auto p = line({-3, 0, 1, 2, 4});
  const auto a = aggregate(p, 100.0);
  REQUIRE(a.groups.size() == 1);
  CHECK(a.groups[0].members.size() == 5);
}

TEST_CASE("membership need not be contiguous in sorted order") {
  Matrix<double> x(3, 2);
  x << 0, 0, 0.5, 0.9, 0.6, 0;
  const auto p = oracle::manual_prepared(x, Vector<double>::Unit(2, 0));
  const auto a = aggregate(p, 0.7);
  CHECK(members(a) == std::vector<std::vector<Index>>{{0, 2}, {1}});
  CHECK(a.stats.dist_count == 2);
}

TEST_CASE("distance equal to R is inside") {
  const auto p = line({0, 0.5, 1.0});
  const auto a = aggregate(p, 0.5);
  CHECK(members(a) == std::vector<std::vector<Index>>{{0, 1}, {2}});
}

TEST_CASE("invalid radius") {
  const auto p = line({0, 1});
  CHECK_THROWS_AS(aggregate(p, 0.0), ParameterError);
  CHECK_THROWS_AS(aggregate(p, -1.0), ParameterError);
  CHECK_THROWS_AS(aggregate(p, std::numeric_limits<double>::infinity()), ParameterError);
  CHECK_THROWS_AS(aggregate_reference(p, std::nan("")), ParameterError);
}

TEST_CASE("aggregation properties on random data") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> rad(0.05, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 200);
    const Index d = 1 + static_cast<Index>(rng() % 5);
    const auto p = prepare(oracle::random_points(rng, n, d));
    const double R = rad(rng) * std::max(p.mext, 1e-3);
    const auto a = aggregate(p, R);
    const auto ref = aggregate_reference(p, R);

    CHECK(oracle::partition_of(a.groups) == oracle::partition_of(ref.groups));
    CHECK(a.stats.dist_count <= ref.stats.dist_count);
    CHECK(a.stats.dist_count >= n - static_cast<Index>(a.groups.size()));
    CHECK(a.stats.n == n);

    std::vector<int> covered(static_cast<std::size_t>(n), 0);
    for (std::size_t g = 0; g < a.groups.size(); ++g) {
      const auto& grp = a.groups[g];
      CHECK(grp.members.front() == grp.start);
      for (Index m : grp.members) {
        ++covered[static_cast<std::size_t>(m)];
        CHECK((p.centered.row(m) - p.centered.row(grp.start)).norm() <= R + 1e-9);
      }
      for (std::size_t h = g + 1; h < a.groups.size(); ++h)
        CHECK((p.centered.row(grp.start) - p.centered.row(a.groups[h].start)).norm() > R);
      if (g > 0) CHECK(a.groups[g - 1].start < grp.start);
    }
    for (int c : covered) CHECK(c == 1);

    const auto again = aggregate(p, R);
    CHECK(members(again) == members(a));
    CHECK(again.stats.dist_count == a.stats.dist_count);
  }
}

TEST_CASE("group_of_sorted inverts the membership lists") {
  const auto p = line({0, 0.5, 1.1, 5.0});
  const auto a = aggregate(p, 0.6);
  CHECK(group_of_sorted(a.groups, 4) == std::vector<Index>{0, 0, 1, 2});
}

TEST_CASE("effective radius falls back for degenerate data") {
  CHECK(effective_radius(0.5, 4.0) == 2.0);
  CHECK(effective_radius(0.5, 0.0) == 0.5);
}
