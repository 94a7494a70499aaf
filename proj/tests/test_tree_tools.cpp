#include <doctest.h>

#include <cmath>
#include <random>
#include <map>
#include <set>

#include "hyperd1/tree_tools.hpp"
#include "support.hpp"

using namespace hyperd1;
using testsupport::errorCodeOf;

namespace {

std::vector<PointIndex> iota(std::size_t n) {
  std::vector<PointIndex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

void checkWalk(const WeightedGraph& tree, const DoublingWalk& w) {
  const auto& seq = w.sequence;
  CHECK(std::set<PointIndex>(seq.begin(), seq.end()) ==
        std::set<PointIndex>(tree.vertices().begin(), tree.vertices().end()));
  std::map<Edge, int> uses;
  double length = 0.0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const Edge e(seq[i - 1], seq[i]);
    CHECK(std::binary_search(tree.edges().begin(), tree.edges().end(), e));
    ++uses[e];
    length += tree.space().distance(seq[i - 1], seq[i]);
  }
  for (const Edge& e : tree.edges()) {
    CHECK(uses[e] >= 1);
    CHECK(uses[e] <= 2);
  }
  CHECK(w.length == doctest::Approx(length).epsilon(1e-12));
  CHECK(w.length <= 2.0 * tree.totalLength() + 1e-12);
  const auto counts = edgeTraversals(w);
  REQUIRE(counts.size() == tree.edges().size());
  for (std::size_t i = 0; i < counts.size(); ++i) CHECK(counts[i] == static_cast<std::size_t>(uses[tree.edges()[i]]));
}

}  // namespace

TEST_CASE("walk examples") {
  auto s = MetricSpace::realLine({0, 1, 2, 3});
  const auto single = doublingWalk(WeightedGraph(s, {2}, {}));
  CHECK(single.sequence == std::vector<PointIndex>{2});
  CHECK(single.length == 0.0);

  const WeightedGraph path(s, {0, 1, 2}, {{0, 1}, {1, 2}});
  const auto pw = doublingWalk(path);
  CHECK(pw.sequence == std::vector<PointIndex>{0, 1, 2});
  CHECK(pw.length == 2.0);

  // star: x=0, c=1, y=2, z=3
  const WeightedGraph star(s, {0, 1, 2, 3}, {{0, 1}, {1, 2}, {1, 3}});
  const auto sw = doublingWalk(star);
  CHECK(sw.sequence == std::vector<PointIndex>{0, 1, 2, 1, 3});
  checkWalk(star, sw);
}

TEST_CASE("non-trees are rejected") {
  auto s = MetricSpace::realLine({0, 1, 2, 3});
  CHECK(errorCodeOf([&] { doublingWalk(WeightedGraph(s, {}, {})); }) == ErrorCode::NotATree);
  CHECK(errorCodeOf([&] { doublingWalk(WeightedGraph(s, {0, 1, 2}, {{0, 1}})); }) == ErrorCode::NotATree);
  CHECK(errorCodeOf([&] { doublingWalk(WeightedGraph(s, {0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}})); }) ==
        ErrorCode::NotATree);
  CHECK(errorCodeOf([&] { doublingWalk(WeightedGraph(s, {0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 2}})); }) ==
        ErrorCode::NotATree);
}

TEST_CASE("walks on random trees") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 40;
    auto s = MetricSpace::euclidean(2, testsupport::randomPoints(rng, n, 2));
    const WeightedGraph tree(s, iota(n), testsupport::randomTreeEdges(rng, n));
    checkWalk(tree, doublingWalk(tree));
  }
}

TEST_CASE("covering number examples") {
  auto s = MetricSpace::realLine({0, 1, 2});
  CHECK(coveringNumber(PointSet(s, {1}), 0.01).count == 1);
  const auto c = coveringNumber(PointSet(s, {0, 1, 2}), 1.0);
  CHECK(c.count == 2);
  CHECK(c.exact);
  CHECK(errorCodeOf([&] { coveringNumber(PointSet(s, {0}), 0.0); }) == ErrorCode::InvalidArgument);

  // same line as a matrix goes through the clique-cover search
  auto m = MetricSpace::finiteMatrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(coveringNumber(PointSet(m, {0, 1, 2}), 1.0).count == 2);
  CHECK(coveringNumber(PointSet(m, {0, 1, 2}), 2.0).count == 1);
  CHECK(coveringNumber(PointSet(m, {0, 1, 2}), 0.5).count == 3);
}

TEST_CASE("2eps-separated sets need one block per point") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 12;
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({double(i % 4) * 1.0, double(i / 4) * 1.0 + 0.1 * double(t % 3)});
    auto s = MetricSpace::euclidean(2, pts);
    const auto c = coveringNumber(PointSet(s, iota(n)), 0.5);
    CHECK(c.exact);
    CHECK(c.count == n);
  }
}

TEST_CASE("covering number is monotone in epsilon") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 5 + rng() % 25;
    auto s = MetricSpace::euclidean(2, testsupport::randomPoints(rng, n, 2));
    PointSet p(s, iota(n));
    std::size_t prev = 0;
    for (double eps = 1.5; eps > 0.01; eps *= 0.7) {
      const auto c = coveringNumber(p, eps);
      CHECK(c.exact == (n <= kExactCoverCap));
      if (c.exact) CHECK(c.count >= prev);
      prev = c.count;
    }
  }
}

TEST_CASE("dimension estimates") {
  auto one = MetricSpace::realLine({0.25});
  const std::vector<double> ladder{0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  CHECK(boxDimensionEstimate(PointSet(one, {0}), ladder).slope == 0.0);

  std::vector<double> xs(1025);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = double(i) / 1024.0;
  auto seg = MetricSpace::realLine(xs);
  const auto lineEst = boxDimensionEstimate(PointSet(seg, iota(xs.size())), ladder);
  CHECK(lineEst.slope >= 0.85);
  CHECK(lineEst.slope <= 1.15);

  auto grid = [](std::size_t g) {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) pts.push_back({double(i) / double(g - 1), double(j) / double(g - 1)});
    return MetricSpace::euclidean(2, pts);
  };

  // A 33x33 grid has spacing 1/32: below that scale every point is its own
  // block, so counts saturate at 1089 and the full ladder cannot see area.
  auto coarse = grid(33);
  const auto sat = boxDimensionEstimate(PointSet(coarse, iota(33 * 33)), ladder);
  CHECK(sat.counts[4].count == 1089);
  CHECK(sat.counts[6].count == 1089);
  CHECK(sat.slope < 1.0);

  // Resolved scales of a finer grid.
  auto fine = grid(129);
  const std::vector<double> resolved{0.25, 0.125, 0.0625, 0.03125};
  const auto planeEst = boxDimensionEstimate(PointSet(fine, iota(129 * 129)), resolved);
  CHECK(planeEst.slope >= 1.7);
  CHECK(planeEst.slope <= 2.3);

  CHECK(errorCodeOf([&] { boxDimensionEstimate(PointSet(one, {0}), std::vector<double>{0.5, 0.25}); }) ==
        ErrorCode::DegenerateLadder);
  CHECK(errorCodeOf([&] {
          boxDimensionEstimate(PointSet(one, {0}), std::vector<double>{0.5, 0.25, 0.25});
        }) == ErrorCode::DegenerateLadder);
  CHECK(errorCodeOf([&] {
          boxDimensionEstimate(PointSet(one, {0}), std::vector<double>{0.5, 0.25, -1.0});
        }) == ErrorCode::DegenerateLadder);
}
