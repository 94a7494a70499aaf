#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperd1/hausdorff.hpp"
#include "hyperd1/line_d1.hpp"
#include "hyperd1/steiner_forest.hpp"
#include "support.hpp"

using namespace hyperd1;
using testsupport::errorCodeOf;

namespace {

SpacePtr triangleWithCentroid() {
  const double h = std::sqrt(3.0) / 2.0;
  return MetricSpace::euclidean(2, {{0, 0}, {1, 0}, {0.5, h}, {0.5, h / 3.0}});
}

SpacePtr lineAsMatrix(const std::vector<double>& xs) {
  std::vector<std::vector<double>> d(xs.size(), std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) d[i][j] = std::abs(xs[i] - xs[j]);
  return MetricSpace::finiteMatrix(d);
}

}  // namespace

TEST_CASE("exact solver examples") {
  auto s = MetricSpace::euclidean(2, {{0, 0}, {3, 4}});
  SteinerInstance pair(PointSet(s, {0}), PointSet(s, {1}));
  auto r = d1Exact(pair);
  CHECK(r.value == doctest::Approx(5.0));
  CHECK(r.certificate.graph.edges().size() == 1);
  CHECK(d1BruteForce(pair) == doctest::Approx(5.0));
  CHECK(mstUpperBound(pair).value == doctest::Approx(5.0));

  auto tri = triangleWithCentroid();
  SteinerInstance star(PointSet(tri, {0, 1, 2}), PointSet(tri, {3}));
  r = d1Exact(star);
  CHECK(r.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.certificate.graph.edges().size() == 3);
  CHECK(d1BruteForce(star) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(mstUpperBound(star).value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(hausdorffDistance(star.a(), star.b()) <= r.value);

  auto m = lineAsMatrix({0, 1, 2});
  SteinerInstance embedded(PointSet(m, {0, 2}), PointSet(m, {1}));
  CHECK(d1Exact(embedded).value == 2.0);
  CHECK(d1Exact(embedded).value == d1LineCoordinates(std::vector<double>{0, 2}, std::vector<double>{1}).value);

  auto m4 = lineAsMatrix({0, 1, 10, 11});
  SteinerInstance split(PointSet(m4, {0, 2}), PointSet(m4, {1, 3}));
  CHECK(mstUpperBound(split).value == 2.0);
  CHECK(d1Exact(split).value == 2.0);
}

TEST_CASE("identical sets cost nothing for any pool") {
  auto s = MetricSpace::finiteMatrix({{0, 2, 3}, {2, 0, 4}, {3, 4, 0}});
  SteinerInstance inst(PointSet(s, {0, 1}), PointSet(s, {0, 1}), {2});
  CHECK(d1Exact(inst).value == 0.0);
  CHECK(d1BruteForce(inst) == 0.0);
}

TEST_CASE("steiner pool points shorten the forest") {
  // A = one corner, B = the other two; the centroid as a Steiner point turns
  // a path of length 2 into a star of length sqrt(3).
  auto tri = triangleWithCentroid();
  SteinerInstance noPool(PointSet(tri, {0}), PointSet(tri, {1, 2}));
  SteinerInstance withPool(PointSet(tri, {0}), PointSet(tri, {1, 2}), {3});
  CHECK(d1Exact(noPool).value == doctest::Approx(2.0));
  CHECK(d1Exact(withPool).value == doctest::Approx(std::sqrt(3.0)));
  CHECK(d1BruteForce(withPool) == doctest::Approx(std::sqrt(3.0)));
  const auto cert = d1Exact(withPool).certificate;
  CHECK(cert.graph.hasVertex(3));
  CHECK(mstUpperBound(withPool).value == doctest::Approx(2.0));
}

TEST_CASE("caps") {
  std::mt19937_64 rng(3);
  auto s = MetricSpace::finiteMatrix(testsupport::randomMetric(rng, 20));
  std::vector<PointIndex> many(15);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = i;
  SteinerInstance big(PointSet(s, many), PointSet(s, {15}));
  CHECK(errorCodeOf([&] { d1Exact(big); }) == ErrorCode::CapExceeded);
  CHECK_NOTHROW(d1Exact(big, SolverCaps{16, 16, 8}));
  CHECK(errorCodeOf([&] { d1BruteForce(big); }) == ErrorCode::TooLarge);
  SteinerInstance pooled(PointSet(s, {0}), PointSet(s, {1}), {2, 3, 4});
  CHECK(errorCodeOf([&] { d1Exact(pooled, SolverCaps{14, 2, 8}); }) == ErrorCode::CapExceeded);
  // beyond the terminal cap the upper bound still answers
  const auto ub = mstUpperBound(big, SolverCaps{4, 16, 8});
  CHECK(ub.value >= d1Exact(big, SolverCaps{16, 16, 8}).value - 1e-12);
  CHECK_NOTHROW(validateCertificate(big.a(), big.b(), ub.certificate.graph));
}

TEST_CASE("exact solver matches the forest oracle") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 150; ++t) {
    const bool euclid = t % 2 == 1;
    const std::size_t n = 3 + rng() % 5;
    auto s = euclid ? MetricSpace::euclidean(2, testsupport::randomPoints(rng, n, 2))
                    : MetricSpace::finiteMatrix(testsupport::randomMetric(rng, n));
    std::vector<PointIndex> a, b, pool;
    for (std::size_t i = 0; i < n; ++i) {
      switch (rng() % 4) {
        case 0: a.push_back(i); break;
        case 1: b.push_back(i); break;
        case 2: a.push_back(i); b.push_back(i); break;
        default: pool.push_back(i);
      }
    }
    if (a.empty()) a.push_back(pool.empty() ? 0 : pool.back());
    if (b.empty()) b.push_back(pool.empty() ? n - 1 : pool.front());
    SteinerInstance inst(PointSet(s, a), PointSet(s, b), pool);
    const auto d = testsupport::denseDistances(*s);
    std::vector<bool> inA(n), inB(n), optional(n);
    for (std::size_t i = 0; i < n; ++i) {
      inA[i] = inst.a().contains(i);
      inB[i] = inst.b().contains(i);
      optional[i] = !inA[i] && !inB[i];
    }
    const double oracle = testsupport::forestOracle(d, inA, inB, optional);
    const auto exact = d1Exact(inst);
    CHECK(exact.value == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(d1BruteForce(inst) == doctest::Approx(oracle).epsilon(1e-12));
    const auto cert = validateCertificate(inst.a(), inst.b(), exact.certificate.graph);
    CHECK(cert.totalLength == doctest::Approx(exact.value).epsilon(1e-12));
    CHECK(hausdorffDistance(inst.a(), inst.b()) <= exact.value + 1e-12);
    CHECK(exact.value <= mstUpperBound(inst).value + 1e-12);
  }
}

TEST_CASE("separation lower bound") {
  auto s = MetricSpace::realLine({0, 1, 2, 3, 4, 0.5});
  CHECK(separationLowerBound(PointSet(s, {2}), 0.5) == 0.0);
  CHECK(separationLowerBound(PointSet(s, {0, 1, 2, 3, 4}), 0.5) == 1.0);
  CHECK(errorCodeOf([&] { separationLowerBound(PointSet(s, {0, 5}), 0.5); }) == ErrorCode::NotSeparated);
  CHECK(errorCodeOf([&] { separationLowerBound(PointSet(s, {0}), 0.0); }) == ErrorCode::InvalidArgument);

  // corner points of an 11x11 unit grid, spacing 1, eps = 1/2
  std::vector<std::vector<double>> grid;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) grid.push_back({double(i), double(j)});
  auto g = MetricSpace::euclidean(2, grid);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    std::vector<PointIndex> pick;
    while (pick.size() < 6) {
      const PointIndex p = rng() % grid.size();
      if (std::find(pick.begin(), pick.end(), p) == pick.end()) pick.push_back(p);
    }
    const PointIndex x = pick.back();
    pick.pop_back();
    PointSet a(g, pick);
    const double bound = separationLowerBound(a, 0.5);
    const double exact = d1Exact(SteinerInstance(a, PointSet(g, {x}))).value;
    CHECK(bound <= exact);
    CHECK(static_cast<double>(a.size()) < 1.0 + 2.0 * exact / 0.5);
  }
}
