#pragma once

// Independent reference implementations and random instance generators
// shared by the unit and acceptance tests. Nothing here calls the solvers
// under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "hyperd1/error.hpp"
#include "hyperd1/metric_core.hpp"

namespace testsupport {

using hyperd1::PointIndex;
using hyperd1::SpacePtr;

template <typename F>
hyperd1::ErrorCode errorCodeOf(F&& f) {
  try {
    f();
  } catch (const hyperd1::Error& e) {
    return e.code();
  }
  throw std::logic_error("expected hyperd1::Error");
}

/// Minimum spanning tree weight by Kruskal over a dense matrix restricted to
/// `verts`.
inline double kruskal(const std::vector<std::vector<double>>& d, const std::vector<std::size_t>& verts) {
  struct E {
    double w;
    std::size_t a, b;
  };
  std::vector<E> es;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) es.push_back({d[verts[i]][verts[j]], i, j});
  std::sort(es.begin(), es.end(), [](const E& x, const E& y) { return x.w < y.w; });
  std::vector<std::size_t> parent(verts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  double total = 0.0;
  for (const E& e : es) {
    const std::size_t ra = root(e.a), rb = root(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      total += e.w;
    }
  }
  return total;
}

/// Minimum over admissible forests by assigning every vertex a block label
/// (restricted growth strings). Optional vertices may also stay unused.
/// Every block must hold an A-vertex and a B-vertex; each block costs its MST.
inline double forestOracle(const std::vector<std::vector<double>>& d, const std::vector<bool>& inA,
                           const std::vector<bool>& inB, const std::vector<bool>& optional) {
  const std::size_t n = d.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> label(n, -1);  // -1 unused
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int blocks) {
    if (i == n) {
      double cost = 0.0;
      for (int blk = 0; blk < blocks; ++blk) {
        std::vector<std::size_t> verts;
        bool hasA = false, hasB = false;
        for (std::size_t v = 0; v < n; ++v)
          if (label[v] == blk) {
            verts.push_back(v);
            hasA = hasA || inA[v];
            hasB = hasB || inB[v];
          }
        if (!hasA || !hasB) return;
        cost += kruskal(d, verts);
      }
      best = std::min(best, cost);
      return;
    }
    if (optional[i]) {
      label[i] = -1;
      rec(i + 1, blocks);
    }
    for (int blk = 0; blk <= blocks; ++blk) {
      label[i] = blk;
      rec(i + 1, std::max(blocks, blk + 1));
    }
    label[i] = -1;
  };
  rec(0, 0);
  return best;
}

/// d¹ on the line by enumerating every set partition (not only consecutive
/// ones) of the distinct coordinates of A ∪ B. A block costs its span.
inline double linePartitionOracle(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pts;
  std::vector<bool> inA, inB;
  auto add = [&](double x, bool isA) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i] == x) {
        (isA ? inA : inB)[i] = true;
        return;
      }
    pts.push_back(x);
    inA.push_back(isA);
    inB.push_back(!isA);
  };
  for (double x : a) add(x, true);
  for (double x : b) add(x, false);
  std::vector<std::vector<double>> d(pts.size(), std::vector<double>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) d[i][j] = std::abs(pts[i] - pts[j]);
  return forestOracle(d, inA, inB, std::vector<bool>(pts.size(), false));
}

/// Shortest-path closure of random edge weights in [1, 10]: always a metric.
inline std::vector<std::vector<double>> randomMetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> w(1.0, 10.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline std::vector<std::vector<double>> randomPoints(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& c : p) c = u(rng);
  return pts;
}

inline std::vector<std::vector<double>> denseDistances(const hyperd1::MetricSpace& s) {
  std::vector<std::vector<double>> d(s.size(), std::vector<double>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) d[i][j] = s.distance(i, j);
  return d;
}

/// Nonempty random subset of {0..n-1}.
inline std::vector<PointIndex> randomSubset(std::mt19937_64& rng, std::size_t n) {
  std::vector<PointIndex> out;
  while (out.empty()) {
    out.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1) out.push_back(i);
  }
  return out;
}

/// Random labelled tree on n vertices: vertex i > 0 attaches to a uniform
/// earlier vertex, then labels are shuffled.
inline std::vector<hyperd1::Edge> randomTreeEdges(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<hyperd1::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.emplace_back(perm[i], perm[pick(rng)]);
  }
  return edges;
}

}  // namespace testsupport
