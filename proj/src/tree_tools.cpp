#include "hyperd1/tree_tools.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <list>
#include <set>
#include <string>

namespace hyperd1 {

namespace {

std::size_t position(std::span<const PointIndex> sorted, PointIndex v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

}  // namespace

DoublingWalk doublingWalk(const WeightedGraph& tree) {
  const auto vertices = tree.vertices();
  const std::size_t n = vertices.size();
  if (n == 0) throw Error(ErrorCode::NotATree, "a tree needs at least one vertex");
  if (tree.edges().size() != n - 1)
    throw Error(ErrorCode::NotATree, "a tree on " + std::to_string(n) + " vertices has " +
                                         std::to_string(n - 1) + " edges, got " +
                                         std::to_string(tree.edges().size()));
  if (connectedComponents(tree).size() != 1) throw Error(ErrorCode::NotATree, "graph is not connected");

  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : tree.edges()) {
    const std::size_t x = position(vertices, e.u), y = position(vertices, e.v);
    adj[x].push_back(y);
    adj[y].push_back(x);
  }

  // Peel leaves (never the root) until only the root is left.
  constexpr std::size_t root = 0;
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::set<std::size_t> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = adj[v].size();
    if (v != root && degree[v] == 1) leaves.insert(v);
  }
  std::vector<std::pair<std::size_t, std::size_t>> peeled;  // (leaf, its neighbour)
  peeled.reserve(n - 1);
  while (!leaves.empty()) {
    const std::size_t v = *leaves.begin();
    leaves.erase(leaves.begin());
    const auto it = std::find_if(adj[v].begin(), adj[v].end(), [&](std::size_t w) { return !removed[w]; });
    const std::size_t u = *it;
    peeled.emplace_back(v, u);
    removed[v] = true;
    if (--degree[u] == 1 && u != root) leaves.insert(u);
  }

  std::list<std::size_t> walk{root};
  std::vector<std::list<std::size_t>::iterator> firstVisit(n, walk.end());
  firstVisit[root] = walk.begin();
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
    const auto [v, u] = *it;
    if (walk.back() == u) {
      firstVisit[v] = walk.insert(walk.end(), v);
    } else {
      auto after = std::next(firstVisit[u]);
      firstVisit[v] = walk.insert(after, v);
      walk.insert(after, u);
    }
  }

  DoublingWalk result{{}, tree, 0.0};
  result.sequence.reserve(walk.size());
  for (std::size_t v : walk) result.sequence.push_back(vertices[v]);
  std::vector<double> steps;
  for (std::size_t i = 1; i < result.sequence.size(); ++i)
    steps.push_back(tree.space().distance(result.sequence[i - 1], result.sequence[i]));
  result.length = pairwiseSum(steps);
  return result;
}

std::vector<std::size_t> edgeTraversals(const DoublingWalk& walk) {
  const auto edges = walk.sourceTree.edges();
  std::vector<std::size_t> counts(edges.size(), 0);
  for (std::size_t i = 1; i < walk.sequence.size(); ++i) {
    const Edge e(walk.sequence[i - 1], walk.sequence[i]);
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e)
      throw Error(ErrorCode::InvalidGraph, "walk uses a pair that is not a tree edge");
    ++counts[static_cast<std::size_t>(it - edges.begin())];
  }
  return counts;
}

CoveringResult coveringNumber(const PointSet& points, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const MetricSpace& space = points.space();
  const auto members = points.members();
  const std::size_t n = members.size();
  const double reach = epsilon + 1e-12 * std::max(1.0, epsilon);

  if (space.kind() == MetricSpace::Kind::RealLine) {
    std::vector<double> xs;
    xs.reserve(n);
    for (PointIndex p : members) xs.push_back(space.coordinate(p));
    std::sort(xs.begin(), xs.end());
    std::size_t count = 1;
    double start = xs.front();
    for (double x : xs)
      if (x - start > reach) {
        ++count;
        start = x;
      }
    return {count, true};
  }

  if (n <= kExactCoverCap) {
    // A subset has diameter <= eps iff it is a clique of the eps-near graph,
    // so N_eps is the clique-cover number.
    using Mask = std::uint32_t;
    std::vector<Mask> near(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i == j || space.distance(members[i], members[j]) <= reach) near[i] |= Mask{1} << j;
    const Mask full = static_cast<Mask>((std::size_t{1} << n) - 1);
    std::vector<bool> clique(std::size_t{full} + 1, false);
    clique[0] = true;
    for (Mask s = 1; s <= full; ++s) {
      const auto low = static_cast<std::size_t>(std::countr_zero(s));
      const Mask rest = s & (s - 1);
      clique[s] = clique[rest] && (near[low] & rest) == rest;
    }
    std::vector<std::uint8_t> cover(std::size_t{full} + 1, 0xff);
    cover[0] = 0;
    for (Mask s = 1; s <= full; ++s) {
      const Mask low = s & (~s + 1);
      const Mask rest = s ^ low;
      for (Mask sub = rest;; sub = (sub - 1) & rest) {
        const Mask block = low | sub;
        if (clique[block]) cover[s] = std::min<std::uint8_t>(cover[s], cover[s ^ block] + 1);
        if (sub == 0) break;
      }
    }
    return {cover[full], true};
  }

  // Greedy: seed with the first uncovered point, then absorb uncovered points
  // nearest-first while the group's diameter stays within epsilon.
  std::vector<bool> covered(n, false);
  std::size_t count = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (covered[seed]) continue;
    ++count;
    covered[seed] = true;
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t j = 0; j < n; ++j) {
      if (covered[j]) continue;
      const double d = space.distance(members[seed], members[j]);
      if (d <= reach) candidates.emplace_back(d, j);
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::size_t> group{seed};
    for (const auto& [d, j] : candidates) {
      const bool fits = std::all_of(group.begin(), group.end(), [&](std::size_t g) {
        return space.distance(members[g], members[j]) <= reach;
      });
      if (fits) {
        group.push_back(j);
        covered[j] = true;
      }
    }
  }
  return {count, false};
}

DimensionEstimate boxDimensionEstimate(const PointSet& points, std::span<const double> ladder) {
  if (ladder.size() < 3) throw Error(ErrorCode::DegenerateLadder, "ladder needs at least three values");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || !std::isfinite(ladder[i]))
      throw Error(ErrorCode::DegenerateLadder, "ladder values must be positive and finite");
    if (i > 0 && !(ladder[i] < ladder[i - 1]))
      throw Error(ErrorCode::DegenerateLadder, "ladder must be strictly decreasing");
  }
  DimensionEstimate est;
  est.epsilons.assign(ladder.begin(), ladder.end());
  std::vector<double> xs, ys;
  for (double eps : ladder) {
    est.counts.push_back(coveringNumber(points, eps));
    xs.push_back(std::log(1.0 / eps));
    ys.push_back(std::log(static_cast<double>(est.counts.back().count)));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  est.slope = sxy / sxx;
  return est;
}

}  // namespace hyperd1
