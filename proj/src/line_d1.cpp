#include "hyperd1/line_d1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hyperd1 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void requireLine(const PointSet& a, const PointSet& b) {
  requireSameSpace(a, b);
  if (a.space().kind() != MetricSpace::Kind::RealLine)
    throw Error(ErrorCode::SpaceMismatch, "d1 on the line requires a line space");
}

// Two DP keys within this distance of each other count as a tie.
double tieTolerance(std::span<const LabeledPoint> pts) {
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, std::abs(p.coordinate));
  return 1e-12 * scale;
}

double blockSpanSum(std::span<const LabeledPoint> pts, std::span<const LineBlock> blocks) {
  double sum = 0.0;
  for (const auto& blk : blocks) sum += pts[blk.last].coordinate - pts[blk.first].coordinate;
  return sum;
}

}  // namespace

std::vector<LabeledPoint> mergeLabeled(const PointSet& a, const PointSet& b) {
  requireLine(a, b);
  const MetricSpace& space = a.space();
  std::vector<LabeledPoint> merged;
  merged.reserve(a.size() + b.size());
  // Members are sorted by index, so a two-way merge on index finds overlaps.
  auto ia = a.members().begin(), ea = a.members().end();
  auto ib = b.members().begin(), eb = b.members().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && *ia < *ib)) {
      merged.push_back({space.coordinate(*ia), *ia, Label::AOnly});
      ++ia;
    } else if (ia == ea || *ib < *ia) {
      merged.push_back({space.coordinate(*ib), *ib, Label::BOnly});
      ++ib;
    } else {
      merged.push_back({space.coordinate(*ia), *ia, Label::Both});
      ++ia;
      ++ib;
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const LabeledPoint& x, const LabeledPoint& y) { return x.coordinate < y.coordinate; });
  return merged;
}

LineD1Result d1Line(const PointSet& a, const PointSet& b) {
  const auto pts = mergeLabeled(a, b);
  const std::size_t n = pts.size();
  const double tol = tieTolerance(pts);

  // cost[i]: optimum over the first i points. A block [j, i-1] is feasible
  // iff j <= min(last A position, last B position) among the first i points,
  // so feasible starts form a prefix [0, limit] with limit nondecreasing in
  // i and a running minimum of cost[j] - p[j] is all the DP needs.
  std::vector<double> cost(n + 1, kInf);
  std::vector<std::size_t> blocks(n + 1, 0), from(n + 1, 0);
  cost[0] = 0.0;

  double bestKey = kInf;
  std::size_t bestBlocks = 0, bestStart = 0;
  std::size_t admitted = 0;  // starts j < admitted are folded into bestKey
  std::size_t lastA = SIZE_MAX, lastB = SIZE_MAX;

  for (std::size_t i = 1; i <= n; ++i) {
    const auto& p = pts[i - 1];
    if (p.hasA()) lastA = i - 1;
    if (p.hasB()) lastB = i - 1;
    if (lastA == SIZE_MAX || lastB == SIZE_MAX) continue;
    const std::size_t limit = std::min(lastA, lastB);
    for (; admitted <= limit; ++admitted) {
      const std::size_t j = admitted;
      if (!std::isfinite(cost[j])) continue;
      const double key = cost[j] - pts[j].coordinate;
      if (key < bestKey - tol || (key <= bestKey + tol && blocks[j] < bestBlocks)) {
        bestKey = key;
        bestBlocks = blocks[j];
        bestStart = j;
      }
    }
    if (!std::isfinite(bestKey)) continue;
    cost[i] = p.coordinate + bestKey;
    blocks[i] = bestBlocks + 1;
    from[i] = bestStart;
  }

  LineD1Result result;
  for (std::size_t i = n; i > 0; i = from[i]) result.blocks.push_back({from[i], i - 1});
  std::reverse(result.blocks.begin(), result.blocks.end());
  result.value = blockSpanSum(pts, result.blocks);

  std::vector<PointIndex> vertices;
  vertices.reserve(n);
  for (const auto& p : pts) vertices.push_back(p.index);
  std::vector<Edge> edges;
  for (const auto& blk : result.blocks)
    for (std::size_t k = blk.first; k < blk.last; ++k) edges.emplace_back(pts[k].index, pts[k + 1].index);
  result.certificate =
      validateCertificate(a, b, WeightedGraph(a.spacePtr(), std::move(vertices), std::move(edges)));
  return result;
}

double d1LineQuadratic(const PointSet& a, const PointSet& b) {
  const auto pts = mergeLabeled(a, b);
  const std::size_t n = pts.size();
  std::vector<double> cost(n + 1, kInf);
  cost[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    bool seenA = false, seenB = false;
    for (std::size_t j = i; j-- > 0;) {
      seenA = seenA || pts[j].hasA();
      seenB = seenB || pts[j].hasB();
      if (seenA && seenB && std::isfinite(cost[j]))
        cost[i] = std::min(cost[i], cost[j] + (pts[i - 1].coordinate - pts[j].coordinate));
    }
  }
  return cost[n];
}

double d1LineBruteForce(const PointSet& a, const PointSet& b, std::size_t cap) {
  const auto pts = mergeLabeled(a, b);
  const std::size_t n = pts.size();
  if (n > cap)
    throw Error(ErrorCode::TooLarge, "brute force limited to " + std::to_string(cap) +
                                         " merged points, got " + std::to_string(n));
  // Bit g of `cuts` set means a block boundary between positions g and g+1.
  const std::uint64_t partitions = std::uint64_t{1} << (n - 1);
  double best = kInf;
  for (std::uint64_t cuts = 0; cuts < partitions; ++cuts) {
    double sum = 0.0;
    bool feasible = true;
    std::size_t start = 0;
    bool hasA = false, hasB = false;
    for (std::size_t k = 0; k < n && feasible; ++k) {
      hasA = hasA || pts[k].hasA();
      hasB = hasB || pts[k].hasB();
      const bool closes = (k + 1 == n) || ((cuts >> k) & 1U);
      if (!closes) continue;
      if (!hasA || !hasB) feasible = false;
      sum += pts[k].coordinate - pts[start].coordinate;
      start = k + 1;
      hasA = hasB = false;
    }
    if (feasible) best = std::min(best, sum);
  }
  return best;
}

LineD1Result d1LineCoordinates(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "coordinate sets must be nonempty");
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  auto space = MetricSpace::realLine(all);
  auto indexOf = [&](double x) {
    return static_cast<PointIndex>(std::lower_bound(all.begin(), all.end(), x) - all.begin());
  };
  std::vector<PointIndex> ia, ib;
  for (double x : a) ia.push_back(indexOf(x));
  for (double x : b) ib.push_back(indexOf(x));
  return d1Line(PointSet::fromTuple(space, std::move(ia)), PointSet::fromTuple(space, std::move(ib)));
}

}  // namespace hyperd1
