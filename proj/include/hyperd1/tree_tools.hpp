#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperd1/metric_core.hpp"

namespace hyperd1 {

/// A walk v0..vn through a tree that visits every vertex, uses only tree
/// edges, uses every tree edge, and uses no edge more than twice.
struct DoublingWalk {
  std::vector<PointIndex> sequence;
  WeightedGraph sourceTree;
  double length = 0.0;  ///< sum of consecutive distances along the walk
};

/// Builds the walk by peeling leaves and re-inserting them in reverse order:
/// a leaf v hanging off u is spliced in as ..., u, v, u, ... after the first
/// visit of u, or simply appended when the walk currently ends at u.
/// The walk starts at the tree's smallest vertex. Throws NotATree.
DoublingWalk doublingWalk(const WeightedGraph& tree);

/// How many times each tree edge (in tree.edges() order) appears among the
/// consecutive pairs of the walk.
std::vector<std::size_t> edgeTraversals(const DoublingWalk& walk);

struct CoveringResult {
  std::size_t count = 0;
  bool exact = false;  ///< false: `count` is a greedy upper bound
};

inline constexpr std::size_t kExactCoverCap = 16;

/// Smallest number of subsets of diameter <= epsilon covering the points.
/// Exact on line spaces (left-to-right sweep) and for at most kExactCoverCap
/// points (subset DP over cliques); a labelled greedy bound otherwise.
CoveringResult coveringNumber(const PointSet& points, double epsilon);

struct DimensionEstimate {
  double slope = 0.0;
  std::vector<double> epsilons;
  std::vector<CoveringResult> counts;
};

/// Least-squares slope of ln N_eps against ln(1/eps). The ladder must be
/// strictly decreasing with at least three positive values (DegenerateLadder).
/// Diagnostic only.
DimensionEstimate boxDimensionEstimate(const PointSet& points, std::span<const double> ladder);

}  // namespace hyperd1
