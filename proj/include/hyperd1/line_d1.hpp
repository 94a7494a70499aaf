#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperd1/metric_core.hpp"

namespace hyperd1 {

enum class Label : std::uint8_t { AOnly, BOnly, Both };

struct LabeledPoint {
  double coordinate;
  PointIndex index;
  Label label;

  bool hasA() const noexcept { return label != Label::BOnly; }
  bool hasB() const noexcept { return label != Label::AOnly; }
};

/// A ∪ B sorted by coordinate; points in both sets carry Label::Both.
/// Requires both sets to live in the same RealLine space.
std::vector<LabeledPoint> mergeLabeled(const PointSet& a, const PointSet& b);

/// Inclusive range [first, last] of positions in the merged sequence.
struct LineBlock {
  std::size_t first;
  std::size_t last;
};

struct LineD1Result {
  double value = 0.0;
  std::vector<LineBlock> blocks;
  GraphCertificate certificate;
};

/// Exact d¹ on the real line. Optimal graphs are unions of paths over
/// consecutive merged points, one per block, every block holding an A and a B
/// label. Linear-time DP after sorting; ties go to fewer blocks.
LineD1Result d1Line(const PointSet& a, const PointSet& b);

/// Same optimum as d1Line through the plain quadratic DP over all block starts.
double d1LineQuadratic(const PointSet& a, const PointSet& b);

inline constexpr std::size_t kLineBruteForceCap = 20;

/// Enumerates every consecutive-block partition of the merged points.
/// Throws TooLarge when |A ∪ B| exceeds `cap`.
double d1LineBruteForce(const PointSet& a, const PointSet& b, std::size_t cap = kLineBruteForceCap);

/// Convenience for raw coordinates: builds a line space over the distinct
/// values of a ∪ b and runs d1Line.
LineD1Result d1LineCoordinates(std::span<const double> a, std::span<const double> b);

}  // namespace hyperd1
