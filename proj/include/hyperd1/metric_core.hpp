#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "hyperd1/error.hpp"

namespace hyperd1 {

/// Absolute tolerance used for metric-axiom validation and distance equality.
inline constexpr double kTolerance = 1e-9;

using PointIndex = std::size_t;

class MetricSpace;
using SpacePtr = std::shared_ptr<const MetricSpace>;

/// An ambient metric space. Points are addressed by index; every other type
/// refers back to the space through a shared, immutable pointer.
class MetricSpace {
 public:
  enum class Kind { FiniteMatrix, RealLine, EuclideanPoints };

  /// Rejects matrices that are not square, have nonzero diagonal, are not
  /// symmetric, have a nonpositive off-diagonal entry or break the triangle
  /// inequality by more than kTolerance.
  static SpacePtr finiteMatrix(const std::vector<std::vector<double>>& dist);
  /// Coordinates must be finite and pairwise distinct.
  static SpacePtr realLine(std::vector<double> coordinates);
  /// Points must share dimension `dim` and be pairwise distinct.
  static SpacePtr euclidean(std::size_t dim, const std::vector<std::vector<double>>& points);

  Kind kind() const noexcept;
  std::size_t size() const noexcept;
  /// Ambient dimension: 1 for the line, `dim` for Euclidean, 0 for matrices.
  std::size_t dimension() const noexcept;

  double distance(PointIndex i, PointIndex j) const;
  /// RealLine only.
  double coordinate(PointIndex i) const;
  /// EuclideanPoints only.
  std::span<const double> point(PointIndex i) const;

  /// Dense row-major copy of all pairwise distances among `indices`.
  std::vector<double> distanceMatrix(std::span<const PointIndex> indices) const;

  void checkIndex(PointIndex i) const;

 private:
  struct Matrix {
    std::size_t n;
    std::vector<double> dist;
  };
  struct Line {
    std::vector<double> x;
  };
  struct Euclid {
    std::size_t dim;
    std::vector<double> flat;
  };
  using Storage = std::variant<Matrix, Line, Euclid>;

  explicit MetricSpace(Storage storage) : storage_(std::move(storage)) {}

  Storage storage_;
};

/// A nonempty finite subset of a space. Members are kept sorted.
class PointSet {
 public:
  /// Throws EmptySet, DuplicateIndex or IndexOutOfRange.
  PointSet(SpacePtr space, std::vector<PointIndex> members);

  /// Image of a tuple (x_1, ..., x_n): duplicates collapse.
  static PointSet fromTuple(SpacePtr space, std::vector<PointIndex> tuple);

  const MetricSpace& space() const noexcept { return *space_; }
  const SpacePtr& spacePtr() const noexcept { return space_; }
  std::span<const PointIndex> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(PointIndex i) const noexcept;

  friend bool operator==(const PointSet& a, const PointSet& b) noexcept {
    return a.space_ == b.space_ && a.members_ == b.members_;
  }

 private:
  SpacePtr space_;
  std::vector<PointIndex> members_;
};

/// Undirected edge, stored with u < v.
struct Edge {
  PointIndex u;
  PointIndex v;

  Edge(PointIndex a, PointIndex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A finite graph whose vertices are points of a metric space.
class WeightedGraph {
 public:
  /// Empty placeholder with no space attached.
  WeightedGraph() = default;
  /// Throws InvalidGraph on self-loops, duplicate edges or vertices, or edge
  /// endpoints that are not vertices; IndexOutOfRange for bad indices.
  WeightedGraph(SpacePtr space, std::vector<PointIndex> vertices, std::vector<Edge> edges);

  const MetricSpace& space() const noexcept { return *space_; }
  const SpacePtr& spacePtr() const noexcept { return space_; }
  std::span<const PointIndex> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool hasVertex(PointIndex i) const noexcept;

  double totalLength() const;

 private:
  SpacePtr space_;
  std::vector<PointIndex> vertices_;  // sorted
  std::vector<Edge> edges_;           // sorted
};

/// A graph together with evidence that it belongs to the admissible family
/// for (A, B): it covers A and B, and every component meets both.
struct GraphCertificate {
  WeightedGraph graph;
  std::size_t componentCount = 0;
  /// One (a, b) pair per component, in component order.
  std::vector<std::pair<PointIndex, PointIndex>> componentWitnesses;
  double totalLength = 0.0;
};

/// Components are returned sorted internally and ordered by smallest vertex.
std::vector<std::vector<PointIndex>> connectedComponents(const WeightedGraph& g);

double totalLength(const WeightedGraph& g);

/// Throws SpaceMismatch, VertexNotCovered or ComponentMissesSet.
GraphCertificate validateCertificate(const PointSet& a, const PointSet& b, const WeightedGraph& g);

void requireSameSpace(const PointSet& a, const PointSet& b);

/// Sum by recursive halving; keeps rounding error O(log n) ulp.
double pairwiseSum(std::span<const double> values);

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t setCount() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

}  // namespace hyperd1
