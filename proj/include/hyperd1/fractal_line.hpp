#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hyperd1/metric_core.hpp"

namespace hyperd1 {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, pairwise disjoint closed intervals.
using Level = std::vector<Interval>;

struct AffineMap {
  double ratio = 0.0;
  double offset = 0.0;

  Interval apply(const Interval& iv) const noexcept;
};

/// Upper bound on the number of intervals a single level may hold.
inline constexpr std::size_t kMaxLevelIntervals = std::size_t{1} << 22;

/// A compact subset of the line given as the intersection of nested finite
/// unions of closed intervals U_0 ⊇ U_1 ⊇ ... .
///
/// Two generators are supported. An iterated function system applies every
/// contraction x -> ratio*x + offset to the previous level (U_0 = seed). An
/// explicit list gives the levels directly; past the last listed level the
/// system is stationary, so it represents its last level.
class IntervalSystem {
 public:
  enum class Kind { Ifs, Explicit };

  /// Throws GeneratorFailure unless every |ratio| < 1, seed.lo <= seed.hi and
  /// every image of the seed lies inside the seed.
  static IntervalSystem ifs(std::vector<AffineMap> maps, Interval seed);
  /// Throws GeneratorFailure unless levels are sorted, disjoint, nested, and
  /// every interval contains at least one interval of the next level.
  static IntervalSystem explicitLevels(std::vector<Level> levels);

  /// Middle-thirds Cantor set on [0, 1].
  static IntervalSystem middleThirdsCantor();
  /// Smith-Volterra-Cantor set: step k removes an open middle gap of length
  /// 4^-k from each of the 2^(k-1) intervals. Measure tends to 1/2.
  /// Explicit, listing levels 0..depth.
  static IntervalSystem fatCantor(std::size_t depth);
  /// A finite set as degenerate intervals.
  static IntervalSystem finiteSet(std::vector<double> points);

  Kind kind() const noexcept { return kind_; }
  const std::vector<AffineMap>& maps() const noexcept { return maps_; }
  Interval seed() const noexcept { return seed_; }
  /// Listed levels for explicit systems (empty for IFS).
  const std::vector<Level>& listedLevels() const noexcept { return levels_; }

  /// U_0 .. U_depth. IFS levels are checked for nesting as they are built.
  std::vector<Level> levels(std::size_t depth) const;
  Level level(std::size_t k) const;

  /// Sum |ratio| for an IFS with non-overlapping images this is the exact
  /// per-level measure ratio, and an upper bound in general. nullopt for
  /// explicit systems.
  std::optional<double> measureRatio() const noexcept;

  /// Upper bound on sum_{k > depth} lambda(U_k) given lambda(U_depth), or
  /// nullopt when the tail cannot be bounded (or is infinite).
  std::optional<double> measureTailAfter(std::size_t depth, double levelMeasureAtDepth) const;

 private:
  IntervalSystem() = default;

  Kind kind_ = Kind::Ifs;
  std::vector<AffineMap> maps_;
  Interval seed_;
  std::vector<Level> levels_;
};

double levelMeasure(const IntervalSystem& sys, std::size_t k);
double measureOf(const Level& level);

/// Per-level accounting of the edges added to a zero-length certificate.
struct LevelEdgeSummary {
  std::size_t level = 0;
  std::size_t intervalEdges = 0;
  std::size_t linkEdges = 0;
  std::size_t gapEdges = 0;
  double length = 0.0;
};

/// Finite window of the endpoint graph over levels startLevel..endLevel plus a
/// bound for everything deeper. windowLength + tailBound bounds the length
/// of the full infinite graph, which covers the represented set.
struct ZeroLengthCertificate {
  std::size_t startLevel = 0;
  std::size_t endLevel = 0;
  double targetEpsilon = 0.0;
  std::vector<double> levelMeasures;  ///< lambda(U_k) for k = 0..endLevel
  double measureBound = 0.0;          ///< 3 * (bound on sum_{k >= m} lambda(U_k))
  double windowLength = 0.0;          ///< exact length of the finite window graph
  double tailBound = 0.0;
  double totalLengthBound = 0.0;      ///< windowLength + tailBound
  std::vector<LevelEdgeSummary> windowLevels;
  /// Endpoint coordinates; graph vertices index into this line space.
  SpacePtr endpointSpace;
  /// One left endpoint per start-level interval.
  std::vector<PointIndex> sample;
  /// Validated against (sample, sample).
  GraphCertificate graph;
  /// Closed balls centred at start-level midpoints with half-length radii
  /// cover the set; their radii sum to this value.
  double coverRadiusSum = 0.0;
  std::size_t coverCount = 0;
  /// Explicit systems only guarantee nonempty nesting chains, which does not
  /// prove every interval meets the limit set.
  bool nestingOnlyChecked = false;
};

struct Refusal {
  std::string reason;
  std::vector<double> levelMeasures;  ///< lambda(U_k) for k = 0..maxDepth
};

using CertificationOutcome = std::variant<ZeroLengthCertificate, Refusal>;

inline constexpr std::size_t kDefaultWindowLevels = 3;

/// Searches for the first level m at which 3 * sum_{k >= m} lambda(U_k) is
/// provably below epsilon and emits the endpoint graph for levels
/// m..min(m + windowLevels - 1, maxDepth). A Refusal is not a proof of
/// positive length. Throws NoContractionInfo when the observed measures
/// decay but the tail cannot be bounded.
CertificationOutcome certifyZeroLength(const IntervalSystem& sys, double epsilon, std::size_t maxDepth,
                                       std::size_t windowLevels = kDefaultWindowLevels);

/// Bound on d¹(A, A_k) where A_k holds the left endpoints of U_k, or nullopt.
std::optional<double> sampleDistanceBound(const IntervalSystem& sys, std::size_t depth);

/// Left endpoint of every interval of U_k.
std::vector<double> levelSample(const IntervalSystem& sys, std::size_t depth);

struct CompactBracket {
  double lower = 0.0;
  double upper = 0.0;
  double sampleDistance = 0.0;  ///< exact d¹ between the two level samples
  double errorA = 0.0;
  double errorB = 0.0;
};

/// Brackets d¹(A, B) between two compact zero-length sets using exact d¹ of
/// their level-`depth` samples and the triangle inequality.
/// Throws CertificateUnavailable when either tail cannot be bounded.
CompactBracket d1CompactApprox(const IntervalSystem& sysA, const IntervalSystem& sysB, std::size_t depth);

struct CauchyRow {
  std::size_t fromDepth = 0;
  std::size_t toDepth = 0;
  double distance = 0.0;  ///< exact d¹(A_from, A_to)
  double envelope = 0.0;  ///< 3 * lambda(U_from)
  bool withinEnvelope = false;
};

/// Exact d¹ between the samples at consecutive entries of `depths` (which
/// must be strictly increasing, at least two). With requireCertified the
/// system must admit a bounded measure tail (CertificateUnavailable).
std::vector<CauchyRow> cauchyDemo(const IntervalSystem& sys, std::span<const std::size_t> depths,
                                  bool requireCertified = true);

}  // namespace hyperd1
