#pragma once

#include <cstddef>
#include <vector>

#include "hyperd1/metric_core.hpp"

namespace hyperd1 {

struct SolverCaps {
  std::size_t terminalCap = 14;  ///< |A ∪ B| for exact mode
  std::size_t poolCap = 16;      ///< Steiner candidates beyond the terminals
  std::size_t oracleCap = 8;     ///< |terminals ∪ pool| for the brute-force oracle
};

/// Terminal sets A, B plus an optional pool of extra points that may be used
/// as Steiner vertices. Pool entries that are also terminals are dropped.
class SteinerInstance {
 public:
  SteinerInstance(PointSet a, PointSet b, std::vector<PointIndex> pool = {});

  const PointSet& a() const noexcept { return a_; }
  const PointSet& b() const noexcept { return b_; }
  const MetricSpace& space() const noexcept { return a_.space(); }
  const SpacePtr& spacePtr() const noexcept { return a_.spacePtr(); }
  /// Sorted A ∪ B.
  const std::vector<PointIndex>& terminals() const noexcept { return terminals_; }
  /// Sorted pool points not already terminals.
  const std::vector<PointIndex>& pool() const noexcept { return pool_; }

 private:
  PointSet a_;
  PointSet b_;
  std::vector<PointIndex> terminals_;
  std::vector<PointIndex> pool_;
};

struct ForestResult {
  double value = 0.0;
  GraphCertificate certificate;
};

/// Minimum total length of an admissible forest over terminals ∪ pool:
/// subset DP over terminal blocks on top of per-block Dreyfus-Wagner Steiner
/// trees. Throws CapExceeded beyond `caps`.
ForestResult d1Exact(const SteinerInstance& inst, const SolverCaps& caps = {});

/// Independent oracle: every choice of used pool points and every set
/// partition of the used vertices, each block joined by its MST.
/// Throws TooLarge when |terminals ∪ pool| > caps.oracleCap.
double d1BruteForce(const SteinerInstance& inst, const SolverCaps& caps = {});

/// Terminal-only relaxation: optimal partition into admissible blocks, each
/// spanned by its MST (no pool). Exact over partitions up to
/// caps.terminalCap terminals; beyond that an MST with greedy edge deletion.
ForestResult mstUpperBound(const SteinerInstance& inst, const SolverCaps& caps = {});

/// eps*(|A|-1)/2, a lower bound on d¹(A, {x}) for every point x when A is
/// 2eps-separated. Throws NotSeparated otherwise.
double separationLowerBound(const PointSet& a, double epsilon);

}  // namespace hyperd1
