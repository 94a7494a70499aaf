#include "hyperd1/hausdorff.hpp"

#include <algorithm>
#include <limits>

namespace hyperd1 {

double directedHausdorff(const PointSet& from, const PointSet& to) {
  requireSameSpace(from, to);
  const MetricSpace& space = from.space();
  double worst = 0.0;
  for (PointIndex p : from.members()) {
    double nearest = std::numeric_limits<double>::infinity();
    for (PointIndex q : to.members()) nearest = std::min(nearest, space.distance(p, q));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double hausdorffDistance(const PointSet& a, const PointSet& b) {
  return std::max(directedHausdorff(a, b), directedHausdorff(b, a));
}

}  // namespace hyperd1
