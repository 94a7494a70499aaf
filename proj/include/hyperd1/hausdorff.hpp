#pragma once

#include "hyperd1/metric_core.hpp"

namespace hyperd1 {

/// Hausdorff distance between two finite sets: the larger of the two directed
/// max-min distances. Quadratic in |A|*|B| distance evaluations.
double hausdorffDistance(const PointSet& a, const PointSet& b);

/// max over a in A of min over b in B of d(a, b).
double directedHausdorff(const PointSet& from, const PointSet& to);

}  // namespace hyperd1
