#include "hyperd1/fractal_line.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hyperd1/line_d1.hpp"

namespace hyperd1 {

namespace {

constexpr double kNestTolerance = 1e-12;

[[noreturn]] void generatorFailure(const std::string& message) {
  throw Error(ErrorCode::GeneratorFailure, message);
}

Level sortAndMerge(Level level) {
  std::sort(level.begin(), level.end(), [](const Interval& x, const Interval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  Level merged;
  merged.reserve(level.size());
  for (const Interval& iv : level) {
    if (!merged.empty() && iv.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  return merged;
}

// Every interval of `inner` lies in some interval of `outer`, and every
// interval of `outer` contains at least one interval of `inner`.
void checkNested(const Level& outer, const Level& inner, std::size_t k) {
  std::size_t p = 0;
  std::vector<bool> hasChild(outer.size(), false);
  for (const Interval& iv : inner) {
    while (p < outer.size() && outer[p].hi + kNestTolerance < iv.lo) ++p;
    if (p == outer.size() || iv.lo < outer[p].lo - kNestTolerance || iv.hi > outer[p].hi + kNestTolerance)
      generatorFailure("level " + std::to_string(k + 1) + " is not nested in level " + std::to_string(k));
    hasChild[p] = true;
  }
  if (std::find(hasChild.begin(), hasChild.end(), false) != hasChild.end())
    generatorFailure("an interval of level " + std::to_string(k) + " contains nothing of level " +
                     std::to_string(k + 1));
}

void checkLevelShape(const Level& level, std::size_t k) {
  if (level.empty()) generatorFailure("level " + std::to_string(k) + " is empty");
  for (std::size_t i = 0; i < level.size(); ++i) {
    const Interval& iv = level[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
      generatorFailure("level " + std::to_string(k) + " has an invalid interval");
    if (i > 0 && !(level[i - 1].hi < iv.lo))
      generatorFailure("level " + std::to_string(k) + " intervals are not sorted and disjoint");
  }
}

Level nextIfsLevel(const std::vector<AffineMap>& maps, const Level& prev, std::size_t k) {
  if (prev.size() * maps.size() > kMaxLevelIntervals)
    generatorFailure("level " + std::to_string(k + 1) + " would exceed " +
                     std::to_string(kMaxLevelIntervals) + " intervals");
  Level next;
  next.reserve(prev.size() * maps.size());
  for (const AffineMap& f : maps)
    for (const Interval& iv : prev) next.push_back(f.apply(iv));
  next = sortAndMerge(std::move(next));
  checkNested(prev, next, k);
  return next;
}

std::size_t indexOf(const std::vector<double>& sorted, double x) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

// parent[i] = index in `outer` of the interval holding inner[i].
std::vector<std::size_t> parentsOf(const Level& outer, const Level& inner) {
  std::vector<std::size_t> parent(inner.size());
  std::size_t p = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    while (p + 1 < outer.size() && outer[p].hi + kNestTolerance < inner[i].lo) ++p;
    parent[i] = p;
  }
  return parent;
}

}  // namespace

Interval AffineMap::apply(const Interval& iv) const noexcept {
  const double x = ratio * iv.lo + offset;
  const double y = ratio * iv.hi + offset;
  return {std::min(x, y), std::max(x, y)};
}

// ---------------------------------------------------------------------------
// IntervalSystem

IntervalSystem IntervalSystem::ifs(std::vector<AffineMap> maps, Interval seed) {
  if (maps.empty()) generatorFailure("an IFS needs at least one map");
  if (!std::isfinite(seed.lo) || !std::isfinite(seed.hi) || seed.lo > seed.hi)
    generatorFailure("IFS seed must be a finite interval with lo <= hi");
  for (const AffineMap& f : maps) {
    if (!std::isfinite(f.ratio) || !std::isfinite(f.offset))
      generatorFailure("IFS map parameters must be finite");
    if (!(std::abs(f.ratio) < 1.0)) generatorFailure("IFS maps must be contractions (|ratio| < 1)");
    const Interval image = f.apply(seed);
    if (image.lo < seed.lo - kNestTolerance || image.hi > seed.hi + kNestTolerance)
      generatorFailure("IFS map sends the seed outside itself");
  }
  IntervalSystem sys;
  sys.kind_ = Kind::Ifs;
  sys.maps_ = std::move(maps);
  sys.seed_ = seed;
  return sys;
}

IntervalSystem IntervalSystem::explicitLevels(std::vector<Level> levels) {
  if (levels.empty()) generatorFailure("explicit system needs at least one level");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    checkLevelShape(levels[k], k);
    if (k > 0) checkNested(levels[k - 1], levels[k], k - 1);
  }
  IntervalSystem sys;
  sys.kind_ = Kind::Explicit;
  sys.seed_ = {levels.front().front().lo, levels.front().back().hi};
  sys.levels_ = std::move(levels);
  return sys;
}

IntervalSystem IntervalSystem::middleThirdsCantor() {
  return ifs({{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}}, {0.0, 1.0});
}

IntervalSystem IntervalSystem::fatCantor(std::size_t depth) {
  std::vector<Level> levels{{{0.0, 1.0}}};
  double gap = 1.0;
  for (std::size_t k = 1; k <= depth; ++k) {
    gap /= 4.0;
    Level next;
    next.reserve(levels.back().size() * 2);
    for (const Interval& iv : levels.back()) {
      const double mid = 0.5 * (iv.lo + iv.hi);
      next.push_back({iv.lo, mid - 0.5 * gap});
      next.push_back({mid + 0.5 * gap, iv.hi});
    }
    levels.push_back(std::move(next));
  }
  return explicitLevels(std::move(levels));
}

IntervalSystem IntervalSystem::finiteSet(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Level level;
  for (double x : points) level.push_back({x, x});
  return explicitLevels({std::move(level)});
}

std::vector<Level> IntervalSystem::levels(std::size_t depth) const {
  std::vector<Level> out;
  out.reserve(depth + 1);
  if (kind_ == Kind::Explicit) {
    for (std::size_t k = 0; k <= depth; ++k) out.push_back(levels_[std::min(k, levels_.size() - 1)]);
    return out;
  }
  out.push_back({seed_});
  for (std::size_t k = 0; k < depth; ++k) out.push_back(nextIfsLevel(maps_, out.back(), k));
  return out;
}

Level IntervalSystem::level(std::size_t k) const {
  if (kind_ == Kind::Explicit) return levels_[std::min(k, levels_.size() - 1)];
  Level current{seed_};
  for (std::size_t j = 0; j < k; ++j) current = nextIfsLevel(maps_, current, j);
  return current;
}

std::optional<double> IntervalSystem::measureRatio() const noexcept {
  if (kind_ != Kind::Ifs) return std::nullopt;
  double s = 0.0;
  for (const AffineMap& f : maps_) s += std::abs(f.ratio);
  return s;
}

std::optional<double> IntervalSystem::measureTailAfter(std::size_t depth, double levelMeasureAtDepth) const {
  if (kind_ == Kind::Ifs) {
    const double s = *measureRatio();
    if (!(s < 1.0)) return std::nullopt;
    return levelMeasureAtDepth * s / (1.0 - s);
  }
  const std::size_t last = levels_.size() - 1;
  if (measureOf(levels_[last]) > 0.0) return std::nullopt;
  double tail = 0.0;
  for (std::size_t k = depth + 1; k <= last; ++k) tail += measureOf(levels_[k]);
  return tail;
}

double measureOf(const Level& level) {
  std::vector<double> lengths;
  lengths.reserve(level.size());
  for (const Interval& iv : level) lengths.push_back(iv.length());
  return pairwiseSum(lengths);
}

double levelMeasure(const IntervalSystem& sys, std::size_t k) { return measureOf(sys.level(k)); }

// ---------------------------------------------------------------------------
// Zero-length certification

CertificationOutcome certifyZeroLength(const IntervalSystem& sys, double epsilon, std::size_t maxDepth,
                                       std::size_t windowLevels) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
  if (windowLevels == 0) throw Error(ErrorCode::InvalidArgument, "window must span at least one level");

  std::vector<Level> levels{sys.level(0)};
  std::vector<double> measures{measureOf(levels[0])};
  std::optional<std::size_t> start;
  for (std::size_t k = 0;; ++k) {
    if (const auto tail = sys.measureTailAfter(k, measures[k]); tail && 3.0 * (measures[k] + *tail) < epsilon) {
      start = k;
      break;
    }
    if (k == maxDepth) break;
    levels.push_back(sys.kind() == IntervalSystem::Kind::Ifs ? nextIfsLevel(sys.maps(), levels.back(), k)
                                                             : sys.level(k + 1));
    measures.push_back(measureOf(levels.back()));
  }

  if (!start) {
    const bool tailKnown = sys.measureTailAfter(maxDepth, measures.back()).has_value();
    if (!tailKnown && sys.kind() == IntervalSystem::Kind::Ifs && 3.0 * measures.back() < epsilon)
      throw Error(ErrorCode::NoContractionInfo,
                  "level measures decay but the map ratios sum to >= 1, so the tail cannot be bounded");
    std::string reason;
    if (!tailKnown && sys.kind() == IntervalSystem::Kind::Explicit)
      reason = "last listed level has positive measure; the set is not of measure zero at any depth";
    else if (!tailKnown)
      reason = "map ratios sum to >= 1 and level measures stay above epsilon/3";
    else
      reason = "level measures did not decay below epsilon within the depth limit";
    return Refusal{reason, measures};
  }

  const std::size_t m = *start;
  std::size_t end = std::min(m + windowLevels - 1, maxDepth);
  if (sys.kind() == IntervalSystem::Kind::Explicit)
    end = std::min(end, std::max(m, sys.listedLevels().size() - 1));
  while (levels.size() <= end) {
    const std::size_t k = levels.size() - 1;
    levels.push_back(sys.kind() == IntervalSystem::Kind::Ifs ? nextIfsLevel(sys.maps(), levels.back(), k)
                                                             : sys.level(k + 1));
    measures.push_back(measureOf(levels.back()));
  }
  levels.resize(end + 1);
  measures.resize(end + 1);

  ZeroLengthCertificate cert;
  cert.startLevel = m;
  cert.endLevel = end;
  cert.targetEpsilon = epsilon;
  cert.levelMeasures = measures;
  cert.measureBound = 3.0 * (measures[m] + *sys.measureTailAfter(m, measures[m]));
  cert.tailBound = 2.0 * measures[end] + 3.0 * *sys.measureTailAfter(end, measures[end]);
  cert.nestingOnlyChecked = sys.kind() == IntervalSystem::Kind::Explicit;

  std::vector<double> coords;
  for (std::size_t k = m; k <= end; ++k)
    for (const Interval& iv : levels[k]) {
      coords.push_back(iv.lo);
      coords.push_back(iv.hi);
    }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  cert.endpointSpace = MetricSpace::realLine(coords);

  std::set<Edge> edges;
  auto add = [&](double x, double y, LevelEdgeSummary& summary, std::size_t LevelEdgeSummary::*counter) {
    if (x == y) return;
    if (!edges.insert(Edge(indexOf(coords, x), indexOf(coords, y))).second) return;
    ++(summary.*counter);
    summary.length += std::abs(y - x);
  };
  for (std::size_t k = m; k <= end; ++k) {
    LevelEdgeSummary summary;
    summary.level = k;
    for (const Interval& iv : levels[k]) add(iv.lo, iv.hi, summary, &LevelEdgeSummary::intervalEdges);
    if (k < end) {
      // Link each interval's left end to the leftmost child inside it.
      const Level& children = levels[k + 1];
      std::size_t c = 0;
      for (const Interval& parent : levels[k]) {
        while (c < children.size() && children[c].lo < parent.lo - kNestTolerance) ++c;
        if (c < children.size() && children[c].lo <= parent.hi + kNestTolerance)
          add(parent.lo, children[c].lo, summary, &LevelEdgeSummary::linkEdges);
      }
    }
    if (k > m) {
      // Bridge gaps between siblings that share a parent.
      const auto parent = parentsOf(levels[k - 1], levels[k]);
      for (std::size_t i = 0; i + 1 < levels[k].size(); ++i)
        if (parent[i] == parent[i + 1])
          add(levels[k][i].hi, levels[k][i + 1].lo, summary, &LevelEdgeSummary::gapEdges);
    }
    cert.windowLevels.push_back(summary);
  }

  std::vector<PointIndex> vertices(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) vertices[i] = i;
  for (const Interval& iv : levels[m]) cert.sample.push_back(indexOf(coords, iv.lo));
  const PointSet sample(cert.endpointSpace, cert.sample);
  cert.graph = validateCertificate(
      sample, sample,
      WeightedGraph(cert.endpointSpace, std::move(vertices), std::vector<Edge>(edges.begin(), edges.end())));
  cert.windowLength = cert.graph.totalLength;
  cert.totalLengthBound = cert.windowLength + cert.tailBound;
  cert.coverCount = levels[m].size();
  cert.coverRadiusSum = 0.5 * measures[m];
  return cert;
}

// ---------------------------------------------------------------------------
// Approximation by finite samples

std::vector<double> levelSample(const IntervalSystem& sys, std::size_t depth) {
  std::vector<double> out;
  for (const Interval& iv : sys.level(depth)) out.push_back(iv.lo);
  return out;
}

std::optional<double> sampleDistanceBound(const IntervalSystem& sys, std::size_t depth) {
  const double lambda = levelMeasure(sys, depth);
  const auto tail = sys.measureTailAfter(depth, lambda);
  if (!tail) return std::nullopt;
  return 3.0 * (lambda + *tail);
}

CompactBracket d1CompactApprox(const IntervalSystem& sysA, const IntervalSystem& sysB, std::size_t depth) {
  const auto errA = sampleDistanceBound(sysA, depth);
  const auto errB = sampleDistanceBound(sysB, depth);
  if (!errA || !errB)
    throw Error(ErrorCode::CertificateUnavailable,
                std::string("no zero-length tail bound for system ") + (!errA ? "A" : "B"));
  const auto sampleA = levelSample(sysA, depth);
  const auto sampleB = levelSample(sysB, depth);
  CompactBracket out;
  out.sampleDistance = d1LineCoordinates(sampleA, sampleB).value;
  out.errorA = *errA;
  out.errorB = *errB;
  out.lower = std::max(0.0, out.sampleDistance - out.errorA - out.errorB);
  out.upper = out.sampleDistance + out.errorA + out.errorB;
  return out;
}

std::vector<CauchyRow> cauchyDemo(const IntervalSystem& sys, std::span<const std::size_t> depths,
                                  bool requireCertified) {
  if (depths.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two depths");
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (!(depths[i] > depths[i - 1])) throw Error(ErrorCode::InvalidArgument, "depths must increase");
  if (requireCertified && !sampleDistanceBound(sys, depths.back()))
    throw Error(ErrorCode::CertificateUnavailable, "system has no zero-length tail bound");

  const auto levels = sys.levels(depths.back());
  auto sampleAt = [&](std::size_t k) {
    std::vector<double> out;
    for (const Interval& iv : levels[k]) out.push_back(iv.lo);
    return out;
  };
  std::vector<CauchyRow> rows;
  for (std::size_t i = 1; i < depths.size(); ++i) {
    CauchyRow row;
    row.fromDepth = depths[i - 1];
    row.toDepth = depths[i];
    row.distance = d1LineCoordinates(sampleAt(row.fromDepth), sampleAt(row.toDepth)).value;
    row.envelope = 3.0 * measureOf(levels[row.fromDepth]);
    row.withinEnvelope = row.distance <= row.envelope + 1e-12;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hyperd1
