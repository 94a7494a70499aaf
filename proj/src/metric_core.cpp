#include "hyperd1/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hyperd1 {

std::string_view errorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::ComponentMissesSet: return "ComponentMissesSet";
    case ErrorCode::VertexNotCovered: return "VertexNotCovered";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::DegenerateLadder: return "DegenerateLadder";
    case ErrorCode::GeneratorFailure: return "GeneratorFailure";
    case ErrorCode::NoContractionInfo: return "NoContractionInfo";
    case ErrorCode::CertificateUnavailable: return "CertificateUnavailable";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

bool isFinite(double x) { return std::isfinite(x); }

}  // namespace

// ---------------------------------------------------------------------------
// MetricSpace

SpacePtr MetricSpace::finiteMatrix(const std::vector<std::vector<double>>& dist) {
  const std::size_t n = dist.size();
  if (n == 0) fail(ErrorCode::InvalidMetric, "distance matrix is empty");
  Matrix m{n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) fail(ErrorCode::InvalidMetric, "distance matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i][j];
      if (!isFinite(d)) fail(ErrorCode::InvalidMetric, "distance matrix has a non-finite entry");
      m.dist[i * n + j] = d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m.dist[i * n + i]) > kTolerance)
      fail(ErrorCode::InvalidMetric, "d(" + std::to_string(i) + "," + std::to_string(i) + ") != 0");
    m.dist[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = m.dist[i * n + j];
      const double dji = m.dist[j * n + i];
      if (std::abs(dij - dji) > kTolerance)
        fail(ErrorCode::InvalidMetric,
             "matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (dij <= 0.0 || dji <= 0.0)
        fail(ErrorCode::InvalidMetric, "distinct points " + std::to_string(i) + " and " +
                                           std::to_string(j) + " have nonpositive distance");
      // Symmetrize exactly so distance(i,j) == distance(j,i) bit for bit.
      const double sym = 0.5 * (dij + dji);
      m.dist[i * n + j] = sym;
      m.dist[j * n + i] = sym;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m.dist[i * n + j] > m.dist[i * n + k] + m.dist[k * n + j] + kTolerance)
          fail(ErrorCode::InvalidMetric, "triangle inequality fails for (" + std::to_string(i) +
                                             "," + std::to_string(k) + "," + std::to_string(j) + ")");
  return SpacePtr(new MetricSpace(std::move(m)));
}

SpacePtr MetricSpace::realLine(std::vector<double> coordinates) {
  if (coordinates.empty()) fail(ErrorCode::InvalidMetric, "line space has no points");
  for (double x : coordinates)
    if (!isFinite(x)) fail(ErrorCode::InvalidMetric, "line coordinate is not finite");
  std::vector<double> sorted = coordinates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorCode::InvalidMetric, "line coordinates must be pairwise distinct");
  return SpacePtr(new MetricSpace(Line{std::move(coordinates)}));
}

SpacePtr MetricSpace::euclidean(std::size_t dim, const std::vector<std::vector<double>>& points) {
  if (dim == 0) fail(ErrorCode::InvalidMetric, "euclidean dimension must be positive");
  if (points.empty()) fail(ErrorCode::InvalidMetric, "euclidean space has no points");
  Euclid e{dim, {}};
  e.flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) fail(ErrorCode::InvalidMetric, "point has wrong dimension");
    for (double x : p) {
      if (!isFinite(x)) fail(ErrorCode::InvalidMetric, "euclidean coordinate is not finite");
      e.flat.push_back(x);
    }
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (points[order[k - 1]] == points[order[k]])
      fail(ErrorCode::InvalidMetric, "euclidean points " + std::to_string(order[k - 1]) + " and " +
                                         std::to_string(order[k]) + " coincide");
  return SpacePtr(new MetricSpace(std::move(e)));
}

MetricSpace::Kind MetricSpace::kind() const noexcept {
  switch (storage_.index()) {
    case 0: return Kind::FiniteMatrix;
    case 1: return Kind::RealLine;
    default: return Kind::EuclideanPoints;
  }
}

std::size_t MetricSpace::size() const noexcept {
  if (const auto* m = std::get_if<Matrix>(&storage_)) return m->n;
  if (const auto* l = std::get_if<Line>(&storage_)) return l->x.size();
  const auto& e = std::get<Euclid>(storage_);
  return e.flat.size() / e.dim;
}

std::size_t MetricSpace::dimension() const noexcept {
  if (std::holds_alternative<Matrix>(storage_)) return 0;
  if (std::holds_alternative<Line>(storage_)) return 1;
  return std::get<Euclid>(storage_).dim;
}

void MetricSpace::checkIndex(PointIndex i) const {
  if (i >= size())
    fail(ErrorCode::IndexOutOfRange,
         "point index " + std::to_string(i) + " out of range (size " + std::to_string(size()) + ")");
}

double MetricSpace::distance(PointIndex i, PointIndex j) const {
  checkIndex(i);
  checkIndex(j);
  if (const auto* m = std::get_if<Matrix>(&storage_)) return m->dist[i * m->n + j];
  if (const auto* l = std::get_if<Line>(&storage_)) return std::abs(l->x[i] - l->x[j]);
  const auto& e = std::get<Euclid>(storage_);
  double sq = 0.0;
  for (std::size_t k = 0; k < e.dim; ++k) {
    const double d = e.flat[i * e.dim + k] - e.flat[j * e.dim + k];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double MetricSpace::coordinate(PointIndex i) const {
  const auto* l = std::get_if<Line>(&storage_);
  if (l == nullptr) fail(ErrorCode::SpaceMismatch, "coordinate() requires a line space");
  checkIndex(i);
  return l->x[i];
}

std::span<const double> MetricSpace::point(PointIndex i) const {
  const auto* e = std::get_if<Euclid>(&storage_);
  if (e == nullptr) fail(ErrorCode::SpaceMismatch, "point() requires a euclidean space");
  checkIndex(i);
  return std::span<const double>(e->flat).subspan(i * e->dim, e->dim);
}

std::vector<double> MetricSpace::distanceMatrix(std::span<const PointIndex> indices) const {
  const std::size_t m = indices.size();
  std::vector<double> out(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const double d = distance(indices[a], indices[b]);
      out[a * m + b] = d;
      out[b * m + a] = d;
    }
  return out;
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(SpacePtr space, std::vector<PointIndex> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) fail(ErrorCode::InvalidArgument, "point set has no space");
  if (members_.empty()) fail(ErrorCode::EmptySet, "point set must be nonempty");
  for (PointIndex i : members_) space_->checkIndex(i);
  std::sort(members_.begin(), members_.end());
  if (auto it = std::adjacent_find(members_.begin(), members_.end()); it != members_.end())
    fail(ErrorCode::DuplicateIndex, "duplicate point index " + std::to_string(*it));
}

PointSet PointSet::fromTuple(SpacePtr space, std::vector<PointIndex> tuple) {
  std::sort(tuple.begin(), tuple.end());
  tuple.erase(std::unique(tuple.begin(), tuple.end()), tuple.end());
  return PointSet(std::move(space), std::move(tuple));
}

bool PointSet::contains(PointIndex i) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), i);
}

void requireSameSpace(const PointSet& a, const PointSet& b) {
  if (a.spacePtr() != b.spacePtr())
    fail(ErrorCode::SpaceMismatch, "point sets live in different spaces");
}

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph::WeightedGraph(SpacePtr space, std::vector<PointIndex> vertices, std::vector<Edge> edges)
    : space_(std::move(space)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (!space_) fail(ErrorCode::InvalidArgument, "graph has no space");
  for (PointIndex v : vertices_) space_->checkIndex(v);
  std::sort(vertices_.begin(), vertices_.end());
  if (auto it = std::adjacent_find(vertices_.begin(), vertices_.end()); it != vertices_.end())
    fail(ErrorCode::InvalidGraph, "duplicate vertex " + std::to_string(*it));
  for (const Edge& e : edges_) {
    if (e.u == e.v) fail(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(e.u));
    if (!hasVertex(e.u) || !hasVertex(e.v))
      fail(ErrorCode::InvalidGraph, "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        "} has an endpoint that is not a vertex");
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end())
    fail(ErrorCode::InvalidGraph,
         "duplicate edge {" + std::to_string(it->u) + "," + std::to_string(it->v) + "}");
}

bool WeightedGraph::hasVertex(PointIndex i) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), i);
}

double WeightedGraph::totalLength() const {
  std::vector<double> lengths;
  lengths.reserve(edges_.size());
  for (const Edge& e : edges_) lengths.push_back(space_->distance(e.u, e.v));
  return pairwiseSum(lengths);
}

double totalLength(const WeightedGraph& g) { return g.totalLength(); }

double pairwiseSum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwiseSum(values.first(half)) + pairwiseSum(values.subspan(half));
}

// ---------------------------------------------------------------------------
// Components and certificates

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --sets_;
  return true;
}

namespace {

std::size_t localIndex(std::span<const PointIndex> sortedVertices, PointIndex v) {
  return static_cast<std::size_t>(
      std::lower_bound(sortedVertices.begin(), sortedVertices.end(), v) - sortedVertices.begin());
}

}  // namespace

std::vector<std::vector<PointIndex>> connectedComponents(const WeightedGraph& g) {
  const auto vertices = g.vertices();
  DisjointSets sets(vertices.size());
  for (const Edge& e : g.edges()) sets.unite(localIndex(vertices, e.u), localIndex(vertices, e.v));

  // Vertices are sorted, so first appearance of a root is the component's
  // smallest vertex and the groups come out ordered.
  std::vector<std::size_t> slot(vertices.size(), SIZE_MAX);
  std::vector<std::vector<PointIndex>> components;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].push_back(vertices[i]);
  }
  return components;
}

GraphCertificate validateCertificate(const PointSet& a, const PointSet& b, const WeightedGraph& g) {
  requireSameSpace(a, b);
  if (a.spacePtr() != g.spacePtr())
    fail(ErrorCode::SpaceMismatch, "graph lives in a different space than the point sets");
  for (const PointSet* set : {&a, &b})
    for (PointIndex p : set->members())
      if (!g.hasVertex(p))
        fail(ErrorCode::VertexNotCovered, "point " + std::to_string(p) + " of " +
                                              (set == &a ? "A" : "B") + " is not a graph vertex");

  auto components = connectedComponents(g);
  GraphCertificate cert{g, components.size(), {}, 0.0};
  cert.componentWitnesses.reserve(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    auto inA = std::find_if(comp.begin(), comp.end(), [&](PointIndex p) { return a.contains(p); });
    auto inB = std::find_if(comp.begin(), comp.end(), [&](PointIndex p) { return b.contains(p); });
    if (inA == comp.end() || inB == comp.end())
      fail(ErrorCode::ComponentMissesSet,
           "component " + std::to_string(c) + " (containing vertex " + std::to_string(comp.front()) +
               ") misses " + (inA == comp.end() ? "A" : "B"));
    cert.componentWitnesses.emplace_back(*inA, *inB);
  }
  cert.totalLength = g.totalLength();
  return cert;
}

}  // namespace hyperd1
