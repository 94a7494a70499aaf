#include "hyperd1/json_io.hpp"

#include <string>

namespace hyperd1::json_io {

namespace {

[[noreturn]] void parseError(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

std::vector<PointIndex> indexArray(const json& j, const char* name) {
  if (!j.is_array()) parseError(std::string("\"") + name + "\" must be an array of point indices");
  std::vector<PointIndex> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      parseError(std::string("\"") + name + "\" must hold nonnegative integers");
    out.push_back(v.get<PointIndex>());
  }
  return out;
}

}  // namespace

SpacePtr spaceFromJson(const json& j) {
  const auto type = get<std::string>(j, "type");
  if (type == "line") return MetricSpace::realLine(get<std::vector<double>>(j, "points"));
  if (type == "euclidean")
    return MetricSpace::euclidean(get<std::size_t>(j, "dim"), get<std::vector<std::vector<double>>>(j, "points"));
  if (type == "matrix") return MetricSpace::finiteMatrix(get<std::vector<std::vector<double>>>(j, "dist"));
  parseError("unknown space type \"" + type + "\"");
}

json spaceToJson(const MetricSpace& space) {
  const std::size_t n = space.size();
  switch (space.kind()) {
    case MetricSpace::Kind::RealLine: {
      std::vector<double> xs;
      for (PointIndex i = 0; i < n; ++i) xs.push_back(space.coordinate(i));
      return {{"type", "line"}, {"points", xs}};
    }
    case MetricSpace::Kind::EuclideanPoints: {
      json pts = json::array();
      for (PointIndex i = 0; i < n; ++i) {
        const auto p = space.point(i);
        pts.push_back(std::vector<double>(p.begin(), p.end()));
      }
      return {{"type", "euclidean"}, {"dim", space.dimension()}, {"points", pts}};
    }
    case MetricSpace::Kind::FiniteMatrix: {
      json rows = json::array();
      for (PointIndex i = 0; i < n; ++i) {
        std::vector<double> row;
        for (PointIndex k = 0; k < n; ++k) row.push_back(space.distance(i, k));
        rows.push_back(row);
      }
      return {{"type", "matrix"}, {"dist", rows}};
    }
  }
  return {};
}

PointSet pointSetFromJson(const SpacePtr& space, const json& j, const char* name) {
  return PointSet(space, indexArray(j, name));
}

WeightedGraph graphFromJson(const SpacePtr& space, const json& j) {
  if (!j.is_object()) parseError("graph must be an object with \"vertices\" and \"edges\"");
  auto vertices = indexArray(j.contains("vertices") ? j.at("vertices") : json(), "vertices");
  std::vector<Edge> edges;
  if (!j.contains("edges") || !j.at("edges").is_array()) parseError("graph needs an \"edges\" array");
  for (const auto& e : j.at("edges")) {
    const auto pair = indexArray(e, "edges[]");
    if (pair.size() != 2) parseError("each edge must be a pair [i, j]");
    edges.emplace_back(pair[0], pair[1]);
  }
  return WeightedGraph(space, std::move(vertices), std::move(edges));
}

json graphToJson(const WeightedGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"vertices", std::vector<PointIndex>(g.vertices().begin(), g.vertices().end())}, {"edges", edges}};
}

json certificateToJson(const GraphCertificate& cert) {
  json out = graphToJson(cert.graph);
  out["componentCount"] = cert.componentCount;
  json witnesses = json::array();
  for (const auto& [a, b] : cert.componentWitnesses) witnesses.push_back({a, b});
  out["witnesses"] = witnesses;
  out["totalLength"] = cert.totalLength;
  return out;
}

IntervalSystem systemFromJson(const json& j) {
  const auto type = get<std::string>(j, "type");
  if (type == "ifs") {
    std::vector<AffineMap> maps;
    const json& jm = j.contains("maps") ? j.at("maps") : json();
    if (!jm.is_array()) parseError("\"maps\" must be an array");
    for (const auto& m : jm) maps.push_back({get<double>(m, "ratio"), get<double>(m, "offset")});
    const auto seed = get<std::vector<double>>(j, "seed");
    if (seed.size() != 2) parseError("\"seed\" must be [lo, hi]");
    return IntervalSystem::ifs(std::move(maps), {seed[0], seed[1]});
  }
  if (type == "explicit") {
    std::vector<Level> levels;
    for (const auto& raw : get<std::vector<std::vector<std::vector<double>>>>(j, "levels")) {
      Level level;
      for (const auto& iv : raw) {
        if (iv.size() != 2) parseError("each interval must be [lo, hi]");
        level.push_back({iv[0], iv[1]});
      }
      levels.push_back(std::move(level));
    }
    return IntervalSystem::explicitLevels(std::move(levels));
  }
  parseError("unknown generator type \"" + type + "\"");
}

}  // namespace hyperd1::json_io
