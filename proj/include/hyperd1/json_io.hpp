#pragma once

#include <json.hpp>

#include "hyperd1/fractal_line.hpp"
#include "hyperd1/metric_core.hpp"

namespace hyperd1::json_io {

using nlohmann::json;

/// {"type":"line","points":[...]}, {"type":"euclidean","dim":d,"points":[[...],...]}
/// or {"type":"matrix","dist":[[...],...]}. Other keys are ignored.
SpacePtr spaceFromJson(const json& j);
json spaceToJson(const MetricSpace& space);

/// Index array -> PointSet. `name` appears in error messages.
PointSet pointSetFromJson(const SpacePtr& space, const json& j, const char* name);

/// {"vertices":[...],"edges":[[i,j],...]}
WeightedGraph graphFromJson(const SpacePtr& space, const json& j);
json graphToJson(const WeightedGraph& g);

/// Graph plus componentCount, witnesses and totalLength.
json certificateToJson(const GraphCertificate& cert);

/// {"type":"ifs","maps":[{"ratio":r,"offset":o},...],"seed":[lo,hi]} or
/// {"type":"explicit","levels":[[[lo,hi],...],...]}.
IntervalSystem systemFromJson(const json& j);

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad value for \"") + key + "\": " + e.what());
  }
}

}  // namespace hyperd1::json_io
