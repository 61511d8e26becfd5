#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "elastica/analysis.hpp"
#include "elastica/sobolev_metric.hpp"

namespace elastica::io {

using Json = nlohmann::ordered_json;

/// Parses a JSON file. Syntax errors become ParseError with file:line:column.
Json read_json(const std::filesystem::path& path);

ManifoldSpec parse_manifold(const Json& j, const std::string& where);
MetricSpec parse_metric(const Json& j, const std::string& where);
DiscreteCurve parse_curve(const Json& j, const std::string& where);
/// {"vectors": [[...], ...]} attached to c.
VectorField parse_field(const Json& j, const DiscreteCurve& c, const std::string& where);
/// {"metric": ..., "times": [...]?, "curves": [curve, ...]}. The metric is
/// returned through `metric` when present.
CurvePath parse_path(const Json& j, const std::string& where, std::optional<MetricSpec>* metric = nullptr);
ScanConfig parse_scan_config(const Json& j, const std::string& where);

Json to_json(const ManifoldSpec& m);
Json to_json(const MetricSpec& m);
Json to_json(const DiscreteCurve& c);
Json to_json(const VectorField& f);
Json to_json(const CurvePath& p, const MetricSpec* metric = nullptr);
Json to_json(const ScanConfig& cfg);

}  // namespace elastica::io
