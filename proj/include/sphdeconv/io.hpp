#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "sphdeconv/certify.hpp"
#include "sphdeconv/filters.hpp"
#include "sphdeconv/forward.hpp"
#include "sphdeconv/harmonics.hpp"
#include "sphdeconv/reconstruct.hpp"
#include "sphdeconv/sphere_geometry.hpp"

namespace sphdeconv::io {

using nlohmann::json;

/// %.17g
std::string fmt(double v);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
json read_json(const std::string& path);

json partition_to_json(const EqualAreaPartition& p);

json coefficients_to_json(const CoefficientVector& c);
CoefficientVector coefficients_from_json(const json& j);

json filter_to_json(const MultiplierFilter& f);
MultiplierFilter filter_from_json(const json& j);

json lsq_summary(const LsqReport& r);
json solution_to_json(const LsqReport& r);
CoefficientVector solution_from_json(const json& j);

json certificate_to_json(const Certificate& c);

/// theta,phi,weight
std::string nodes_to_csv(const MzFamily& fam);
MzFamily nodes_from_csv(const std::string& text);

/// theta,phi,weight,y
std::string measurements_to_csv(const MeasurementSet& ms);
json measurement_sidecar(const MeasurementSet& ms);
/// Reads the CSV; beta, seed and truth_ref come from the sidecar when given.
MeasurementSet measurements_from_csv(const std::string& text, const json* sidecar = nullptr);

}  // namespace sphdeconv::io
